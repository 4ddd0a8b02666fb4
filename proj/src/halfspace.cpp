#include "cuspgeo/halfspace.hpp"

#include <cmath>

namespace cuspgeo {

double hyperbolic_distance(const InteriorPoint& p, const InteriorPoint& q) {
    if (p.ambient_dim() != q.ambient_dim())
        throw InvalidPointError("dimension mismatch in hyperbolic_distance");
    const double s = (p.raw() - q.raw()).norm() / (2.0 * std::sqrt(p.height() * q.height()));
    return 2.0 * std::asinh(s);
}

Vec sphere_embedding(const BoundaryPoint& x, Eigen::Index boundary_dim) {
    Vec s(boundary_dim + 1);
    if (x.is_infinity()) {
        s.setZero();
        s[boundary_dim] = 1.0;
        return s;
    }
    if (x.coords().size() != boundary_dim)
        throw InvalidPointError("dimension mismatch in sphere_embedding");
    const double n2 = x.coords().squaredNorm();
    s.head(boundary_dim) = 2.0 * x.coords();
    s[boundary_dim] = n2 - 1.0;
    s /= n2 + 1.0;
    return s;
}

BoundaryPoint boundary_from_sphere(const Vec& s, double pole_cutoff) {
    const Eigen::Index d = s.size() - 1;
    const double denom = 1.0 - s[d];
    if (denom <= pole_cutoff) return BoundaryPoint::infinity();
    return BoundaryPoint(Vec(s.head(d) / denom));
}

double chordal_distance(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a.is_infinity() && b.is_infinity()) return 0.0;
    if (a.is_infinity()) return 2.0 / std::sqrt(1.0 + b.coords().squaredNorm());
    if (b.is_infinity()) return 2.0 / std::sqrt(1.0 + a.coords().squaredNorm());
    if (a.coords().size() != b.coords().size())
        throw InvalidPointError("dimension mismatch in chordal_distance");
    return 2.0 * (a.coords() - b.coords()).norm() /
           std::sqrt((1.0 + a.coords().squaredNorm()) * (1.0 + b.coords().squaredNorm()));
}

Geodesic::Geodesic(BoundaryPoint a, BoundaryPoint b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.is_infinity() && b_.is_infinity())
        throw DegenerateGeodesicError("both endpoints at infinity");
    if (!a_.is_infinity() && !b_.is_infinity()) {
        if (a_.coords().size() != b_.coords().size())
            throw DegenerateGeodesicError("endpoint dimension mismatch");
        if ((a_.coords() - b_.coords()).norm() == 0.0)
            throw DegenerateGeodesicError("coincident geodesic endpoints");
    }
}

const Vec& Geodesic::foot() const {
    if (!is_vertical()) throw DegenerateGeodesicError("foot() on a semicircle");
    return a_.is_infinity() ? b_.coords() : a_.coords();
}

Vec Geodesic::center() const {
    if (is_vertical()) throw DegenerateGeodesicError("center() on a vertical line");
    return 0.5 * (a_.coords() + b_.coords());
}

double Geodesic::radius() const {
    if (is_vertical()) throw DegenerateGeodesicError("radius() on a vertical line");
    return 0.5 * (a_.coords() - b_.coords()).norm();
}

Vec Geodesic::direction() const {
    if (is_vertical()) throw DegenerateGeodesicError("direction() on a vertical line");
    Vec d = b_.coords() - a_.coords();
    return d / d.norm();
}

Geodesic geodesic_between(const BoundaryPoint& p, const BoundaryPoint& q) {
    return Geodesic(p, q);
}

std::vector<InteriorPoint> crossings_at_height(const Geodesic& g, double h) {
    if (!(h > 0.0)) throw InvalidPointError("crossing height must be positive");
    std::vector<InteriorPoint> out;
    if (g.is_vertical()) {
        out.emplace_back(g.foot(), h);
        return out;
    }
    const double r = g.radius();
    const double s = r * r - h * h;
    if (s < 0.0) return out;
    const Vec O = g.center();
    if (s == 0.0) {
        out.emplace_back(O, r);
        return out;
    }
    const Vec step = std::sqrt(s) * g.direction();
    out.emplace_back(Vec(O - step), h);
    out.emplace_back(Vec(O + step), h);
    return out;
}

Horoball Horoball::half_space(double height) {
    if (!(height > 0.0)) throw InvalidPointError("half-space horoball needs height > 0");
    Horoball b;
    b.half_space_ = true;
    b.h_ = height;
    return b;
}

Horoball Horoball::ball(Vec base, double diameter) {
    if (!(diameter > 0.0)) throw InvalidPointError("ball horoball needs diameter > 0");
    Horoball b;
    b.half_space_ = false;
    b.h_ = diameter;
    b.base_ = std::move(base);
    return b;
}

double Horoball::height() const {
    if (!half_space_) throw InvalidPointError("height() on a ball horoball");
    return h_;
}

const Vec& Horoball::base() const {
    if (half_space_) throw InvalidPointError("base() on a half-space horoball");
    return base_;
}

double Horoball::diameter() const {
    if (half_space_) throw InvalidPointError("diameter() on a half-space horoball");
    return h_;
}

InteriorPoint Horoball::apex(Eigen::Index boundary_dim) const {
    if (half_space_) {
        Vec o = Vec::Zero(boundary_dim);
        return InteriorPoint(o, h_);
    }
    return InteriorPoint(base_, h_);
}

HorosphereArc::HorosphereArc(Geodesic parent, InteriorPoint a, InteriorPoint b)
    : parent_(std::move(parent)), a_(std::move(a)), b_(std::move(b)) {
    if (parent_.is_vertical())
        throw NoArcError("horosphere arcs live on semicircles");
    const double r = parent_.radius();
    const Vec O = parent_.center();
    const Vec u = parent_.direction();
    for (const InteriorPoint* p : {&a_, &b_}) {
        const Vec rel = p->horizontal() - O;
        const double on_circle = std::abs(std::hypot(rel.norm(), p->height()) - r);
        const double off_plane = (rel - rel.dot(u) * u).norm();
        if (on_circle > 1e-9 * std::max(1.0, r) || off_plane > 1e-9 * std::max(1.0, r))
            throw NoArcError("arc endpoint does not lie on the parent geodesic");
    }
}

double HorosphereArc::angle_of(const InteriorPoint& p) const {
    const Vec rel = p.horizontal() - parent_.center();
    return std::atan2(p.height(), rel.dot(parent_.direction()));
}

double HorosphereArc::diameter() const {
    const double r = parent_.radius();
    const double span = std::abs(angle_of(a_) - angle_of(b_));
    if (span >= M_PI) return 2.0 * r;
    return 2.0 * r * std::sin(0.5 * span);
}

double HorosphereArc::projected_length() const {
    return (a_.horizontal() - b_.horizontal()).norm();
}

HorosphereArc arc_between_crossings(const Geodesic& g, double h) {
    if (g.is_vertical())
        throw NoArcError("vertical geodesics have no horospherical sub-arc");
    if (!(g.radius() > h))
        throw NoArcError("geodesic does not reach above the horosphere");
    auto pts = crossings_at_height(g, h);
    return HorosphereArc(g, pts[0], pts[1]);
}

}  // namespace cuspgeo
