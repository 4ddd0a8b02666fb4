#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Upper half-space model of H^n: {x in R^n : x_n > 0} with metric |dx|^2 / x_n^2.
// The ideal boundary is R^{n-1} together with a single point at infinity.

namespace cuspgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidPointError : public Error {
public:
    using Error::Error;
};

class DegenerateGeodesicError : public Error {
public:
    using Error::Error;
};

class NoArcError : public Error {
public:
    using Error::Error;
};

class ConfigurationError : public Error {
public:
    using Error::Error;
};

class NonhyperbolicError : public Error {
public:
    using Error::Error;
};

class AxisTooShallowError : public Error {
public:
    AxisTooShallowError(const std::string& msg, double radius)
        : Error(msg), radius(radius) {}
    double radius;
};

class ClassificationError : public Error {
public:
    using Error::Error;
};

// Default absolute tolerances at O(1) scale after normalization.
namespace tol {
inline constexpr double algebra  = 1e-12;  // exact formulas
inline constexpr double iterate  = 1e-13;  // orbit convergence (chordal)
inline constexpr double residual = 1e-9;   // iterative results / witness acceptance
}  // namespace tol

// Point of the ideal boundary R^{n-1} or the point at infinity.
// Infinity compares equal only to infinity; it is a first-class value,
// never a large coordinate surrogate.
class BoundaryPoint {
public:
    BoundaryPoint() = default;
    explicit BoundaryPoint(Vec coords) : coords_(std::move(coords)), infinite_(false) {}

    static BoundaryPoint infinity() {
        BoundaryPoint p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinity() const { return infinite_; }

    const Vec& coords() const {
        if (infinite_) throw InvalidPointError("coords() on the point at infinity");
        return coords_;
    }

    Eigen::Index dim() const { return infinite_ ? -1 : coords_.size(); }

private:
    Vec coords_;
    bool infinite_ = true;
};

// Point of H^n itself; the last coordinate is the height and must be positive.
class InteriorPoint {
public:
    explicit InteriorPoint(Vec x) : x_(std::move(x)) {
        if (x_.size() < 2 || !(x_[x_.size() - 1] > 0.0))
            throw InvalidPointError("interior point needs strictly positive height");
    }

    InteriorPoint(const Vec& horizontal, double height) {
        x_.resize(horizontal.size() + 1);
        x_.head(horizontal.size()) = horizontal;
        x_[horizontal.size()] = height;
        if (!(height > 0.0))
            throw InvalidPointError("interior point needs strictly positive height");
    }

    const Vec& raw() const { return x_; }
    double height() const { return x_[x_.size() - 1]; }
    Vec horizontal() const { return x_.head(x_.size() - 1); }
    Eigen::Index ambient_dim() const { return x_.size(); }

private:
    Vec x_;
};

// cosh d = 1 + |p-q|^2 / (2 p_n q_n), evaluated as 2 asinh(|p-q| / (2 sqrt(p_n q_n)))
// which is stable near d = 0.
double hyperbolic_distance(const InteriorPoint& p, const InteriorPoint& q);

// Stereographic embedding of the boundary into the unit sphere of R^n.
// sigma(x) = (2x, |x|^2 - 1) / (|x|^2 + 1), sigma(inf) = north pole.
Vec sphere_embedding(const BoundaryPoint& x, Eigen::Index boundary_dim);
BoundaryPoint boundary_from_sphere(const Vec& s, double pole_cutoff = 1e-14);

// Metric on the boundary plus infinity in which stopping rules treat
// infinity like any other point.
double chordal_distance(const BoundaryPoint& a, const BoundaryPoint& b);

// Geodesic of H^n: either the semicircle over the segment joining two finite
// ideal endpoints, or the vertical line over a single finite endpoint when
// the other endpoint is infinity.  Endpoints are the source of truth; center,
// radius and direction are recomputed on demand.
class Geodesic {
public:
    Geodesic(BoundaryPoint a, BoundaryPoint b);

    const BoundaryPoint& first() const { return a_; }
    const BoundaryPoint& second() const { return b_; }

    bool is_vertical() const { return a_.is_infinity() || b_.is_infinity(); }

    // Finite endpoint under a vertical line.
    const Vec& foot() const;

    // Semicircle data; only valid when both endpoints are finite.
    Vec center() const;
    double radius() const;
    Vec direction() const;  // unit vector from first() toward second()

private:
    BoundaryPoint a_, b_;
};

Geodesic geodesic_between(const BoundaryPoint& p, const BoundaryPoint& q);

// Intersections of a geodesic with the horizontal plane {x_n = h}.
// Semicircle with r > h: the two points O +- sqrt(r^2 - h^2) u at height h;
// r = h: the apex; r < h: none.  Vertical line: the single point at height h.
std::vector<InteriorPoint> crossings_at_height(const Geodesic& g, double h);

// Horoball: either the half-space {x_n >= h} or the Euclidean ball of given
// diameter tangent to the boundary plane at its base point.
class Horoball {
public:
    static Horoball half_space(double height);
    static Horoball ball(Vec base, double diameter);

    bool is_half_space() const { return half_space_; }
    double height() const;          // half-space form
    const Vec& base() const;        // ball form
    double diameter() const;        // ball form

    // Top of a ball horoball / a point of the bounding horosphere.
    InteriorPoint apex(Eigen::Index boundary_dim) const;

private:
    Horoball() = default;
    bool half_space_ = false;
    double h_ = 0.0;       // half-space height or ball diameter
    Vec base_;
};

// Closed sub-arc of a semicircular geodesic, stored by its two endpoints.
class HorosphereArc {
public:
    HorosphereArc(Geodesic parent, InteriorPoint a, InteriorPoint b);

    const Geodesic& parent() const { return parent_; }
    const InteriorPoint& first() const { return a_; }
    const InteriorPoint& second() const { return b_; }

    // Angle of a point of the arc in the parametrization
    // P(theta) = (O + r cos(theta) u, r sin(theta)), theta in (0, pi).
    double angle_of(const InteriorPoint& p) const;

    // Euclidean diameter of the arc: the endpoint chord while the arc spans
    // at most a half turn, 2r beyond that.
    double diameter() const;

    // Length of the chord between the projections of the endpoints.
    double projected_length() const;

private:
    Geodesic parent_;
    InteriorPoint a_, b_;
};

// The part of a semicircle at height >= h; requires r > h.
HorosphereArc arc_between_crossings(const Geodesic& g, double h);

}  // namespace cuspgeo
