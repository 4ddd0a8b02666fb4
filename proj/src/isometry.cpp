#include "cuspgeo/isometry.hpp"

#include <cmath>

namespace cuspgeo {

namespace {

Vec lifted(const Vec& boundary, double height) {
    Vec v(boundary.size() + 1);
    v.head(boundary.size()) = boundary;
    v[boundary.size()] = height;
    return v;
}

}  // namespace

int parity(const Primitive& p) {
    return std::visit(
        [](const auto& prim) -> int {
            using T = std::decay_t<decltype(prim)>;
            if constexpr (std::is_same_v<T, Similarity>)
                return prim.rotation.determinant() > 0.0 ? 1 : -1;
            else
                return -1;
        },
        p);
}

Primitive inverse_of(const Primitive& p) {
    return std::visit(
        [](const auto& prim) -> Primitive {
            using T = std::decay_t<decltype(prim)>;
            if constexpr (std::is_same_v<T, Similarity>) {
                Mat qt = prim.rotation.transpose();
                return Similarity(1.0 / prim.scale, qt, Vec(-(qt * prim.translation) / prim.scale));
            } else {
                return prim;  // inversions and reflections are involutions
            }
        },
        p);
}

BoundaryPoint apply(const Primitive& p, const BoundaryPoint& x) {
    if (const auto* inv = std::get_if<SphereInversion>(&p)) {
        if (x.is_infinity()) return BoundaryPoint(inv->center);
        Vec rel = x.coords() - inv->center;
        const double n2 = rel.squaredNorm();
        if (n2 == 0.0) return BoundaryPoint::infinity();
        return BoundaryPoint(Vec(inv->center + (inv->radius * inv->radius / n2) * rel));
    }
    if (const auto* refl = std::get_if<HyperplaneReflection>(&p)) {
        if (x.is_infinity()) return x;
        const double a = x.coords().dot(refl->normal) - refl->offset;
        return BoundaryPoint(Vec(x.coords() - 2.0 * a * refl->normal));
    }
    const auto& sim = std::get<Similarity>(p);
    if (x.is_infinity()) return x;
    return BoundaryPoint(Vec(sim.scale * (sim.rotation * x.coords()) + sim.translation));
}

InteriorPoint apply(const Primitive& p, const InteriorPoint& x) {
    if (const auto* inv = std::get_if<SphereInversion>(&p)) {
        const Vec c = lifted(inv->center, 0.0);
        Vec rel = x.raw() - c;
        return InteriorPoint(Vec(c + (inv->radius * inv->radius / rel.squaredNorm()) * rel));
    }
    if (const auto* refl = std::get_if<HyperplaneReflection>(&p)) {
        const double a = x.horizontal().dot(refl->normal) - refl->offset;
        return InteriorPoint(Vec(x.horizontal() - 2.0 * a * refl->normal), x.height());
    }
    const auto& sim = std::get<Similarity>(p);
    return InteriorPoint(Vec(sim.scale * (sim.rotation * x.horizontal()) + sim.translation),
                         sim.scale * x.height());
}

int IsometryWord::parity() const {
    int s = 1;
    for (const auto& f : factors_) s *= cuspgeo::parity(f);
    return s;
}

IsometryWord compose(const IsometryWord& w1, const IsometryWord& w2) {
    std::vector<Primitive> f = w1.factors();
    f.insert(f.end(), w2.factors().begin(), w2.factors().end());
    return IsometryWord(std::move(f));
}

IsometryWord invert(const IsometryWord& w) {
    std::vector<Primitive> f;
    f.reserve(w.factors().size());
    for (auto it = w.factors().rbegin(); it != w.factors().rend(); ++it)
        f.push_back(inverse_of(*it));
    return IsometryWord(std::move(f));
}

BoundaryPoint apply_boundary(const IsometryWord& w, const BoundaryPoint& x) {
    BoundaryPoint y = x;
    for (auto it = w.factors().rbegin(); it != w.factors().rend(); ++it)
        y = apply(*it, y);
    return y;
}

InteriorPoint apply_interior(const IsometryWord& w, const InteriorPoint& p) {
    InteriorPoint y = p;
    for (auto it = w.factors().rbegin(); it != w.factors().rend(); ++it)
        y = apply(*it, y);
    return y;
}

std::string to_string(IsometryClass c) {
    switch (c) {
        case IsometryClass::Hyperbolic: return "hyperbolic";
        case IsometryClass::Parabolic: return "parabolic";
        case IsometryClass::EllipticOrIdentity: return "elliptic-or-identity";
    }
    return "unknown";
}

namespace {

constexpr double kPoleSnap = 1e-6;       // chordal radius around infinity
constexpr double kBoundedNorm = 1e8;     // Euclidean bound for elliptic orbits
constexpr double kRichardsonTol = 1e-10;
constexpr double kFixedResidualTol = 1e-8;

struct OrbitOutcome {
    bool converged = false;
    BoundaryPoint limit;
    bool bounded = true;
};

bool fixes_infinity(const IsometryWord& w) {
    return chordal_distance(apply_boundary(w, BoundaryPoint::infinity()),
                            BoundaryPoint::infinity()) < tol::algebra;
}

// Resolve a candidate limit that drifted numerically toward the pole.
BoundaryPoint snap_limit(const IsometryWord& w, const BoundaryPoint& x) {
    if (x.is_infinity()) return x;
    if (chordal_distance(x, BoundaryPoint::infinity()) < kPoleSnap && fixes_infinity(w))
        return BoundaryPoint::infinity();
    return x;
}

// Richardson extrapolation of sphere samples at k = 2^j, assuming an error
// expansion in integer powers of 1/k (the rate at a parabolic fixed point).
std::optional<Vec> richardson_limit(const std::vector<Vec>& dyadic) {
    constexpr int kSkip = 3;  // drop k = 1, 2, 4 transients
    const int m = static_cast<int>(dyadic.size()) - kSkip;
    if (m < 4) return std::nullopt;
    std::vector<std::vector<Vec>> t(m);
    for (int i = 0; i < m; ++i) {
        t[i].resize(i + 1);
        t[i][0] = dyadic[kSkip + i];
        for (int level = 1; level <= i; ++level) {
            const double f = std::pow(2.0, level) - 1.0;
            t[i][level] = t[i][level - 1] + (t[i][level - 1] - t[i - 1][level - 1]) / f;
        }
    }
    if ((t[m - 1][m - 1] - t[m - 2][m - 2]).norm() > kRichardsonTol) return std::nullopt;
    return t[m - 1][m - 1];
}

OrbitOutcome orbit_limit(const IsometryWord& w, BoundaryPoint x, Eigen::Index dim,
                         const ClassifyOptions& opts) {
    OrbitOutcome out;
    Vec s_prev = sphere_embedding(x, dim);
    std::vector<Vec> dyadic;
    long next_pow = 1;
    double max_norm = x.is_infinity() ? kBoundedNorm * 2 : x.coords().norm();
    for (int k = 1; k <= opts.max_iterations; ++k) {
        x = apply_boundary(w, x);
        Vec s = sphere_embedding(x, dim);
        if (!x.is_infinity())
            max_norm = std::max(max_norm, x.coords().norm());
        else
            max_norm = kBoundedNorm * 2;
        if ((s - s_prev).norm() < opts.convergence_tol) {
            for (int extra = 0; extra < 8; ++extra) x = apply_boundary(w, x);
            out.converged = true;
            out.limit = snap_limit(w, x);
            return out;
        }
        s_prev = s;
        if (k == next_pow) {
            dyadic.push_back(s);
            next_pow *= 2;
        }
    }
    out.bounded = max_norm < kBoundedNorm;
    if (auto ext = richardson_limit(dyadic)) {
        Vec s = *ext;
        s /= s.norm();
        Vec pole = Vec::Zero(dim + 1);
        pole[dim] = 1.0;
        BoundaryPoint limit = (s - pole).norm() < kPoleSnap && fixes_infinity(w)
                                  ? BoundaryPoint::infinity()
                                  : boundary_from_sphere(s);
        if (chordal_distance(apply_boundary(w, limit), limit) < kFixedResidualTol) {
            out.converged = true;
            out.limit = limit;
            return out;
        }
    }
    return out;
}

std::vector<BoundaryPoint> make_seeds(Eigen::Index dim, int round) {
    std::vector<BoundaryPoint> seeds;
    for (int m = 0; m < 3; ++m) {
        Vec v(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            v[i] = 0.31 + 0.67 * std::sin(1.3 * double(i + 1) + 2.1 * double(m + 1) +
                                          5.23 * double(round + 1));
        seeds.emplace_back(v);
    }
    return seeds;
}

bool all_agree(const std::vector<BoundaryPoint>& pts, double tolerance) {
    for (size_t i = 1; i < pts.size(); ++i)
        if (chordal_distance(pts[0], pts[i]) > tolerance) return false;
    return true;
}

}  // namespace

Classification classify(const IsometryWord& w, Eigen::Index boundary_dim,
                        const ClassifyOptions& opts) {
    const IsometryWord w_inv = invert(w);

    {
        // Words fixing every generic seed have an interior fixed axis.
        auto seeds = make_seeds(boundary_dim, 7);
        bool all_fixed = true;
        for (const auto& s : seeds)
            if (chordal_distance(apply_boundary(w, s), s) >= opts.convergence_tol)
                all_fixed = false;
        if (all_fixed) return {IsometryClass::EllipticOrIdentity, {}, {}};
    }

    for (int round = 0; round < 3; ++round) {
        auto seeds = make_seeds(boundary_dim, round);
        std::vector<BoundaryPoint> fwd, bwd;
        int fwd_converged = 0, bwd_converged = 0;
        bool all_bounded = true;
        for (const auto& s : seeds) {
            auto f = orbit_limit(w, s, boundary_dim, opts);
            auto b = orbit_limit(w_inv, s, boundary_dim, opts);
            if (f.converged) {
                fwd.push_back(f.limit);
                ++fwd_converged;
            }
            if (b.converged) {
                bwd.push_back(b.limit);
                ++bwd_converged;
            }
            all_bounded = all_bounded && f.bounded && b.bounded;
        }
        if (fwd_converged == 3 && bwd_converged == 3 &&
            all_agree(fwd, opts.agreement_tol) && all_agree(bwd, opts.agreement_tol)) {
            if (chordal_distance(fwd[0], bwd[0]) <= opts.agreement_tol)
                return {IsometryClass::Parabolic, fwd[0], fwd[0]};
            return {IsometryClass::Hyperbolic, fwd[0], bwd[0]};
        }
        if (fwd_converged == 0 && bwd_converged == 0 && all_bounded)
            return {IsometryClass::EllipticOrIdentity, {}, {}};
    }
    throw ClassificationError("orbit iteration did not settle on a classification");
}

std::complex<double> moebius_eval(const std::array<std::complex<double>, 4>& m,
                                  std::complex<double> z, bool orientation_reversing) {
    if (orientation_reversing) z = std::conj(z);
    return (m[0] * z + m[1]) / (m[2] * z + m[3]);
}

BoundaryPoint complex_to_boundary(std::complex<double> z) {
    Vec v(2);
    v << z.real(), z.imag();
    return BoundaryPoint(v);
}

std::complex<double> boundary_to_complex(const BoundaryPoint& p) {
    if (p.is_infinity()) throw InvalidPointError("infinite point has no complex chart value");
    return {p.coords()[0], p.coords()[1]};
}

namespace {

Similarity similarity_from_complex(std::complex<double> mult, std::complex<double> shift) {
    const double lam = std::abs(mult);
    Mat q(2, 2);
    q << mult.real() / lam, -mult.imag() / lam, mult.imag() / lam, mult.real() / lam;
    Vec c(2);
    c << shift.real(), shift.imag();
    return Similarity(lam, q, c);
}

}  // namespace

IsometryWord from_matrix(const std::array<std::complex<double>, 4>& m,
                         bool orientation_reversing) {
    const auto [a, b, c, d] = m;
    const std::complex<double> det = a * d - b * c;
    if (std::abs(det) == 0.0) throw Error("singular matrix in from_matrix");

    std::vector<Primitive> factors;
    if (c == std::complex<double>(0.0, 0.0)) {
        factors.push_back(similarity_from_complex(a / d, b / d));
    } else {
        // (az+b)/(cz+d) = a/c - (det/c^2) / (z + d/c)
        factors.push_back(similarity_from_complex(-det / (c * c), a / c));
        factors.emplace_back(HyperplaneReflection((Vec(2) << 0, 1).finished(), 0.0));
        factors.emplace_back(SphereInversion(Vec::Zero(2), 1.0));
        const std::complex<double> s = d / c;
        factors.push_back(Similarity::translation_by((Vec(2) << s.real(), s.imag()).finished()));
    }
    if (orientation_reversing)
        factors.emplace_back(HyperplaneReflection((Vec(2) << 0, 1).finished(), 0.0));
    return IsometryWord(std::move(factors));
}

InteriorPoint horoball_tangency(const Horoball& b1, const Horoball& b2,
                                Eigen::Index boundary_dim) {
    if (b1.is_half_space() && b2.is_half_space())
        throw ConfigurationError("two half-space horoballs are never tangent");
    if (b1.is_half_space() || b2.is_half_space()) {
        const Horoball& half = b1.is_half_space() ? b1 : b2;
        const Horoball& ball = b1.is_half_space() ? b2 : b1;
        if (std::abs(ball.diameter() - half.height()) > 1e-9 * std::max(1.0, half.height()))
            throw ConfigurationError("ball and half-space horoballs are not tangent");
        return InteriorPoint(ball.base(), ball.diameter());
    }
    Vec c1 = lifted(b1.base(), 0.5 * b1.diameter());
    Vec c2 = lifted(b2.base(), 0.5 * b2.diameter());
    const double gap = (c1 - c2).norm();
    const double want = 0.5 * (b1.diameter() + b2.diameter());
    if (std::abs(gap - want) > 1e-9 * std::max(1.0, want))
        throw ConfigurationError("horoballs are not tangent");
    return InteriorPoint(Vec(c1 + (0.5 * b1.diameter() / gap) * (c2 - c1)));
}

namespace {

BoundaryPoint horoball_base_point(const Horoball& b) {
    if (b.is_half_space()) return BoundaryPoint::infinity();
    return BoundaryPoint(b.base());
}

// Diameter of the image horoball from its base and one image surface point:
// a sphere tangent to the boundary at b' satisfies |y_h - b'|^2 + y_n^2 = d' y_n.
double image_diameter(const Vec& base, const InteriorPoint& surface) {
    return ((surface.horizontal() - base).squaredNorm() + surface.height() * surface.height()) /
           surface.height();
}

}  // namespace

StandardPosition standard_position(const Horoball& ball1, const Horoball& ball2,
                                   const IsometryWord& g,
                                   const InteriorPoint& basepoint_image) {
    const Eigen::Index n = basepoint_image.ambient_dim();
    const Eigen::Index d = n - 1;

    const InteriorPoint tangency = horoball_tangency(ball1, ball2, d);

    // g must carry ball1 onto ball2: bases map to bases, the tangency point
    // lands on the claimed surface point of ball2.
    const BoundaryPoint base1 = horoball_base_point(ball1);
    const BoundaryPoint base2 = horoball_base_point(ball2);
    if (chordal_distance(apply_boundary(g, base1), base2) > 1e-9)
        throw ConfigurationError("isometry does not carry the first horoball base to the second");
    const InteriorPoint g_tangency = apply_interior(g, tangency);
    if ((g_tangency.raw() - basepoint_image.raw()).norm() > 1e-9)
        throw ConfigurationError("claimed basepoint image disagrees with the isometry");

    IsometryWord phi;
    if (!ball2.is_half_space())
        phi = IsometryWord({SphereInversion(ball2.base(), 1.0)});

    const InteriorPoint s2 = ball2.apex(d);  // a surface point of ball2
    const double plane_height = apply_interior(phi, s2).height();
    if (std::abs(plane_height - 1.0) > tol::algebra)
        phi = compose(IsometryWord({Similarity::dilation(1.0 / plane_height, d)}), phi);

    const BoundaryPoint base1_moved = apply_boundary(phi, base1);
    if (base1_moved.is_infinity())
        throw ConfigurationError("first horoball maps to a half-space; configuration not tangent");
    if (base1_moved.coords().norm() > tol::algebra)
        phi = compose(IsometryWord({Similarity::translation_by(Vec(-base1_moved.coords()))}), phi);

    // Post-checks: phi(ball1) is the unit-diameter ball at the origin and the
    // tangency goes to A0.
    const InteriorPoint s1 = ball1.is_half_space()
                                 ? InteriorPoint(Vec::Zero(d), ball1.height())
                                 : ball1.apex(d);
    const InteriorPoint s1_moved = apply_interior(phi, s1);
    if (std::abs(image_diameter(Vec::Zero(d), s1_moved) - 1.0) > 1e-9)
        throw ConfigurationError("normalized first horoball is not the unit ball");
    Vec a0 = Vec::Zero(n);
    a0[d] = 1.0;
    const InteriorPoint tan_moved = apply_interior(phi, tangency);
    if ((tan_moved.raw() - a0).norm() > 1e-9)
        throw ConfigurationError("normalized tangency point is not A0");

    const IsometryWord g_std = compose(compose(phi, g), invert(phi));
    const InteriorPoint b0_point = apply_interior(g_std, InteriorPoint(a0));
    if (std::abs(b0_point.height() - 1.0) > 1e-9)
        throw ConfigurationError("conjugated isometry does not send A0 to the horosphere");
    Vec B0 = b0_point.horizontal();
    if (B0.norm() < 1e-9)
        throw ConfigurationError("B0 coincides with the projection of A0");

    const IsometryWord h({HyperplaneReflection(Vec(B0 / B0.norm()), 0.5 * B0.norm()),
                          SphereInversion(Vec::Zero(d), 1.0)});
    const IsometryWord v_word = compose(invert(h), g_std);

    const BoundaryPoint origin(Vec::Zero(d));
    if (chordal_distance(apply_boundary(v_word, origin), origin) > 1e-9 ||
        !(chordal_distance(apply_boundary(v_word, BoundaryPoint::infinity()),
                           BoundaryPoint::infinity()) < 1e-9))
        throw ConfigurationError("residual part of the conjugated isometry is not orthogonal");

    Mat V(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        Vec e = Vec::Zero(d);
        e[j] = 1.0;
        V.col(j) = apply_boundary(v_word, BoundaryPoint(e)).coords();
    }
    const Mat ortho_res = V.transpose() * V - Mat::Identity(d, d);
    if (ortho_res.cwiseAbs().maxCoeff() > 1e-9)
        throw ConfigurationError("residual part of the conjugated isometry is not orthogonal");

    return {phi, B0, V, n};
}

}  // namespace cuspgeo
