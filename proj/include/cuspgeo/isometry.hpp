#pragma once

#include "cuspgeo/halfspace.hpp"

#include <complex>
#include <optional>
#include <variant>
#include <vector>

// Isometries of H^n as ordered compositions of three geometric primitives,
// each acting on the ideal boundary and extended to the interior by the
// Poincare extension.  Words are never simplified; composition concatenates.

namespace cuspgeo {

// Inversion about the sphere of the given radius centered at a boundary point.
// Swaps its center with infinity.
struct SphereInversion {
    Vec center;
    double radius;

    SphereInversion(Vec c, double r) : center(std::move(c)), radius(r) {
        if (!(radius > 0.0)) throw InvalidPointError("inversion radius must be positive");
    }
};

// Reflection about the vertical hyperplane {x : x . normal = offset}.
struct HyperplaneReflection {
    Vec normal;  // unit
    double offset;

    HyperplaneReflection(Vec n, double d) : normal(std::move(n)), offset(d) {
        const double len = normal.norm();
        if (std::abs(len - 1.0) > tol::algebra)
            throw InvalidPointError("reflection normal must be a unit vector");
        normal /= len;
    }
};

// x -> scale * Q x + translation with Q orthogonal, extended to the interior
// by scaling the height.
struct Similarity {
    double scale;
    Mat rotation;
    Vec translation;

    Similarity(double s, Mat q, Vec c)
        : scale(s), rotation(std::move(q)), translation(std::move(c)) {
        if (!(scale > 0.0)) throw InvalidPointError("similarity scale must be positive");
        if (rotation.rows() != rotation.cols() || rotation.rows() != translation.size())
            throw InvalidPointError("similarity shape mismatch");
        const Mat res = rotation.transpose() * rotation - Mat::Identity(rotation.rows(), rotation.cols());
        if (res.cwiseAbs().maxCoeff() > tol::algebra * 10)
            throw InvalidPointError("similarity rotation part must be orthogonal");
    }

    static Similarity translation_by(const Vec& c) {
        return Similarity(1.0, Mat::Identity(c.size(), c.size()), c);
    }

    static Similarity dilation(double s, Eigen::Index dim) {
        return Similarity(s, Mat::Identity(dim, dim), Vec::Zero(dim));
    }
};

using Primitive = std::variant<SphereInversion, HyperplaneReflection, Similarity>;

// -1 for inversions and reflections, sign(det Q) for similarities.
int parity(const Primitive& p);
Primitive inverse_of(const Primitive& p);

BoundaryPoint apply(const Primitive& p, const BoundaryPoint& x);
InteriorPoint apply(const Primitive& p, const InteriorPoint& x);

// Ordered composition of primitives, applied right to left:
// word {p0, p1, ..., pk} acts as p0(p1(...pk(x))).
class IsometryWord {
public:
    IsometryWord() = default;
    explicit IsometryWord(std::vector<Primitive> factors) : factors_(std::move(factors)) {}

    static IsometryWord identity() { return IsometryWord(); }

    const std::vector<Primitive>& factors() const { return factors_; }
    bool is_identity_word() const { return factors_.empty(); }
    int parity() const;

private:
    std::vector<Primitive> factors_;
};

IsometryWord compose(const IsometryWord& w1, const IsometryWord& w2);
IsometryWord invert(const IsometryWord& w);

BoundaryPoint apply_boundary(const IsometryWord& w, const BoundaryPoint& x);
InteriorPoint apply_interior(const IsometryWord& w, const InteriorPoint& p);

enum class IsometryClass { Hyperbolic, Parabolic, EllipticOrIdentity };

std::string to_string(IsometryClass c);

struct Classification {
    IsometryClass kind;
    // Hyperbolic: both present and distinct.  Parabolic: the single fixed
    // point, stored in both slots.  Elliptic-or-identity: neither.
    std::optional<BoundaryPoint> attracting;
    std::optional<BoundaryPoint> repelling;
};

struct ClassifyOptions {
    int max_iterations = 10000;
    double convergence_tol = tol::iterate;   // successive chordal difference
    double agreement_tol = 1e-8;             // seed limits must agree to this
};

// Classify by orbit behavior on the boundary: forward orbits of generic
// seeds converge to the attracting fixed point, orbits of the inverse to
// the repelling one; coinciding limits mean parabolic; bounded orbits with
// no boundary convergence mean elliptic-or-identity.  Orbits with only
// polynomial-rate convergence (parabolic fixed points) are resolved by
// Richardson extrapolation of the dyadic subsequence in chordal
// coordinates, validated against the fixed-point residual.
Classification classify(const IsometryWord& w, Eigen::Index boundary_dim,
                        const ClassifyOptions& opts = {});

// n = 3 ingestion: boundary R^2 identified with C, word realizing
// z -> (az + b)/(cz + d), composed with conjugation first when
// orientation_reversing is set.
IsometryWord from_matrix(const std::array<std::complex<double>, 4>& m,
                         bool orientation_reversing = false);

// Evaluation oracle for from_matrix, kept separate from the word machinery.
std::complex<double> moebius_eval(const std::array<std::complex<double>, 4>& m,
                                  std::complex<double> z,
                                  bool orientation_reversing = false);

BoundaryPoint complex_to_boundary(std::complex<double> z);
std::complex<double> boundary_to_complex(const BoundaryPoint& p);

// Conjugator bringing a tangent horoball pair into standard position:
// phi(ball2) = {x_n >= 1}, phi(ball1) = the unit-diameter ball at the origin,
// phi(tangency) = (0, ..., 0, 1).  Returns phi together with the standard
// data of the conjugated map phi g phi^{-1} = h2 h1 V.
struct StandardPosition {
    IsometryWord conjugator;
    Vec B0;        // boundary chart with A0 at the origin
    Mat V;         // orthogonal boundary action of h^{-1} g0
    Eigen::Index dimension;  // n
};

StandardPosition standard_position(const Horoball& ball1, const Horoball& ball2,
                                   const IsometryWord& g,
                                   const InteriorPoint& basepoint_image);

// Tangency point of two horoballs; throws ConfigurationError when they are
// not tangent within tolerance.
InteriorPoint horoball_tangency(const Horoball& ball1, const Horoball& ball2,
                                Eigen::Index boundary_dim);

}  // namespace cuspgeo
