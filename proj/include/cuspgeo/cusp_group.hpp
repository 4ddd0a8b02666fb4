#pragma once

#include "cuspgeo/halfspace.hpp"

#include <functional>
#include <utility>
#include <variant>
#include <vector>

// The stabilizer of the half-space horoball, restricted to its boundary
// horosphere: either a rank-(n-1) translation lattice, or the planar glide
// group <s, t> with s(X) = diag(1,-1) X + (alpha, 0) and t(X) = X + (0, beta)
// in coordinates adapted to the glide axis.

namespace cuspgeo {

struct Lattice {
    Mat basis;  // columns are the generator translation vectors

    explicit Lattice(Mat b) : basis(std::move(b)) {
        if (basis.rows() != basis.cols() || basis.rows() < 1)
            throw ConfigurationError("lattice basis must be square");
        if (std::abs(basis.determinant()) < tol::algebra)
            throw ConfigurationError("lattice basis is singular");
    }
};

struct GlideGroup {
    double alpha;  // shortest glide translation distance
    double beta;   // shortest perpendicular translation distance

    GlideGroup(double a, double b) : alpha(a), beta(b) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw ConfigurationError("glide group needs alpha > 0 and beta > 0");
    }
};

class CuspGroup {
public:
    explicit CuspGroup(Lattice l) : data_(std::move(l)) {}
    explicit CuspGroup(GlideGroup g) : data_(std::move(g)) {}

    static CuspGroup lattice(Mat basis) { return CuspGroup(Lattice(std::move(basis))); }
    static CuspGroup glide(double alpha, double beta) {
        return CuspGroup(GlideGroup(alpha, beta));
    }

    bool is_lattice() const { return std::holds_alternative<Lattice>(data_); }
    const Lattice& as_lattice() const { return std::get<Lattice>(data_); }
    const GlideGroup& as_glide() const { return std::get<GlideGroup>(data_); }

    // Dimension of the boundary plane the group acts on.
    Eigen::Index boundary_dim() const {
        return is_lattice() ? as_lattice().basis.rows() : 2;
    }

private:
    std::variant<Lattice, GlideGroup> data_;
};

// Lattice: integer coefficients of the basis vectors.
// Glide group: the pair (n, m) meaning w = s^n t^m.
struct GroupElement {
    Eigen::VectorXi coeffs;

    GroupElement() = default;
    explicit GroupElement(Eigen::VectorXi c) : coeffs(std::move(c)) {}
    static GroupElement glide_word(int n, int m) {
        Eigen::VectorXi c(2);
        c << n, m;
        return GroupElement(c);
    }

    bool is_identity() const { return coeffs.size() == 0 || coeffs.isZero(); }
    bool operator==(const GroupElement& o) const {
        return coeffs.size() == o.coeffs.size() && coeffs == o.coeffs;
    }
};

// Affine map x -> R x + v with R orthogonal; extended to the half-space as a
// height-preserving isometry.
struct AffineMap {
    Mat rotation;
    Vec translation;

    Vec operator()(const Vec& x) const { return rotation * x + translation; }
    bool is_translation(double tolerance = tol::algebra) const {
        return (rotation - Mat::Identity(rotation.rows(), rotation.cols()))
                   .cwiseAbs()
                   .maxCoeff() < tolerance;
    }
};

AffineMap element_action(const CuspGroup& g, const GroupElement& e);

// Group product using t s t = s in the glide case, addition in the lattice case.
GroupElement multiply(const CuspGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement inverse_element(const CuspGroup& g, const GroupElement& a);

// Streams every nonidentity element whose translation-part norm is at most
// radius, in lexicographic coefficient order.  Completeness comes from
// iterating the integer box that bounds the radius in the basis metric.
void for_each_element_within(const CuspGroup& g, double radius,
                             const std::function<void(const GroupElement&, const Vec&)>& fn);

std::vector<GroupElement> enumerate_within(const CuspGroup& g, double radius);

// Representative of x in the half-open fundamental domain, together with the
// element realizing it.  Lattice: coefficients in [0,1) of the basis.  Glide:
// D = {(x, y) : 0 <= x < alpha, -beta/2 <= y < beta/2}.
std::pair<Vec, GroupElement> reduce_to_fundamental_domain(const CuspGroup& g, const Vec& x);

bool in_fundamental_domain(const CuspGroup& g, const Vec& x);

// ||t|| = d_E(A0, t(B0)) in boundary coordinates with A0 at the chart origin.
double norm_of(const CuspGroup& g, const GroupElement& e, const Vec& B0);

}  // namespace cuspgeo
