#include "cuspgeo/cusp_group.hpp"

#include <cmath>

namespace cuspgeo {

namespace {

void check_coeffs(const CuspGroup& g, const GroupElement& e) {
    const Eigen::Index want = g.is_lattice() ? g.as_lattice().basis.cols() : 2;
    if (e.coeffs.size() != want)
        throw ConfigurationError("group element has the wrong number of coefficients");
}

Mat glide_reflection_part() {
    Mat r(2, 2);
    r << 1, 0, 0, -1;
    return r;
}

}  // namespace

AffineMap element_action(const CuspGroup& g, const GroupElement& e) {
    check_coeffs(g, e);
    if (g.is_lattice()) {
        const Mat& b = g.as_lattice().basis;
        return {Mat::Identity(b.rows(), b.cols()), Vec(b * e.coeffs.cast<double>())};
    }
    const auto& gl = g.as_glide();
    const int n = e.coeffs[0];
    const int m = e.coeffs[1];
    Vec v(2);
    if (n % 2 == 0) {
        v << n * gl.alpha, m * gl.beta;
        return {Mat::Identity(2, 2), v};
    }
    // s^n t^m with n odd: glide reflection with axis y = -m beta / 2
    v << n * gl.alpha, -m * gl.beta;
    return {glide_reflection_part(), v};
}

GroupElement multiply(const CuspGroup& g, const GroupElement& a, const GroupElement& b) {
    check_coeffs(g, a);
    check_coeffs(g, b);
    if (g.is_lattice()) return GroupElement(a.coeffs + b.coeffs);
    // s^{n1} t^{m1} s^{n2} t^{m2} = s^{n1+n2} t^{m2 + (-1)^{n2} m1}
    const int n1 = a.coeffs[0], m1 = a.coeffs[1];
    const int n2 = b.coeffs[0], m2 = b.coeffs[1];
    const int m = m2 + ((n2 % 2 == 0) ? m1 : -m1);
    return GroupElement::glide_word(n1 + n2, m);
}

GroupElement inverse_element(const CuspGroup& g, const GroupElement& a) {
    check_coeffs(g, a);
    if (g.is_lattice()) return GroupElement(-a.coeffs);
    const int n = a.coeffs[0], m = a.coeffs[1];
    // (s^n t^m)^{-1} = t^{-m} s^{-n} = s^{-n} t^{(-1)^{n+1} m}
    return GroupElement::glide_word(-n, (n % 2 == 0) ? -m : m);
}

void for_each_element_within(const CuspGroup& g, double radius,
                             const std::function<void(const GroupElement&, const Vec&)>& fn) {
    if (radius < 0.0) return;
    if (g.is_lattice()) {
        const Mat& basis = g.as_lattice().basis;
        const Eigen::Index d = basis.cols();
        const Mat inv = basis.inverse();
        // |w_i| = |e_i^T B^{-1} v| <= |row_i(B^{-1})| * radius
        Eigen::VectorXi lo(d), hi(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const double bound = inv.row(i).norm() * radius;
            hi[i] = static_cast<int>(std::floor(bound));
            lo[i] = -hi[i];
        }
        Eigen::VectorXi w = lo;
        if (d == 0) return;
        GroupElement e;
        while (true) {
            if (!w.isZero()) {
                Vec v = basis * w.cast<double>();
                if (v.norm() <= radius) {
                    e.coeffs = w;
                    fn(e, v);
                }
            }
            Eigen::Index i = d - 1;
            while (i >= 0 && w[i] == hi[i]) {
                w[i] = lo[i];
                --i;
            }
            if (i < 0) break;
            ++w[i];
        }
        return;
    }
    const auto& gl = g.as_glide();
    const int n_max = static_cast<int>(std::floor(radius / gl.alpha)) + 1;
    const int m_max = static_cast<int>(std::floor(radius / gl.beta)) + 1;
    GroupElement e;
    for (int n = -n_max; n <= n_max; ++n) {
        for (int m = -m_max; m <= m_max; ++m) {
            if (n == 0 && m == 0) continue;
            Vec v(2);
            v << n * gl.alpha, (n % 2 == 0) ? m * gl.beta : -m * gl.beta;
            if (v.norm() <= radius) {
                e = GroupElement::glide_word(n, m);
                fn(e, v);
            }
        }
    }
}

std::vector<GroupElement> enumerate_within(const CuspGroup& g, double radius) {
    std::vector<GroupElement> out;
    for_each_element_within(g, radius,
                            [&](const GroupElement& e, const Vec&) { out.push_back(e); });
    return out;
}

std::pair<Vec, GroupElement> reduce_to_fundamental_domain(const CuspGroup& g, const Vec& x) {
    if (g.is_lattice()) {
        const Mat& basis = g.as_lattice().basis;
        if (x.size() != basis.cols())
            throw ConfigurationError("point dimension does not match the lattice");
        Vec coords = basis.inverse() * x;
        Eigen::VectorXi w(coords.size());
        for (Eigen::Index i = 0; i < coords.size(); ++i)
            w[i] = -static_cast<int>(std::floor(coords[i]));
        GroupElement e{w};
        return {element_action(g, e)(x), e};
    }
    const auto& gl = g.as_glide();
    if (x.size() != 2) throw ConfigurationError("glide group acts on the plane");
    const int n = -static_cast<int>(std::floor(x[0] / gl.alpha));
    int m;
    if (n % 2 == 0) {
        m = -static_cast<int>(std::floor((x[1] + 0.5 * gl.beta) / gl.beta));
    } else {
        m = static_cast<int>(std::floor((0.5 * gl.beta - x[1]) / gl.beta));
    }
    GroupElement e = GroupElement::glide_word(n, m);
    return {element_action(g, e)(x), e};
}

bool in_fundamental_domain(const CuspGroup& g, const Vec& x) {
    if (g.is_lattice()) {
        Vec coords = g.as_lattice().basis.inverse() * x;
        for (Eigen::Index i = 0; i < coords.size(); ++i)
            if (coords[i] < 0.0 || coords[i] >= 1.0) return false;
        return true;
    }
    const auto& gl = g.as_glide();
    return x[0] >= 0.0 && x[0] < gl.alpha && x[1] >= -0.5 * gl.beta && x[1] < 0.5 * gl.beta;
}

double norm_of(const CuspGroup& g, const GroupElement& e, const Vec& B0) {
    return element_action(g, e)(B0).norm();
}

}  // namespace cuspgeo
