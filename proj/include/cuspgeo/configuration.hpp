#pragma once

#include "cuspgeo/cusp_group.hpp"
#include "cuspgeo/isometry.hpp"

// Standard-position data of a cusp: the half-space horoball above height 1,
// the unit-diameter horoball at the origin, their tangency A0 = (0,...,0,1),
// the stabilizer of the half-space, and B0 = g0(A0).
//
// All solver-facing coordinates live in the boundary chart with the
// projection of A0 at the origin.  A glide group is stored in coordinates
// adapted to its axis; the configuration carries the rigid motion (rotation
// by axis_angle followed by the offset of A0) from the chart to that frame.

namespace cuspgeo {

struct SolverOptions {
    double algebra_tol = tol::algebra;
    double iterate_tol = tol::iterate;
    double residual_tol = tol::residual;
    double min_norm = 10.0;   // Lemma-2 "large enough" threshold
    int max_iterations = 10000;
};

class CuspConfiguration {
public:
    CuspConfiguration(int dimension, CuspGroup group, Vec B0,
                      Mat V = Mat(), Vec a0_offset = Vec(), double axis_angle = 0.0,
                      SolverOptions opts = {});

    // Reduces B0 into the fundamental domain before constructing; reports
    // whether a reduction happened through the optional flag.
    static CuspConfiguration normalized(int dimension, CuspGroup group, Vec B0,
                                        Mat V = Mat(), Vec a0_offset = Vec(),
                                        double axis_angle = 0.0, SolverOptions opts = {},
                                        bool* reduced = nullptr);

    int dimension() const { return n_; }
    Eigen::Index boundary_dim() const { return n_ - 1; }
    const CuspGroup& group() const { return group_; }
    const Vec& B0() const { return B0_; }
    const Vec& b() const { return B0_; }  // the paper's vector from A0 to B0
    const Mat& V() const { return V_; }
    const Vec& a0_offset() const { return a0_offset_; }
    double axis_angle() const { return axis_angle_; }
    const SolverOptions& options() const { return opts_; }
    SolverOptions& options() { return opts_; }

    InteriorPoint A0() const;

    // Chart <-> group-adapted frame.
    Vec to_adapted(const Vec& chart_point) const;
    Vec from_adapted(const Vec& adapted_point) const;

    // Action of a group element in the A0 chart.
    AffineMap chart_action(const GroupElement& e) const;

    Vec B_t(const GroupElement& e) const { return chart_action(e)(B0_); }
    double norm_t(const GroupElement& e) const { return B_t(e).norm(); }

private:
    int n_;
    CuspGroup group_;
    Vec B0_;
    Mat V_;
    Vec a0_offset_;
    double axis_angle_;
    Mat frame_rot_;  // chart -> adapted rotation
    SolverOptions opts_;
};

}  // namespace cuspgeo
