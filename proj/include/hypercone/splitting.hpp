#pragma once

#include <Eigen/Dense>

#include "hypercone/immersion.hpp"
#include "hypercone/param_map.hpp"

namespace hypercone::splitting {

// Splitting tensor of the nullity direction on the conullity plane, in the
// g-orthonormal frame (e1, e2, e3) with e3 spanning the nullity. The pair
// (u, v) is reported for the orientation J e1 = e2, e3 = third frame column;
// both flip with the frame orientation.
struct SplittingData {
    Eigen::Matrix2d C;            // C_{e3} on span(e1, e2)
    double v = 0.0, u = 0.0;      // extracted from covariant derivatives along e1
    double v_alt = 0.0, u_alt = 0.0;  // same quantities along e2
    double span_residual = 0.0;       // |C - (v I - u J)|_F
    double nullity_alignment = 0.0;   // sine of the angle between e3 and the nullity basis
};

SplittingData splitting_tensor(const deriv::ParamMap& map, const immersion::FrameField& frame,
                               const Eigen::VectorXd& x,
                               immersion::Ambient amb = immersion::Ambient::Hyperboloid);

struct LeafOdeReport {
    double max_v_ode = 0.0;     // | dv/dt - (v^2 - u^2 - 1) |
    double max_u_ode = 0.0;     // | du/dt - 2uv |
    double max_cauchy_riemann = 0.0;  // |e1(u) - e2(v)| and |e2(u) + e1(v)|
    int samples = 0;
};

// Leaf ODE check along the fiber through surface point x: the curve
// t -> (x, t) is a unit-speed nullity geodesic on cone charts.
LeafOdeReport leaf_ode_check(const deriv::ParamMap& map, const immersion::FrameField& frame,
                             const Eigen::Vector2d& x, double t_min, double t_max, int samples,
                             immersion::Ambient amb = immersion::Ambient::Hyperboloid);

// |Laplace-Beltrami of the field| at x; the field is typically u or v.
double harmonic_residual(const deriv::ParamMap& map,
                         const std::function<double(const Eigen::VectorXd&)>& field,
                         const Eigen::VectorXd& x, double step = 0.03,
                         immersion::Ambient amb = immersion::Ambient::Hyperboloid);

struct AlphaTransportReport {
    double max_rel_resid = 0.0;  // FD of |alpha|^2 vs 2 sum_a tr(A_a C A_a)
    int samples = 0;
};

// Transport of |alpha|^2 along the leaf against the splitting-tensor trace
// form.
AlphaTransportReport alpha_transport_check(const deriv::ParamMap& map,
                                           const immersion::FrameField& frame,
                                           const Eigen::Vector2d& x, double t_min, double t_max,
                                           int samples,
                                           immersion::Ambient amb = immersion::Ambient::Hyperboloid);

struct CommutationReport {
    double shape_commute = 0.0;    // max_a |A_a C - C^t A_a|
    double minimal_commute = 0.0;  // max_a |A_a J - J^t A_a|
};

// Commutation identities of the restricted shape operators with the
// splitting tensor and with J; the J identity holds iff the immersion is
// minimal.
CommutationReport commutation_check(const deriv::ParamMap& map,
                                    const immersion::FrameField& frame, const Eigen::VectorXd& x,
                                    immersion::Ambient amb = immersion::Ambient::Hyperboloid);

}  // namespace hypercone::splitting
