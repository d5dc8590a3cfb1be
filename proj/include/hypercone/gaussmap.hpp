#pragma once

#include "hypercone/chart_calculus.hpp"
#include "hypercone/immersion.hpp"
#include "hypercone/lorentz.hpp"
#include "hypercone/param_map.hpp"

namespace hypercone::gaussmap {

// Plucker image of the tangent-plus-position 4-plane: f ^ e1 ^ e2 ^ e3 for
// a three-dimensional chart with a g-orthonormal frame field.
struct GaussValue {
    lorentz::Multivector4 value;
    Eigen::MatrixXd frame_coeffs;
};

GaussValue gauss_value(const deriv::ParamMap& map, const immersion::FrameField& frame,
                       const Eigen::VectorXd& x);

struct GaussDiffReport {
    double max_resid = 0.0;        // worst |gamma_* e_i - sum_{j,a} h^a_ij f^e_{ja}|
    double normal_span_part = 0.0;     // decomposition of the worst residual:
    double complement_part = 0.0;      // inside / outside span{f ^ e_{ja}}
    double energy_lhs = 0.0;           // sum_i <gamma_* e_i, gamma_* e_i>
    double energy_rhs = 0.0;           // -|alpha|^2
    double energy_rel_dev = 0.0;
};

// Differential identity and energy identity of the Gauss map at x, with the
// differential taken by finite differences of the exact wedge field.
GaussDiffReport gauss_differential_check(const deriv::ParamMap& map,
                                         const immersion::FrameField& frame,
                                         const Eigen::VectorXd& x);

struct GaussLaplaceReport {
    double resid_full = 0.0;       // |Delta gamma + |alpha|^2 gamma - mixed|
    double resid_no_mixed = 0.0;   // |Delta gamma + |alpha|^2 gamma|
    double resid_component_max = 0.0;  // same residual read per coordinate
    double gamma_norm_dev = 0.0;       // |<gamma,gamma> + 1|
    int normal_count = 0;
};

// Laplace identity of the Gauss map. The Laplace-Beltrami weights come from
// the supplied closed-form metric field so only one FD layer acts on gamma.
// The mixed term sums h^a_ij h^b_ik over a != b, j != k with double
// normal replacement; it vanishes for codimension one.
GaussLaplaceReport gauss_laplace_check(const deriv::ParamMap& map,
                                       const immersion::FrameField& frame,
                                       const chart::MetricField& metric_field,
                                       const Eigen::VectorXd& x, double step = 0.02);

}  // namespace hypercone::gaussmap
