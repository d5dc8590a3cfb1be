#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "hypercone/param_map.hpp"

namespace hypercone::immersion {

// Model space the map is evaluated in. Hyperboloid is the sheet <x,x> = -1
// in Minkowski space, Sphere the unit sphere in Euclidean space, Euclidean
// the flat space itself (no position normal).
enum class Ambient { Hyperboloid, Sphere, Euclidean };

double ambient_inner(Ambient amb, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double ambient_curvature(Ambient amb);  // -1, +1, 0

// Full second-order data of an immersion at one parameter point.
struct ImmersionEval {
    Ambient ambient = Ambient::Hyperboloid;
    int m = 0;
    Eigen::VectorXd point;
    std::vector<Eigen::VectorXd> tangents;      // coordinate tangents f_* d_i
    Eigen::MatrixXd metric;                     // g_ij, positive definite
    Eigen::MatrixXd metric_inv;
    std::vector<Eigen::VectorXd> normal_frame;  // orthonormal, orthogonal to tangents (and position)
    std::vector<Eigen::MatrixXd> h;             // h^a_ij = <alpha(d_i,d_j), xi_a>
    Eigen::VectorXd mean_curvature;             // components on the normal frame
    double mean_curvature_norm = 0.0;
    double alpha_norm2 = 0.0;                   // squared norm in orthonormal tangent frames

    // alpha(d_i, d_j) as an ambient vector.
    Eigen::VectorXd alpha_vec(int i, int j) const;
    // Second fundamental form coefficients in a g-orthonormal tangent frame
    // given by chart coefficient columns.
    Eigen::MatrixXd h_orthonormal(int a, const Eigen::MatrixXd& frame_coeffs) const;
    // Norm of alpha(X, .) over g-unit Y, for a chart-coefficient direction X.
    double alpha_contraction_norm(const Eigen::VectorXd& x_coeffs) const;
};

// Relative nullity data: kernel of X -> alpha(X, .) with an SVD rank
// decision at the given relative threshold.
struct NullityData {
    int nu = 0;
    Eigen::MatrixXd basis;           // m x nu, g-orthonormal columns
    Eigen::VectorXd singular_values; // descending
    double residual = 0.0;           // largest singular value counted into the kernel
};

// Threshold below which the metric is considered rank-deficient (relative
// to its largest eigenvalue). This is the r = 0 detector for cones.
inline constexpr double kMetricDegeneracyRel = 1e-8;

ImmersionEval evaluate(const deriv::ParamMap& map, const Eigen::VectorXd& x,
                       Ambient amb = Ambient::Hyperboloid,
                       deriv::JetBackend backend = deriv::JetBackend::ExactJet);

Eigen::MatrixXd metric_at(const deriv::ParamMap& map, const Eigen::VectorXd& x,
                          Ambient amb = Ambient::Hyperboloid);

NullityData nullity_space(const ImmersionEval& eval, double threshold = 1e-6);

// Scalar curvature from g, dg, d2g alone (Christoffel symbols and the
// Riemann contraction); independent of the second fundamental form route.
double scalar_curvature_intrinsic(const deriv::ParamMap& map, const Eigen::VectorXd& x,
                                  Ambient amb = Ambient::Hyperboloid);

// Scalar curvature via the Gauss equation:
//   s = c m(m-1) + m^2 |H|^2 - |alpha|^2.
double scalar_curvature_gauss(const ImmersionEval& eval);

Eigen::MatrixXd shape_operator(const ImmersionEval& eval, const Eigen::VectorXd& xi);

// Frame coefficient field over a chart: columns are the chart coefficients
// of a g-orthonormal frame e_1..e_m obtained by Gram-Schmidt of the
// coordinate fields in order. Smooth wherever the metric is.
struct FrameField {
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> coeffs;
};

FrameField coordinate_orthonormal_frame(const deriv::ParamMap& map, Ambient amb);

}  // namespace hypercone::immersion
