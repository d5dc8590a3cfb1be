#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "hypercone/common.hpp"

namespace hypercone::chart {

// Finite-difference calculus on chart quantities: metric derivatives,
// Christoffel symbols, curvature contraction and the Laplace-Beltrami
// operator. All differences are central with one Richardson level.
using MetricField = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
using ScalarField = std::function<double(const Eigen::VectorXd&)>;
using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct MetricDerivs {
    Eigen::MatrixXd g;
    Eigen::MatrixXd g_inv;
    std::vector<Eigen::MatrixXd> dg;                // dg[p](i,j) = d_p g_ij
    std::vector<std::vector<Eigen::MatrixXd>> d2g;  // d2g[p][q](i,j) = d_p d_q g_ij
};

MetricDerivs metric_derivatives(const MetricField& field, const Eigen::VectorXd& x,
                                bool with_second);

// gamma[k](i,j) = Gamma^k_ij.
std::vector<Eigen::MatrixXd> christoffels(const MetricDerivs& md);
std::vector<Eigen::MatrixXd> christoffels(const MetricField& field, const Eigen::VectorXd& x);

double scalar_curvature_from_metric(const MetricField& field, const Eigen::VectorXd& x);

// Laplace-Beltrami of a field at x: g^{ij} (d^2_ij phi - Gamma^k_ij d_k phi),
// with field derivatives differenced at step h.
double laplace_beltrami(const ScalarField& phi, const MetricField& field,
                        const Eigen::VectorXd& x, double h);
Eigen::VectorXd laplace_beltrami(const VectorField& phi, const MetricField& field,
                                 const Eigen::VectorXd& x, double h);

// Richardson-extrapolated directional derivative of a vector field along a
// chart direction.
Eigen::VectorXd directional_fd(const VectorField& phi, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& dir, double h);
double directional_fd(const ScalarField& phi, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& dir, double h);

}  // namespace hypercone::chart
