#include "hypercone/chart_calculus.hpp"

#include <cmath>
#include <limits>

namespace hypercone::chart {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class F>
auto richardson(F&& diff, double h) {
    using R = std::decay_t<decltype(diff(h))>;
    const R fine = diff(0.5 * h);
    const R coarse = diff(h);
    return R((4.0 * fine - coarse) / 3.0);
}

Eigen::VectorXd shifted(const Eigen::VectorXd& x, int i, double s) {
    Eigen::VectorXd y = x;
    y[i] += s;
    return y;
}
Eigen::VectorXd shifted2(const Eigen::VectorXd& x, int i, double si, int j, double sj) {
    Eigen::VectorXd y = x;
    y[i] += si;
    y[j] += sj;
    return y;
}

}  // namespace

MetricDerivs metric_derivatives(const MetricField& field, const Eigen::VectorXd& x,
                                bool with_second) {
    const int m = static_cast<int>(x.size());
    MetricDerivs md;
    md.g = field(x);
    md.g_inv = md.g.inverse();
    md.dg.resize(m);

    // Second differences carry an eps/h^2 rounding term; with one Richardson
    // level the optimum sits near eps^{1/6}.
    const double h1 = std::cbrt(kEps) * (1.0 + x.cwiseAbs().maxCoeff());
    const double h2 = std::pow(kEps, 1.0 / 6.0) * (1.0 + x.cwiseAbs().maxCoeff());

    for (int p = 0; p < m; ++p)
        md.dg[p] = richardson(
            [&](double h) -> Eigen::MatrixXd {
                return (field(shifted(x, p, h)) - field(shifted(x, p, -h))) / (2.0 * h);
            },
            h1);

    if (with_second) {
        md.d2g.assign(m, std::vector<Eigen::MatrixXd>(m));
        for (int p = 0; p < m; ++p) {
            md.d2g[p][p] = richardson(
                [&](double h) -> Eigen::MatrixXd {
                    return (field(shifted(x, p, h)) - 2.0 * md.g + field(shifted(x, p, -h))) /
                           (h * h);
                },
                h2);
            for (int q = p + 1; q < m; ++q) {
                md.d2g[p][q] = richardson(
                    [&](double h) -> Eigen::MatrixXd {
                        return (field(shifted2(x, p, h, q, h)) - field(shifted2(x, p, h, q, -h)) -
                                field(shifted2(x, p, -h, q, h)) +
                                field(shifted2(x, p, -h, q, -h))) /
                               (4.0 * h * h);
                    },
                    h2);
                md.d2g[q][p] = md.d2g[p][q];
            }
        }
    }
    return md;
}

std::vector<Eigen::MatrixXd> christoffels(const MetricDerivs& md) {
    const int m = static_cast<int>(md.g.rows());
    std::vector<Eigen::MatrixXd> gamma(m, Eigen::MatrixXd::Zero(m, m));
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) {
                double sum = 0.0;
                for (int l = 0; l < m; ++l)
                    sum += md.g_inv(k, l) * (md.dg[i](j, l) + md.dg[j](i, l) - md.dg[l](i, j));
                gamma[k](i, j) = gamma[k](j, i) = 0.5 * sum;
            }
    return gamma;
}

std::vector<Eigen::MatrixXd> christoffels(const MetricField& field, const Eigen::VectorXd& x) {
    return christoffels(metric_derivatives(field, x, false));
}

double scalar_curvature_from_metric(const MetricField& field, const Eigen::VectorXd& x) {
    const int m = static_cast<int>(x.size());
    const MetricDerivs md = metric_derivatives(field, x, true);
    const auto gamma = christoffels(md);

    // d_p Gamma^k_ij assembled from dg and d2g (no nested differencing).
    std::vector<std::vector<Eigen::MatrixXd>> dgamma(m, std::vector<Eigen::MatrixXd>(m));
    std::vector<Eigen::MatrixXd> dginv(m);
    for (int p = 0; p < m; ++p) dginv[p] = -md.g_inv * md.dg[p] * md.g_inv;
    for (int p = 0; p < m; ++p)
        for (int k = 0; k < m; ++k) {
            dgamma[p][k] = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    double sum = 0.0;
                    for (int l = 0; l < m; ++l) {
                        sum += dginv[p](k, l) * (md.dg[i](j, l) + md.dg[j](i, l) - md.dg[l](i, j));
                        sum += md.g_inv(k, l) * (md.d2g[p][i](j, l) + md.d2g[p][j](i, l) -
                                                 md.d2g[p][l](i, j));
                    }
                    dgamma[p][k](i, j) = 0.5 * sum;
                }
        }

    // Ric_jk = d_i Gamma^i_jk - d_j Gamma^i_ik + Gamma^i_im Gamma^m_jk
    //          - Gamma^i_jm Gamma^m_ik.
    Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
            double sum = 0.0;
            for (int i = 0; i < m; ++i) {
                sum += dgamma[i][i](j, k) - dgamma[j][i](i, k);
                for (int mm = 0; mm < m; ++mm)
                    sum += gamma[i](i, mm) * gamma[mm](j, k) - gamma[i](j, mm) * gamma[mm](i, k);
            }
            ric(j, k) = sum;
        }
    return (md.g_inv * ric).trace();
}

namespace {

template <class Value>
Value lb_impl(const std::function<Value(const Eigen::VectorXd&)>& phi, const MetricField& field,
              const Eigen::VectorXd& x, double h) {
    const int m = static_cast<int>(x.size());
    const MetricDerivs md = metric_derivatives(field, x, false);
    const auto gamma = christoffels(md);

    const Value phi0 = phi(x);
    std::vector<Value> d1(m);
    for (int i = 0; i < m; ++i)
        d1[i] = richardson(
            [&](double s) -> Value { return (phi(shifted(x, i, s)) - phi(shifted(x, i, -s))) / (2.0 * s); },
            h);

    Value acc = phi0;
    acc -= phi0;  // zero of the right shape
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Value d2;
            if (i == j) {
                d2 = richardson(
                    [&](double s) -> Value {
                        return (phi(shifted(x, i, s)) - 2.0 * phi0 + phi(shifted(x, i, -s))) /
                               (s * s);
                    },
                    h);
            } else {
                d2 = richardson(
                    [&](double s) -> Value {
                        return (phi(shifted2(x, i, s, j, s)) - phi(shifted2(x, i, s, j, -s)) -
                                phi(shifted2(x, i, -s, j, s)) + phi(shifted2(x, i, -s, j, -s))) /
                               (4.0 * s * s);
                    },
                    h);
            }
            Value corr = d2;
            for (int k = 0; k < m; ++k) corr -= gamma[k](i, j) * d1[k];
            acc += md.g_inv(i, j) * corr;
        }
    return acc;
}

}  // namespace

double laplace_beltrami(const ScalarField& phi, const MetricField& field, const Eigen::VectorXd& x,
                        double h) {
    return lb_impl<double>(phi, field, x, h);
}

Eigen::VectorXd laplace_beltrami(const VectorField& phi, const MetricField& field,
                                 const Eigen::VectorXd& x, double h) {
    return lb_impl<Eigen::VectorXd>(phi, field, x, h);
}

Eigen::VectorXd directional_fd(const VectorField& phi, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& dir, double h) {
    return richardson(
        [&](double s) -> Eigen::VectorXd { return (phi(x + s * dir) - phi(x - s * dir)) / (2.0 * s); },
        h);
}

double directional_fd(const ScalarField& phi, const Eigen::VectorXd& x, const Eigen::VectorXd& dir,
                      double h) {
    return richardson(
        [&](double s) -> double { return (phi(x + s * dir) - phi(x - s * dir)) / (2.0 * s); }, h);
}

}  // namespace hypercone::chart
