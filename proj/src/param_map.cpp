#include "hypercone/param_map.hpp"

#include <cmath>
#include <limits>

namespace hypercone::deriv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Eigen::VectorXd eval_vec(const ParamMap& map, const Eigen::VectorXd& x) {
    Eigen::VectorXd out(map.ambient_dim());
    map.eval_raw(std::span<const double>(x.data(), x.size()),
                 std::span<double>(out.data(), out.size()));
    for (int k = 0; k < out.size(); ++k)
        if (!std::isfinite(out[k]))
            throw EvaluationError("ParamMap: non-finite value in evaluation");
    return out;
}

void require_inside(const ParamMap& map, const Eigen::VectorXd& x, double margin) {
    if (x.size() != map.domain_dim())
        throw DimensionError("ParamMap: parameter dimension mismatch");
    if (!map.box().contains(x, 0.0))
        throw DomainError("ParamMap: point outside declared box");
    if (margin > 0.0 && !map.box().contains(x, margin))
        throw DomainError("ParamMap: FD stencil leaves declared box");
}

}  // namespace

double fd_step_first(double coord) { return std::cbrt(kEps) * (1.0 + std::fabs(coord)); }
double fd_step_second(double coord) { return std::pow(kEps, 0.25) * (1.0 + std::fabs(coord)); }

Eigen::VectorXd ParamMap::operator()(const Eigen::VectorXd& x) const {
    if (x.size() != m_) throw DimensionError("ParamMap: parameter dimension mismatch");
    Eigen::VectorXd out(n_);
    f_d_(std::span<const double>(x.data(), x.size()), std::span<double>(out.data(), out.size()));
    return out;
}

namespace {

Jet2 exact_jet2(const ParamMap& map, const Eigen::VectorXd& x) {
    const int m = map.domain_dim();
    const int n = map.ambient_dim();
    std::vector<Jet> in(m), out(n);
    for (int i = 0; i < m; ++i) in[i] = Jet::variable(x[i], i, m);
    for (int k = 0; k < n; ++k) out[k] = Jet::constant(0.0, m);
    map.eval_jets(in, out);

    Jet2 jet;
    jet.m = m;
    jet.value.resize(n);
    jet.grad.assign(m, Eigen::VectorXd::Zero(n));
    jet.hess.assign(m * (m + 1) / 2, Eigen::VectorXd::Zero(n));
    for (int k = 0; k < n; ++k) {
        if (!std::isfinite(out[k].val))
            throw EvaluationError("eval_jet2: non-finite value");
        jet.value[k] = out[k].val;
        for (int i = 0; i < m; ++i) {
            jet.grad[i][k] = out[k].grad[i];
            for (int j = i; j < m; ++j)
                jet.hess[Jet2::sym_index(i, j, m)][k] = 0.5 * (out[k].hess(i, j) + out[k].hess(j, i));
        }
    }
    for (const auto& g : jet.grad)
        if (!g.allFinite()) throw EvaluationError("eval_jet2: non-finite derivative");
    for (const auto& h : jet.hess)
        if (!h.allFinite()) throw EvaluationError("eval_jet2: non-finite derivative");
    return jet;
}

// One Richardson level over a symmetric difference D(h): (4 D(h/2) - D(h)) / 3.
template <class F>
Eigen::VectorXd richardson(F&& diff, double h) {
    return (4.0 * diff(0.5 * h) - diff(h)) / 3.0;
}

Jet2 fd_jet2(const ParamMap& map, const Eigen::VectorXd& x) {
    const int m = map.domain_dim();
    const int n = map.ambient_dim();
    Jet2 jet;
    jet.m = m;
    jet.value = eval_vec(map, x);
    jet.grad.assign(m, Eigen::VectorXd::Zero(n));
    jet.hess.assign(m * (m + 1) / 2, Eigen::VectorXd::Zero(n));

    auto at = [&](int i, double step) {
        Eigen::VectorXd y = x;
        y[i] += step;
        return eval_vec(map, y);
    };
    auto at2 = [&](int i, double si, int j, double sj) {
        Eigen::VectorXd y = x;
        y[i] += si;
        y[j] += sj;
        return eval_vec(map, y);
    };

    for (int i = 0; i < m; ++i) {
        const double h1 = fd_step_first(x[i]);
        jet.grad[i] = richardson(
            [&](double h) -> Eigen::VectorXd { return (at(i, h) - at(i, -h)) / (2.0 * h); }, h1);
    }
    for (int i = 0; i < m; ++i) {
        const double h2 = fd_step_second(x[i]);
        jet.hess[Jet2::sym_index(i, i, m)] = richardson(
            [&](double h) -> Eigen::VectorXd {
                return (at(i, h) - 2.0 * jet.value + at(i, -h)) / (h * h);
            },
            h2);
        for (int j = i + 1; j < m; ++j) {
            const double hi = fd_step_second(x[i]);
            const double hj = fd_step_second(x[j]);
            jet.hess[Jet2::sym_index(i, j, m)] = richardson(
                [&](double s) -> Eigen::VectorXd {
                    const double a = s * hi / hj;  // keep the i:j aspect fixed while halving
                    const double b = s;
                    return (at2(i, a, j, b) - at2(i, a, j, -b) - at2(i, -a, j, b) +
                            at2(i, -a, j, -b)) /
                           (4.0 * a * b);
                },
                hj);
        }
    }
    return jet;
}

}  // namespace

Jet2 eval_jet2(const ParamMap& map, const Eigen::VectorXd& x, JetBackend backend) {
    if (backend == JetBackend::ExactJet) {
        require_inside(map, x, 0.0);
        return exact_jet2(map, x);
    }
    double margin = 0.0;
    for (int i = 0; i < map.domain_dim(); ++i)
        margin = std::max(margin, fd_step_second(x[i]));
    require_inside(map, x, margin);
    return fd_jet2(map, x);
}

Eigen::VectorXd directional_derivative3(const ParamMap& map, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& dir) {
    if (dir.size() != map.domain_dim())
        throw DimensionError("directional_derivative3: direction dimension mismatch");
    const double h0 = std::cbrt(kEps) * (1.0 + x.cwiseAbs().maxCoeff());
    const double margin = 2.0 * h0 * dir.cwiseAbs().maxCoeff() + fd_step_second(x.cwiseAbs().maxCoeff());
    require_inside(map, x, margin);

    // Quadratic form of the exact Hessian along dir, differenced along dir.
    auto hess_dd = [&](double s) {
        Jet2 j = eval_jet2(map, x + s * dir, JetBackend::ExactJet);
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(map.ambient_dim());
        for (int i = 0; i < map.domain_dim(); ++i)
            for (int jj = 0; jj < map.domain_dim(); ++jj)
                acc += dir[i] * dir[jj] * j.d2(i, jj);
        return acc;
    };
    return richardson(
        [&](double h) -> Eigen::VectorXd { return (hess_dd(h) - hess_dd(-h)) / (2.0 * h); }, h0);
}

}  // namespace hypercone::deriv
