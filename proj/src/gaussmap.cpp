#include "hypercone/gaussmap.hpp"

#include <cmath>

namespace hypercone::gaussmap {

using immersion::Ambient;
using immersion::FrameField;
using lorentz::Multivector4;
using lorentz::wedge4;

namespace {

struct WedgeFactors {
    Eigen::VectorXd f;
    std::vector<Eigen::VectorXd> e;  // ambient frame vectors e1, e2, e3
};

WedgeFactors wedge_factors(const deriv::ParamMap& map, const FrameField& frame,
                           const Eigen::VectorXd& x) {
    const deriv::Jet2 jet = deriv::eval_jet2(map, x);
    const Eigen::MatrixXd coeffs = frame.coeffs(x);
    WedgeFactors wf;
    wf.f = jet.value;
    wf.e.assign(3, Eigen::VectorXd::Zero(map.ambient_dim()));
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) wf.e[i] += coeffs(k, i) * jet.grad[k];
    return wf;
}

Multivector4 wedge_of(const WedgeFactors& wf) {
    return wedge4(wf.f, wf.e[0], wf.e[1], wf.e[2]);
}

Multivector4 wedge_replace(const WedgeFactors& wf, int j, const Eigen::VectorXd& xi) {
    std::array<const Eigen::VectorXd*, 3> e = {&wf.e[0], &wf.e[1], &wf.e[2]};
    e[j] = &xi;
    return wedge4(wf.f, *e[0], *e[1], *e[2]);
}

Multivector4 wedge_replace2(const WedgeFactors& wf, int j, const Eigen::VectorXd& xi_a, int k,
                            const Eigen::VectorXd& xi_b) {
    std::array<const Eigen::VectorXd*, 3> e = {&wf.e[0], &wf.e[1], &wf.e[2]};
    e[j] = &xi_a;
    e[k] = &xi_b;
    return wedge4(wf.f, *e[0], *e[1], *e[2]);
}

}  // namespace

GaussValue gauss_value(const deriv::ParamMap& map, const FrameField& frame,
                       const Eigen::VectorXd& x) {
    if (map.domain_dim() != 3)
        throw PreconditionError("gauss_value: chart dimension must be 3");
    const WedgeFactors wf = wedge_factors(map, frame, x);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            if (std::fabs(lorentz::minkowski_dot(wf.e[i], wf.e[j]) - want) > 1e-8)
                throw PreconditionError("gauss_value: frame not orthonormal");
        }
    return GaussValue{wedge_of(wf), frame.coeffs(x)};
}

GaussDiffReport gauss_differential_check(const deriv::ParamMap& map, const FrameField& frame,
                                         const Eigen::VectorXd& x) {
    const auto ev = immersion::evaluate(map, x);
    const Eigen::MatrixXd coeffs = frame.coeffs(x);
    const WedgeFactors wf = wedge_factors(map, frame, x);
    const int normals = static_cast<int>(ev.normal_frame.size());

    // h^a in the orthonormal frame.
    std::vector<Eigen::Matrix3d> ht(normals);
    for (int a = 0; a < normals; ++a) ht[a] = ev.h_orthonormal(a, coeffs);

    auto gamma_coeffs = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return wedge_of(wedge_factors(map, frame, y)).coeffs();
    };

    GaussDiffReport rep;
    rep.energy_rhs = -ev.alpha_norm2;
    Eigen::VectorXd worst_resid;
    const double h = 1e-3;
    for (int i = 0; i < 3; ++i) {
        const Eigen::VectorXd push =
            chart::directional_fd(gamma_coeffs, x, coeffs.col(i), h);
        Multivector4 pushed(map.ambient_dim());
        pushed.coeffs() = push;

        Multivector4 rhs(map.ambient_dim());
        for (int j = 0; j < 3; ++j)
            for (int a = 0; a < normals; ++a)
                rhs += ht[a](i, j) * wedge_replace(wf, j, ev.normal_frame[a]);

        const Eigen::VectorXd resid = push - rhs.coeffs();
        if (resid.norm() > rep.max_resid) {
            rep.max_resid = resid.norm();
            worst_resid = resid;
        }
        rep.energy_lhs += lorentz::multivector_dot(pushed, pushed);
    }
    rep.energy_rel_dev = std::fabs(rep.energy_lhs - rep.energy_rhs) /
                         std::max(std::fabs(rep.energy_rhs), 1e-12);

    // Decompose the worst residual against the normal-replacement span.
    if (worst_resid.size() > 0 && normals > 0) {
        Eigen::MatrixXd basis(worst_resid.size(), 3 * normals);
        int col = 0;
        for (int j = 0; j < 3; ++j)
            for (int a = 0; a < normals; ++a)
                basis.col(col++) = wedge_replace(wf, j, ev.normal_frame[a]).coeffs();
        const Eigen::VectorXd sol = basis.colPivHouseholderQr().solve(worst_resid);
        rep.normal_span_part = (basis * sol).norm();
        rep.complement_part = (worst_resid - basis * sol).norm();
    }
    return rep;
}

GaussLaplaceReport gauss_laplace_check(const deriv::ParamMap& map, const FrameField& frame,
                                       const chart::MetricField& metric_field,
                                       const Eigen::VectorXd& x, double step) {
    const auto ev = immersion::evaluate(map, x);
    const Eigen::MatrixXd coeffs = frame.coeffs(x);
    const WedgeFactors wf = wedge_factors(map, frame, x);
    const int normals = static_cast<int>(ev.normal_frame.size());

    std::vector<Eigen::Matrix3d> ht(normals);
    for (int a = 0; a < normals; ++a) ht[a] = ev.h_orthonormal(a, coeffs);

    chart::VectorField gamma_coeffs = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return wedge_of(wedge_factors(map, frame, y)).coeffs();
    };
    const Eigen::VectorXd lap = chart::laplace_beltrami(gamma_coeffs, metric_field, x, step);

    const Multivector4 gamma = wedge_of(wf);
    Multivector4 mixed(map.ambient_dim());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                if (j == k) continue;
                for (int a = 0; a < normals; ++a)
                    for (int b = 0; b < normals; ++b) {
                        if (a == b) continue;
                        mixed += ht[a](i, j) * ht[b](i, k) *
                                 wedge_replace2(wf, j, ev.normal_frame[a], k, ev.normal_frame[b]);
                    }
            }

    GaussLaplaceReport rep;
    rep.normal_count = normals;
    rep.gamma_norm_dev = std::fabs(lorentz::multivector_dot(gamma, gamma) + 1.0);
    const Eigen::VectorXd full = lap + ev.alpha_norm2 * gamma.coeffs() - mixed.coeffs();
    const Eigen::VectorXd no_mixed = lap + ev.alpha_norm2 * gamma.coeffs();
    rep.resid_full = full.norm();
    rep.resid_no_mixed = no_mixed.norm();
    rep.resid_component_max = full.cwiseAbs().maxCoeff();
    return rep;
}

}  // namespace hypercone::gaussmap
