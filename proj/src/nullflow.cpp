#include "hypercone/nullflow.hpp"

#include <cmath>

namespace hypercone::nullflow {

Riccati moebius_flow(const Riccati& w0, double t) {
    const double T = std::tanh(t);
    const Riccati denom = 1.0 - w0 * T;
    if (std::abs(denom) < 1e-12)
        throw PoleError("moebius_flow: pole at t = " + std::to_string(t));
    return (w0 - T) / denom;
}

double pole_time(double v0) {
    if (std::fabs(v0) <= 1.0)
        throw PreconditionError("pole_time: no pole for |v0| <= 1");
    return std::atanh(1.0 / v0);
}

namespace {

inline void rhs(double u, double v, double& du, double& dv) {
    dv = v * v - u * u - 1.0;
    du = 2.0 * u * v;
}

}  // namespace

Trajectory rk4_flow(const Riccati& w0, double t_end, double step) {
    if (!(step > 0.0)) throw PreconditionError("rk4_flow: step must be positive");
    Trajectory out;
    const double dir = t_end >= 0.0 ? 1.0 : -1.0;
    const double h = dir * step;
    double t = 0.0, u = u_of(w0), v = v_of(w0);
    out.states.push_back({t, u, v, 0.0, 0.0});
    const long nsteps = std::lround(std::fabs(t_end) / step);
    for (long i = 0; i < nsteps; ++i) {
        double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
        rhs(u, v, k1u, k1v);
        rhs(u + 0.5 * h * k1u, v + 0.5 * h * k1v, k2u, k2v);
        rhs(u + 0.5 * h * k2u, v + 0.5 * h * k2v, k3u, k3v);
        rhs(u + h * k3u, v + h * k3v, k4u, k4v);
        const double nu = u + h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        const double nv = v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        if (!std::isfinite(nu) || !std::isfinite(nv) || std::fabs(nv) > 1e8 ||
            std::fabs(nu) > 1e8) {
            out.aborted_at_pole = true;
            break;
        }
        u = nu;
        v = nv;
        t += h;
        out.states.push_back({t, u, v, 0.0, 0.0});
    }
    return out;
}

std::pair<double, double> psi_theta(double t, double u, double v) {
    const double psi = std::tanh(t);
    const double theta = u * u + (v + psi) * (v + psi);
    return {psi, theta};
}

double psi_radical(double u, double v) {
    const double q = 1.0 + u * u + v * v;
    const double rad = std::sqrt(std::max(q * q - 4.0 * v * v, 0.0));
    return -2.0 * v / (q + rad);
}

FlowIdentityReport check_flow_identities(double u0, double t_min, double t_max, int samples) {
    FlowIdentityReport rep;
    const Riccati w0 = make_state(u0, 0.0);
    const double fd_h = 1e-4;
    for (int i = 0; i < samples; ++i) {
        const double t = t_min + (t_max - t_min) * i / (samples - 1.0);
        const Riccati w = moebius_flow(w0, t);
        const double u = u_of(w), v = v_of(w);
        const auto [psi, theta] = psi_theta(t, u, v);

        // psi / (1 + psi^2) = -v / (1 + u^2 + v^2), in closed form.
        const double lhs46 = psi / (1.0 + psi * psi);
        const double rhs46 = -v / (1.0 + u * u + v * v);
        rep.max_psi_moebius = std::max(rep.max_psi_moebius, std::fabs(lhs46 - rhs46));

        auto state_at = [&](double s) {
            const Riccati ws = moebius_flow(w0, s);
            return psi_theta(s, u_of(ws), v_of(ws));
        };
        const auto [psi_p, theta_p] = state_at(t + fd_h);
        const auto [psi_m, theta_m] = state_at(t - fd_h);
        const double dpsi = (psi_p - psi_m) / (2.0 * fd_h);
        const double dtheta = (theta_p - theta_m) / (2.0 * fd_h);
        rep.max_psi_slope = std::max(rep.max_psi_slope, std::fabs(dpsi - (1.0 - psi * psi)));
        rep.max_theta_slope =
            std::max(rep.max_theta_slope, std::fabs(dtheta - 2.0 * (v - psi) * theta));
        ++rep.samples;
    }
    return rep;
}

double polynomial_inequality_identity(double u, double v) {
    const double a = v * v - u * u - 1.0;
    const double b = u * u + v * v - 1.0;
    return 8.0 * u * u * v * v + 2.0 * a * a - 2.0 * b * b;
}

}  // namespace hypercone::nullflow
