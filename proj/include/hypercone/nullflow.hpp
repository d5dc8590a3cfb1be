#pragma once

#include <complex>
#include <vector>

#include "hypercone/common.hpp"

namespace hypercone::nullflow {

// State along a leaf of the nullity foliation: arclength t, the splitting
// pair (u, v), and the comparison functions psi and theta.
struct FlowState {
    double t = 0.0;
    double u = 0.0;
    double v = 0.0;
    double psi = 0.0;
    double theta = 0.0;
};

// Complex leaf state w = v + i u. The combination is an implementation
// device: the normative definition is the real system
//   v' = v^2 - u^2 - 1,  u' = 2 u v,
// which w' = w^2 - 1 reproduces.
using Riccati = std::complex<double>;

inline Riccati make_state(double u0, double v0) { return Riccati(v0, u0); }
inline double u_of(const Riccati& w) { return w.imag(); }
inline double v_of(const Riccati& w) { return w.real(); }

// Closed-form solution w(t) = (w0 - tanh t) / (1 - w0 tanh t). Throws
// PoleError within 1e-12 of the pole, reachable only for real |w0| > 1.
Riccati moebius_flow(const Riccati& w0, double t);

// Pole location along the leaf for real |w0| > 1: arctanh(1/w0).
double pole_time(double v0);

// Classical RK4 on the real system. On pole proximity the trajectory stops
// at the last valid state.
struct Trajectory {
    std::vector<FlowState> states;
    bool aborted_at_pole = false;
};
Trajectory rk4_flow(const Riccati& w0, double t_end, double step);

// psi = tanh t for trajectories launched on the v = 0 level set at t = 0,
// and theta = u^2 + (v + psi)^2.
std::pair<double, double> psi_theta(double t, double u, double v);

// The radical expression for psi in terms of (u, v) alone.
double psi_radical(double u, double v);

struct FlowIdentityReport {
    double max_psi_moebius = 0.0;  // psi/(1+psi^2) = -v/(1+u^2+v^2)
    double max_psi_slope = 0.0;    // d psi/dt = 1 - psi^2
    double max_theta_slope = 0.0;  // d theta/dt = 2 (v - psi) theta
    int samples = 0;
};

// Checks the three closed-form identities along the flow started at
// w0 = i u0 on a uniform t grid.
FlowIdentityReport check_flow_identities(double u0, double t_min, double t_max, int samples);

// Pointwise algebraic content of the differential inequality: returns
//   8 u^2 v^2 + 2 (v^2 - u^2 - 1)^2 - 2 (u^2 + v^2 - 1)^2,
// which equals 8 u^2 identically.
double polynomial_inequality_identity(double u, double v);

}  // namespace hypercone::nullflow
