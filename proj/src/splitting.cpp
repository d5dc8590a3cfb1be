#include "hypercone/splitting.hpp"

#include <cmath>

#include "hypercone/chart_calculus.hpp"

namespace hypercone::splitting {

using immersion::Ambient;
using immersion::FrameField;

namespace {

const Eigen::Matrix2d kJ = (Eigen::Matrix2d() << 0.0, -1.0, 1.0, 0.0).finished();

struct FrameDerivs {
    Eigen::MatrixXd coeffs;                 // frame columns at x
    std::vector<Eigen::VectorXd> d_e3;      // chart derivatives of the e3 column
};

FrameDerivs frame_derivatives(const FrameField& frame, const Eigen::VectorXd& x) {
    FrameDerivs fd;
    fd.coeffs = frame.coeffs(x);
    const int m = static_cast<int>(x.size());
    fd.d_e3.resize(m);
    const double h = 1e-4 * (1.0 + x.cwiseAbs().maxCoeff());
    for (int k = 0; k < m; ++k) {
        auto diff = [&](double s) -> Eigen::VectorXd {
            Eigen::VectorXd xp = x, xm = x;
            xp[k] += s;
            xm[k] -= s;
            return (frame.coeffs(xp).col(m - 1) - frame.coeffs(xm).col(m - 1)) / (2.0 * s);
        };
        fd.d_e3[k] = (4.0 * diff(0.5 * h) - diff(h)) / 3.0;
    }
    return fd;
}

}  // namespace

SplittingData splitting_tensor(const deriv::ParamMap& map, const FrameField& frame,
                               const Eigen::VectorXd& x, Ambient amb) {
    if (map.domain_dim() != 3)
        throw PreconditionError("splitting_tensor: chart dimension must be 3");
    const auto ev = immersion::evaluate(map, x, amb);
    const auto nd = immersion::nullity_space(ev);
    if (nd.nu != 1)
        throw PreconditionError("splitting_tensor: nullity index is " + std::to_string(nd.nu) +
                                ", need 1");

    const FrameDerivs fd = frame_derivatives(frame, x);
    const Eigen::VectorXd e3 = fd.coeffs.col(2);

    SplittingData out;
    const double cosang = std::fabs((e3.transpose() * ev.metric * nd.basis.col(0))(0, 0));
    out.nullity_alignment = std::sqrt(std::max(0.0, 1.0 - cosang * cosang));
    if (out.nullity_alignment > 1e-6)
        throw PreconditionError("splitting_tensor: frame e3 misaligned with the nullity space");

    chart::MetricField mf = [&map, amb](const Eigen::VectorXd& y) {
        return immersion::metric_at(map, y, amb);
    };
    const auto gamma = chart::christoffels(mf, x);

    // nabla_{e_i} e3 in chart coordinates, i = 1, 2.
    Eigen::MatrixXd nab(3, 2);
    for (int i = 0; i < 2; ++i) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(3);
        for (int k = 0; k < 3; ++k) {
            Eigen::VectorXd corr = fd.d_e3[k];
            for (int l = 0; l < 3; ++l)
                for (int mm = 0; mm < 3; ++mm) corr[l] += gamma[l](k, mm) * e3[mm];
            w += fd.coeffs(k, i) * corr;
        }
        nab.col(i) = w;
    }

    Eigen::Matrix2d a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            a(i, j) = (nab.col(i).transpose() * ev.metric * fd.coeffs.col(j))(0, 0);

    out.v = -a(0, 0);
    out.u = a(0, 1);
    out.v_alt = -a(1, 1);
    out.u_alt = -a(1, 0);
    out.C << -a(0, 0), -a(1, 0), -a(0, 1), -a(1, 1);
    const Eigen::Matrix2d span = out.v * Eigen::Matrix2d::Identity() - out.u * kJ;
    out.span_residual = (out.C - span).norm();
    return out;
}

LeafOdeReport leaf_ode_check(const deriv::ParamMap& map, const FrameField& frame,
                             const Eigen::Vector2d& x, double t_min, double t_max, int samples,
                             Ambient amb) {
    LeafOdeReport rep;
    const double fd_h = 0.01;
    auto state = [&](const Eigen::VectorXd& y) { return splitting_tensor(map, frame, y, amb); };

    for (int i = 0; i < samples; ++i) {
        const double t = t_min + (t_max - t_min) * i / (samples - 1.0);
        Eigen::Vector3d xt(x[0], x[1], t);
        const SplittingData s = state(xt);

        auto along_t = [&](double dt) {
            Eigen::Vector3d y(x[0], x[1], t + dt);
            return state(y);
        };
        auto d_dt = [&](auto proj) {
            auto diff = [&](double h) {
                return (proj(along_t(h)) - proj(along_t(-h))) / (2.0 * h);
            };
            return (4.0 * diff(0.5 * fd_h) - diff(fd_h)) / 3.0;
        };
        const double dv = d_dt([](const SplittingData& d) { return d.v; });
        const double du = d_dt([](const SplittingData& d) { return d.u; });
        rep.max_v_ode = std::max(rep.max_v_ode, std::fabs(dv - (s.v * s.v - s.u * s.u - 1.0)));
        rep.max_u_ode = std::max(rep.max_u_ode, std::fabs(du - 2.0 * s.u * s.v));

        // Conjugate pair along the conullity directions. A wider step keeps
        // the evaluation noise of the fields out of the difference.
        const double cr_h = 5.0 * fd_h;
        const Eigen::MatrixXd coeffs = frame.coeffs(xt);
        auto dir_fd = [&](int which, auto proj) {
            const Eigen::VectorXd dir = coeffs.col(which);
            auto diff = [&](double h) {
                return (proj(state(xt + h * dir)) - proj(state(xt - h * dir))) / (2.0 * h);
            };
            return (4.0 * diff(0.5 * cr_h) - diff(cr_h)) / 3.0;
        };
        const double e1u = dir_fd(0, [](const SplittingData& d) { return d.u; });
        const double e2u = dir_fd(1, [](const SplittingData& d) { return d.u; });
        const double e1v = dir_fd(0, [](const SplittingData& d) { return d.v; });
        const double e2v = dir_fd(1, [](const SplittingData& d) { return d.v; });
        rep.max_cauchy_riemann =
            std::max({rep.max_cauchy_riemann, std::fabs(e1u - e2v), std::fabs(e2u + e1v)});
        ++rep.samples;
    }
    return rep;
}

double harmonic_residual(const deriv::ParamMap& map,
                         const std::function<double(const Eigen::VectorXd&)>& field,
                         const Eigen::VectorXd& x, double step, Ambient amb) {
    chart::MetricField mf = [&map, amb](const Eigen::VectorXd& y) {
        return immersion::metric_at(map, y, amb);
    };
    return std::fabs(chart::laplace_beltrami(field, mf, x, step));
}

AlphaTransportReport alpha_transport_check(const deriv::ParamMap& map, const FrameField& frame,
                                           const Eigen::Vector2d& x, double t_min, double t_max,
                                           int samples, Ambient amb) {
    AlphaTransportReport rep;
    const double fd_h = 0.01;
    for (int i = 0; i < samples; ++i) {
        const double t = t_min + (t_max - t_min) * i / (samples - 1.0);
        Eigen::Vector3d xt(x[0], x[1], t);
        const auto ev = immersion::evaluate(map, xt, amb);
        const Eigen::MatrixXd coeffs = frame.coeffs(xt);
        const SplittingData s = splitting_tensor(map, frame, xt, amb);

        double rhs = 0.0;
        for (size_t a = 0; a < ev.h.size(); ++a) {
            const Eigen::Matrix2d at = ev.h_orthonormal(static_cast<int>(a), coeffs)
                                           .topLeftCorner<2, 2>();
            rhs += 2.0 * (at * s.C * at).trace();
        }
        auto alpha2 = [&](double dt) {
            Eigen::Vector3d y(x[0], x[1], t + dt);
            return immersion::evaluate(map, y, amb).alpha_norm2;
        };
        auto diff = [&](double h) { return (alpha2(h) - alpha2(-h)) / (2.0 * h); };
        const double lhs = (4.0 * diff(0.5 * fd_h) - diff(fd_h)) / 3.0;
        const double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-12});
        rep.max_rel_resid = std::max(rep.max_rel_resid, std::fabs(lhs - rhs) / scale);
        ++rep.samples;
    }
    return rep;
}

CommutationReport commutation_check(const deriv::ParamMap& map, const FrameField& frame,
                                    const Eigen::VectorXd& x, Ambient amb) {
    const auto ev = immersion::evaluate(map, x, amb);
    const Eigen::MatrixXd coeffs = frame.coeffs(x);
    const SplittingData s = splitting_tensor(map, frame, x, amb);
    CommutationReport rep;
    for (size_t a = 0; a < ev.h.size(); ++a) {
        const Eigen::Matrix2d at =
            ev.h_orthonormal(static_cast<int>(a), coeffs).topLeftCorner<2, 2>();
        rep.shape_commute = std::max(
            rep.shape_commute, (at * s.C - s.C.transpose() * at).norm());
        rep.minimal_commute = std::max(
            rep.minimal_commute, (at * kJ - kJ.transpose() * at).norm());
    }
    return rep;
}

}  // namespace hypercone::splitting
