#include "hypercone/immersion.hpp"

#include <cmath>

#include "hypercone/chart_calculus.hpp"
#include "hypercone/lorentz.hpp"

namespace hypercone::immersion {

double ambient_inner(Ambient amb, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (amb == Ambient::Hyperboloid) return lorentz::minkowski_dot(x, y);
    if (x.size() != y.size()) throw DimensionError("ambient_inner: dimension mismatch");
    return x.dot(y);
}

double ambient_curvature(Ambient amb) {
    switch (amb) {
        case Ambient::Hyperboloid: return -1.0;
        case Ambient::Sphere: return +1.0;
        case Ambient::Euclidean: return 0.0;
    }
    return 0.0;
}

Eigen::VectorXd ImmersionEval::alpha_vec(int i, int j) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(point.size());
    for (size_t a = 0; a < normal_frame.size(); ++a) out += h[a](i, j) * normal_frame[a];
    return out;
}

Eigen::MatrixXd ImmersionEval::h_orthonormal(int a, const Eigen::MatrixXd& frame_coeffs) const {
    return frame_coeffs.transpose() * h[a] * frame_coeffs;
}

double ImmersionEval::alpha_contraction_norm(const Eigen::VectorXd& x_coeffs) const {
    // |alpha(X, .)|^2 = sum_a |A~_a x~|^2 in a g-orthonormal frame.
    Eigen::LLT<Eigen::MatrixXd> llt(metric);
    const Eigen::MatrixXd L = llt.matrixL();
    const Eigen::MatrixXd Linv = L.inverse();
    const Eigen::VectorXd xt = L.transpose() * x_coeffs;
    double sum = 0.0;
    for (const auto& ha : h) {
        const Eigen::MatrixXd At = Linv * ha * Linv.transpose();
        sum += (At * xt).squaredNorm();
    }
    return std::sqrt(sum);
}

namespace {

// Greedy Minkowski/Euclidean Gram-Schmidt completion of a spanning set to an
// orthonormal basis of its orthogonal complement.
std::vector<Eigen::VectorXd> complement_frame(Ambient amb,
                                              const std::vector<Eigen::VectorXd>& span_units,
                                              const std::vector<int>& span_signs,
                                              int ambient_dim, int count) {
    std::vector<Eigen::VectorXd> units = span_units;
    std::vector<int> signs = span_signs;
    std::vector<Eigen::VectorXd> normals;
    for (int round = 0; round < count; ++round) {
        Eigen::VectorXd best;
        double best_norm2 = -1.0;
        for (int c = 0; c < ambient_dim; ++c) {
            Eigen::VectorXd r = Eigen::VectorXd::Zero(ambient_dim);
            r[c] = 1.0;
            for (size_t k = 0; k < units.size(); ++k)
                r -= signs[k] * ambient_inner(amb, r, units[k]) * units[k];
            const double n2 = ambient_inner(amb, r, r);
            if (n2 > best_norm2) {
                best_norm2 = n2;
                best = r;
            }
        }
        if (best_norm2 < 1e-20)
            throw DegeneracyError("normal frame: degenerate complement");
        // Repeat the projection once for numerical orthogonality.
        for (size_t k = 0; k < units.size(); ++k)
            best -= signs[k] * ambient_inner(amb, best, units[k]) * units[k];
        best /= std::sqrt(ambient_inner(amb, best, best));
        units.push_back(best);
        signs.push_back(+1);
        normals.push_back(best);
    }
    return normals;
}

}  // namespace

ImmersionEval evaluate(const deriv::ParamMap& map, const Eigen::VectorXd& x, Ambient amb,
                       deriv::JetBackend backend) {
    const deriv::Jet2 jet = deriv::eval_jet2(map, x, backend);
    const int m = map.domain_dim();
    const int n_amb = map.ambient_dim();

    ImmersionEval ev;
    ev.ambient = amb;
    ev.m = m;
    ev.point = jet.value;
    ev.tangents.assign(jet.grad.begin(), jet.grad.end());

    const bool has_position_normal = (amb != Ambient::Euclidean);
    if (amb == Ambient::Hyperboloid) {
        const double c = lorentz::minkowski_norm2(ev.point);
        if (std::fabs(c + 1.0) > 1e-8)
            throw ModelError("evaluate: point off the hyperboloid, <x,x> = " + std::to_string(c));
    } else if (amb == Ambient::Sphere) {
        const double c = ev.point.squaredNorm();
        if (std::fabs(c - 1.0) > 1e-8)
            throw ModelError("evaluate: point off the unit sphere");
    }

    ev.metric.resize(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
            ev.metric(i, j) = ev.metric(j, i) = ambient_inner(amb, jet.grad[i], jet.grad[j]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ev.metric);
    const double eig_min = es.eigenvalues().minCoeff();
    const double eig_max = es.eigenvalues().maxCoeff();
    if (!(eig_min > kMetricDegeneracyRel * eig_max))
        throw DegeneracyError("evaluate: rank-deficient Jacobian (min/max metric eigenvalue " +
                              std::to_string(eig_min) + "/" + std::to_string(eig_max) + ")");
    ev.metric_inv = ev.metric.inverse();

    // Orthonormal basis of span(position, tangents) for the complement build.
    std::vector<Eigen::VectorXd> span_units;
    std::vector<int> span_signs;
    if (has_position_normal) {
        const double p2 = ambient_inner(amb, ev.point, ev.point);
        span_units.push_back(ev.point / std::sqrt(std::fabs(p2)));
        span_signs.push_back(p2 < 0 ? -1 : +1);
    }
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd r = jet.grad[i];
        for (size_t k = 0; k < span_units.size(); ++k)
            r -= span_signs[k] * ambient_inner(amb, r, span_units[k]) * span_units[k];
        const double n2 = ambient_inner(amb, r, r);
        if (n2 <= 0.0) throw DegeneracyError("evaluate: tangent span degenerate");
        span_units.push_back(r / std::sqrt(n2));
        span_signs.push_back(+1);
    }
    const int normal_count = n_amb - m - (has_position_normal ? 1 : 0);
    ev.normal_frame = complement_frame(amb, span_units, span_signs, n_amb, normal_count);

    // Second fundamental form: normal part of the coordinate second
    // derivatives after removing position and tangential components.
    ev.h.assign(normal_count, Eigen::MatrixXd::Zero(m, m));
    Eigen::LDLT<Eigen::MatrixXd> gsolve(ev.metric);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            Eigen::VectorXd w = jet.d2(i, j);
            if (amb == Ambient::Hyperboloid)
                w -= (-ambient_inner(amb, w, ev.point)) * ev.point;
            else if (amb == Ambient::Sphere)
                w -= ambient_inner(amb, w, ev.point) * ev.point;
            Eigen::VectorXd rhs(m);
            for (int k = 0; k < m; ++k) rhs[k] = ambient_inner(amb, w, jet.grad[k]);
            const Eigen::VectorXd c = gsolve.solve(rhs);
            for (int k = 0; k < m; ++k) w -= c[k] * jet.grad[k];
            for (int a = 0; a < normal_count; ++a)
                ev.h[a](i, j) = ev.h[a](j, i) = ambient_inner(amb, w, ev.normal_frame[a]);
        }
    }

    ev.mean_curvature.resize(normal_count);
    ev.alpha_norm2 = 0.0;
    for (int a = 0; a < normal_count; ++a) {
        const Eigen::MatrixXd gh = ev.metric_inv * ev.h[a];
        ev.mean_curvature[a] = gh.trace() / m;
        ev.alpha_norm2 += (gh * gh).trace();
    }
    ev.mean_curvature_norm = ev.mean_curvature.norm();
    return ev;
}

Eigen::MatrixXd metric_at(const deriv::ParamMap& map, const Eigen::VectorXd& x, Ambient amb) {
    const deriv::Jet2 jet = deriv::eval_jet2(map, x, deriv::JetBackend::ExactJet);
    const int m = map.domain_dim();
    Eigen::MatrixXd g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
            g(i, j) = g(j, i) = ambient_inner(amb, jet.grad[i], jet.grad[j]);
    return g;
}

NullityData nullity_space(const ImmersionEval& eval, double threshold) {
    const int m = eval.m;
    NullityData out;
    Eigen::LLT<Eigen::MatrixXd> llt(eval.metric);
    const Eigen::MatrixXd L = llt.matrixL();
    const Eigen::MatrixXd Linv = L.inverse();

    const int p = static_cast<int>(eval.h.size());
    if (p == 0) {
        out.nu = m;
        out.basis = Linv.transpose();
        out.singular_values = Eigen::VectorXd::Zero(m);
        out.residual = 0.0;
        return out;
    }
    Eigen::MatrixXd stacked(p * m, m);
    for (int a = 0; a < p; ++a)
        stacked.middleRows(a * m, m) = Linv * eval.h[a] * Linv.transpose();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    out.singular_values = svd.singularValues();
    const double smax = out.singular_values.maxCoeff();
    if (smax < 1e-14) {
        out.nu = m;
        out.basis = Linv.transpose();
        out.residual = smax;
        return out;
    }
    int nu = 0;
    for (int i = 0; i < m; ++i)
        if (out.singular_values[i] < threshold * smax) ++nu;
    out.nu = nu;
    out.basis.resize(m, nu);
    for (int k = 0; k < nu; ++k)
        out.basis.col(k) = Linv.transpose() * svd.matrixV().col(m - nu + k);
    out.residual = nu > 0 ? out.singular_values[m - nu] : out.singular_values[m - 1];
    return out;
}

double scalar_curvature_intrinsic(const deriv::ParamMap& map, const Eigen::VectorXd& x, Ambient amb) {
    chart::MetricField field = [&map, amb](const Eigen::VectorXd& y) {
        return metric_at(map, y, amb);
    };
    return chart::scalar_curvature_from_metric(field, x);
}

double scalar_curvature_gauss(const ImmersionEval& eval) {
    const double c = ambient_curvature(eval.ambient);
    const double m = eval.m;
    return c * m * (m - 1.0) + m * m * eval.mean_curvature_norm * eval.mean_curvature_norm -
           eval.alpha_norm2;
}

Eigen::MatrixXd shape_operator(const ImmersionEval& eval, const Eigen::VectorXd& xi) {
    const double scale = xi.norm();
    for (const auto& t : eval.tangents)
        if (std::fabs(ambient_inner(eval.ambient, xi, t)) > 1e-8 * scale * t.norm())
            throw PreconditionError("shape_operator: xi not orthogonal to tangents");
    if (eval.ambient != Ambient::Euclidean &&
        std::fabs(ambient_inner(eval.ambient, xi, eval.point)) > 1e-8 * scale)
        throw PreconditionError("shape_operator: xi not orthogonal to position");

    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(eval.m, eval.m);
    for (size_t a = 0; a < eval.normal_frame.size(); ++a)
        b += ambient_inner(eval.ambient, eval.normal_frame[a], xi) * eval.h[a];
    return eval.metric_inv * b;
}

FrameField coordinate_orthonormal_frame(const deriv::ParamMap& map, Ambient amb) {
    FrameField f;
    f.coeffs = [map, amb](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
        const Eigen::MatrixXd g = metric_at(map, x, amb);
        // Columns of L^{-T} are the Gram-Schmidt coefficients of the
        // coordinate fields in order.
        Eigen::LLT<Eigen::MatrixXd> llt(g);
        if (llt.info() != Eigen::Success)
            throw DegeneracyError("coordinate_orthonormal_frame: metric not positive definite");
        Eigen::MatrixXd L = llt.matrixL();
        return L.transpose().inverse();
    };
    return f;
}

}  // namespace hypercone::immersion
