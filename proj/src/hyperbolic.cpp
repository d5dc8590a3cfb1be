#include "hypercone/hyperbolic.hpp"

#include <cmath>

namespace hypercone::hyperbolic {

using lorentz::minkowski_dot;
using lorentz::minkowski_norm2;

HPoint HPoint::from(Vec x) {
    if (x.size() < 2) throw DimensionError("HPoint: need ambient dimension >= 2");
    const double n2 = minkowski_norm2(x);
    if (n2 >= 0.0) throw ModelError("HPoint: vector not timelike");
    if (x[0] <= 0.0) throw ModelError("HPoint: not on the upper sheet");
    if (std::fabs(n2 + 1.0) > 1e-6)
        throw ModelError("HPoint: too far off the hyperboloid, <x,x> = " + std::to_string(n2));
    x /= std::sqrt(-n2);
    return HPoint(std::move(x));
}

Vec project_to_hyperboloid(const Vec& x) {
    const double n2 = minkowski_norm2(x);
    if (n2 >= 0.0 || x[0] <= 0.0)
        throw ModelError("project_to_hyperboloid: vector not timelike future");
    return x / std::sqrt(-n2);
}

HTangent make_tangent(const HPoint& p, const Vec& v) {
    if (v.size() != p.coords().size()) throw DimensionError("make_tangent: dimension mismatch");
    if (std::fabs(minkowski_dot(p.coords(), v)) > 1e-10 * (1.0 + v.norm()))
        throw PreconditionError("make_tangent: vector not tangent at base point");
    return HTangent{p, v};
}

HPoint exp_point(const HPoint& p, const Vec& v) {
    if (v.size() != p.coords().size()) throw DimensionError("exp_point: dimension mismatch");
    if (std::fabs(minkowski_dot(p.coords(), v)) > 1e-8 * (1.0 + v.norm()))
        throw PreconditionError("exp_point: vector not tangent at base point");
    const double n2 = minkowski_norm2(v);
    if (n2 < -1e-12) throw PreconditionError("exp_point: tangent vector not spacelike");
    const double s = std::sqrt(std::max(n2, 0.0));
    if (s == 0.0) return p;
    const double sinc = s > 1e-8 ? std::sinh(s) / s : 1.0 + s * s / 6.0;
    return HPoint::from(std::cosh(s) * p.coords() + sinc * v);
}

double dist(const HPoint& p, const HPoint& q) {
    const double c = -minkowski_dot(p.coords(), q.coords());
    if (c < 1.0 - 1e-9) throw ModelError("dist: product outside model range");
    return std::acosh(std::max(c, 1.0));
}

UmbilicalInclusion::UmbilicalInclusion(UmbilicKind kind, double param, int n, int codim)
    : kind_(kind), param_(param), n_(n), codim_(codim) {
    if (codim < 1 || n - codim < 1)
        throw PreconditionError("UmbilicalInclusion: need 1 <= codim <= n-1");
}

UmbilicalInclusion UmbilicalInclusion::equidistant(double d, int n, int codim) {
    if (!(d > 0.0)) throw PreconditionError("equidistant: need d > 0");
    return UmbilicalInclusion(UmbilicKind::Equidistant, d, n, codim);
}
UmbilicalInclusion UmbilicalInclusion::horosphere(int n, int codim) {
    return UmbilicalInclusion(UmbilicKind::Horosphere, 0.0, n, codim);
}
UmbilicalInclusion UmbilicalInclusion::geodesic_sphere(double rho, int n, int codim) {
    if (!(rho > 0.0)) throw PreconditionError("geodesic_sphere: need rho > 0");
    return UmbilicalInclusion(UmbilicKind::GeodesicSphere, rho, n, codim);
}
UmbilicalInclusion UmbilicalInclusion::totally_geodesic(int n, int codim) {
    return UmbilicalInclusion(UmbilicKind::TotallyGeodesic, 0.0, n, codim);
}

int UmbilicalInclusion::model_coord_dim() const {
    switch (kind_) {
        case UmbilicKind::Equidistant:
        case UmbilicKind::TotallyGeodesic:
        case UmbilicKind::GeodesicSphere:
            return model_dim() + 1;
        case UmbilicKind::Horosphere:
            return model_dim();
    }
    return 0;
}

immersion::Ambient UmbilicalInclusion::model_ambient() const {
    switch (kind_) {
        case UmbilicKind::Equidistant:
        case UmbilicKind::TotallyGeodesic:
            return immersion::Ambient::Hyperboloid;
        case UmbilicKind::Horosphere:
            return immersion::Ambient::Euclidean;
        case UmbilicKind::GeodesicSphere:
            return immersion::Ambient::Sphere;
    }
    return immersion::Ambient::Euclidean;
}

double UmbilicalInclusion::curvature() const {
    switch (kind_) {
        case UmbilicKind::Equidistant: {
            const double c = std::cosh(param_);
            return -1.0 / (c * c);
        }
        case UmbilicKind::Horosphere:
            return 0.0;
        case UmbilicKind::GeodesicSphere: {
            const double s = std::sinh(param_);
            return 1.0 / (s * s);
        }
        case UmbilicKind::TotallyGeodesic:
            return -1.0;
    }
    return 0.0;
}

double UmbilicalInclusion::mean_curvature_norm() const {
    switch (kind_) {
        case UmbilicKind::Equidistant: return std::tanh(param_);
        case UmbilicKind::Horosphere: return 1.0;
        case UmbilicKind::GeodesicSphere: return 1.0 / std::tanh(param_);
        case UmbilicKind::TotallyGeodesic: return 0.0;
    }
    return 0.0;
}

std::pair<HPoint, std::vector<Vec>> UmbilicalInclusion::include(const Vec& model_pt) const {
    if (model_pt.size() != model_coord_dim())
        throw DimensionError("include: model point dimension mismatch");
    switch (kind_) {
        case UmbilicKind::Equidistant:
        case UmbilicKind::TotallyGeodesic: {
            double n2 = -model_pt[0] * model_pt[0] + model_pt.tail(model_pt.size() - 1).squaredNorm();
            if (std::fabs(n2 + 1.0) > 1e-8 || model_pt[0] <= 0.0)
                throw PreconditionError("include: model point off the intrinsic hyperboloid");
            break;
        }
        case UmbilicKind::GeodesicSphere:
            if (std::fabs(model_pt.squaredNorm() - 1.0) > 1e-8)
                throw PreconditionError("include: model point off the unit sphere");
            break;
        case UmbilicKind::Horosphere:
            break;
    }
    Vec pt(ambient_coord_dim());
    include_point<double>(std::span<const double>(model_pt.data(), model_pt.size()),
                          std::span<double>(pt.data(), pt.size()));
    std::vector<Vec> frame;
    for (int j = 0; j < codim_; ++j) {
        Vec eta(ambient_coord_dim());
        normal_at<double>(j, std::span<const double>(model_pt.data(), model_pt.size()),
                          std::span<double>(eta.data(), eta.size()));
        frame.push_back(std::move(eta));
    }
    return {HPoint::from(std::move(pt)), std::move(frame)};
}

deriv::ParamMap UmbilicalInclusion::chart_map(const deriv::Box& box) const {
    const UmbilicalInclusion inc = *this;
    const int k = model_dim();
    const int mid = model_coord_dim();
    const int out_dim = ambient_coord_dim();
    return deriv::make_param_map(k, out_dim, box, [inc, mid](auto in, auto out) {
        using S = std::remove_cvref_t<decltype(in[0])>;
        std::vector<S> model(mid);
        inc.model_chart<S>(in, std::span<S>(model.data(), model.size()));
        inc.include_point<S>(std::span<const S>(model.data(), model.size()), out);
    });
}

deriv::ParamMap UmbilicalInclusion::model_chart_map(const deriv::Box& box) const {
    const UmbilicalInclusion inc = *this;
    const int k = model_dim();
    const int mid = model_coord_dim();
    return deriv::make_param_map(k, mid, box, [inc](auto in, auto out) {
        using S = std::remove_cvref_t<decltype(in[0])>;
        inc.model_chart<S>(in, out);
    });
}

UmbilicReport umbilic_check(const UmbilicalInclusion& inc, int grid_per_axis,
                            double chart_halfwidth) {
    const int k = inc.model_dim();
    const deriv::Box box = deriv::Box::cube(k, chart_halfwidth);
    const deriv::ParamMap chart = inc.chart_map(box);
    const deriv::ParamMap model_chart = inc.model_chart_map(box);
    const double hnorm = inc.mean_curvature_norm();
    const double c = inc.curvature();

    UmbilicReport rep;
    std::vector<int> idx(k, 0);
    const int total = static_cast<int>(std::pow(grid_per_axis, k));
    for (int flat = 0; flat < total; ++flat) {
        Eigen::VectorXd s(k);
        int rem = flat;
        for (int i = 0; i < k; ++i) {
            const int gi = rem % grid_per_axis;
            rem /= grid_per_axis;
            s[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * (gi + 0.5) / grid_per_axis;
        }
        const auto ev = immersion::evaluate(chart, s, immersion::Ambient::Hyperboloid);
        const Eigen::VectorXd model_pt = model_chart(s);
        const auto [pt, frame] = inc.include(model_pt);

        for (int j = 0; j < inc.codim(); ++j) {
            const Eigen::MatrixXd a = immersion::shape_operator(ev, frame[j]);
            if (j == 0) {
                const Eigen::MatrixXd dev = a - hnorm * Eigen::MatrixXd::Identity(k, k);
                rep.max_shape_dev = std::max(rep.max_shape_dev, dev.cwiseAbs().maxCoeff());
            } else {
                rep.max_extra_shape = std::max(rep.max_extra_shape, a.cwiseAbs().maxCoeff());
            }
            for (int l = 0; l <= j; ++l) {
                const double want = (l == j) ? 1.0 : 0.0;
                rep.max_frame_dev =
                    std::max(rep.max_frame_dev,
                             std::fabs(minkowski_dot(frame[j], frame[l]) - want));
            }
            rep.max_frame_dev = std::max(
                rep.max_frame_dev, std::fabs(minkowski_dot(frame[j], pt.coords())));
            for (const auto& t : ev.tangents)
                rep.max_frame_dev =
                    std::max(rep.max_frame_dev, std::fabs(minkowski_dot(frame[j], t)));
        }
        const double s_gauss = immersion::scalar_curvature_gauss(ev);
        if (k >= 2)
            rep.max_curvature_dev =
                std::max(rep.max_curvature_dev, std::fabs(s_gauss / (k * (k - 1.0)) - c));
        ++rep.samples;
    }
    return rep;
}

}  // namespace hypercone::hyperbolic
