#include "hypercone/cone.hpp"

#include <cmath>
#include <sstream>

#include "hypercone/lorentz.hpp"

namespace hypercone::cone {

using hyperbolic::UmbilicalInclusion;
using immersion::Ambient;

namespace {

template <class S>
S minkowski_dot_s(std::span<const S> x, std::span<const S> y) {
    S acc = x[1] * y[1];
    for (size_t i = 2; i < x.size(); ++i) acc += x[i] * y[i];
    acc -= x[0] * y[0];
    return acc;
}

template <class S>
void eval_surface(const deriv::ParamMap& map, std::span<const S> in, std::span<S> out) {
    if constexpr (std::is_same_v<S, double>) {
        map.eval_raw(in, out);
    } else {
        map.eval_jets(in, out);
    }
}

deriv::Box combined_box(const deriv::Box& surf, const deriv::Box& t) {
    deriv::Box box;
    box.lo.resize(surf.dim() + t.dim());
    box.hi.resize(surf.dim() + t.dim());
    box.lo << surf.lo, t.lo;
    box.hi << surf.hi, t.hi;
    return box;
}

}  // namespace

SurfaceSpec surface_catalog(const std::string& name, const SurfaceParams& params,
                            int model_coord_dim) {
    SurfaceSpec spec;
    spec.name = name;
    const int md = model_coord_dim;

    if (name == "totally_geodesic_h2") {
        if (md < 3) throw PreconditionError("totally_geodesic_h2: model dimension too small");
        spec.model_ambient = Ambient::Hyperboloid;
        spec.claimed_minimal = true;
        spec.claimed_totally_geodesic = true;
        spec.map = deriv::make_param_map(2, md, deriv::Box::cube(2, 2.0), [md](auto in, auto out) {
            using std::cosh;
            using std::sinh;
            out[0] = cosh(in[0]) * cosh(in[1]);
            out[1] = cosh(in[0]) * sinh(in[1]);
            out[2] = sinh(in[0]);
            for (int i = 3; i < md; ++i) out[i] = 0.0 * in[0];
        });
        return spec;
    }

    if (name == "helicoid_h3" || name == "perturbed_nonminimal") {
        if (md < 4) throw PreconditionError(name + ": model dimension too small");
        const double a = params.a, b = params.b;
        const double eps = name == "perturbed_nonminimal" ? params.eps : 0.0;
        spec.model_ambient = Ambient::Hyperboloid;
        spec.claimed_minimal = (eps == 0.0);
        spec.claimed_totally_geodesic = (eps == 0.0 && a * b == 0.0);
        spec.map =
            deriv::make_param_map(2, md, deriv::Box::cube(2, 2.0), [md, a, b, eps](auto in, auto out) {
                using S = std::remove_cvref_t<decltype(in[0])>;
                using std::cosh;
                using std::sinh;
                using std::sin;
                using std::cos;
                using std::sqrt;
                std::vector<S> f(md);
                f[0] = cosh(in[0]) * cosh(a * in[1]);
                f[1] = cosh(in[0]) * sinh(a * in[1]);
                f[2] = sinh(in[0]) * cos(b * in[1]);
                f[3] = sinh(in[0]) * sin(b * in[1]);
                for (int i = 4; i < md; ++i) f[i] = 0.0 * in[0];
                if (eps != 0.0) {
                    f[3] += eps * sin(in[0] + 0.7 * in[1]);
                    S n2 = minkowski_dot_s<S>(std::span<const S>(f.data(), f.size()),
                                              std::span<const S>(f.data(), f.size()));
                    S inv = 1.0 / sqrt(-n2);
                    for (int i = 0; i < md; ++i) f[i] = f[i] * inv;
                }
                for (int i = 0; i < md; ++i) out[i] = f[i];
            });
        return spec;
    }

    if (name == "euclidean_helicoid") {
        if (md < 3) throw PreconditionError("euclidean_helicoid: model dimension too small");
        const double a = params.a;
        spec.model_ambient = Ambient::Euclidean;
        spec.claimed_minimal = true;
        spec.map = deriv::make_param_map(2, md, deriv::Box::cube(2, 2.0), [md, a](auto in, auto out) {
            using std::sin;
            using std::cos;
            out[0] = in[0] * cos(in[1]);
            out[1] = in[0] * sin(in[1]);
            out[2] = a * in[1];
            for (int i = 3; i < md; ++i) out[i] = 0.0 * in[0];
        });
        return spec;
    }

    if (name == "sphere_patch") {
        // Totally geodesic S^2 inside the round model, as a graph chart.
        if (md < 3) throw PreconditionError("sphere_patch: model dimension too small");
        spec.model_ambient = Ambient::Sphere;
        spec.claimed_minimal = true;
        spec.claimed_totally_geodesic = true;
        spec.map = deriv::make_param_map(2, md, deriv::Box::cube(2, 0.5), [md](auto in, auto out) {
            using std::sqrt;
            out[0] = in[0];
            out[1] = in[1];
            out[2] = sqrt(1.0 - in[0] * in[0] - in[1] * in[1]);
            for (int i = 3; i < md; ++i) out[i] = 0.0 * in[0];
        });
        return spec;
    }

    if (name == "complex_curve") {
        if (md < 4) throw PreconditionError("complex_curve: model dimension too small");
        spec.model_ambient = Ambient::Euclidean;
        spec.claimed_minimal = true;
        spec.map = deriv::make_param_map(2, md, deriv::Box::cube(2, 1.5), [md](auto in, auto out) {
            out[0] = in[0];
            out[1] = in[1];
            out[2] = in[0] * in[0] - in[1] * in[1];
            out[3] = 2.0 * in[0] * in[1];
            for (int i = 4; i < md; ++i) out[i] = 0.0 * in[0];
        });
        return spec;
    }

    throw PreconditionError("surface_catalog: unknown surface '" + name + "'");
}

ConeSpec make_cone(SurfaceSpec surface, const UmbilicalInclusion& inclusion,
                   const deriv::Box& t_box) {
    if (surface.map.ambient_dim() != inclusion.model_coord_dim())
        throw DimensionError("make_cone: surface does not land in the inclusion's model (" +
                             std::to_string(surface.map.ambient_dim()) + " vs " +
                             std::to_string(inclusion.model_coord_dim()) + " coordinates)");
    if (surface.model_ambient != inclusion.model_ambient())
        throw PreconditionError("make_cone: surface model kind does not match the inclusion");
    if (t_box.dim() != inclusion.codim())
        throw DimensionError("make_cone: fiber box dimension must equal the codimension");
    ConeSpec spec{std::move(surface), inclusion, inclusion.codim(), t_box};
    return spec;
}

deriv::ParamMap cone_map(const ConeSpec& spec) {
    const deriv::ParamMap surf = spec.surface.map;
    const UmbilicalInclusion inc = spec.inclusion;
    const int nu = spec.nu;
    const int mdim = inc.model_coord_dim();
    const int adim = inc.ambient_coord_dim();
    const deriv::Box box = combined_box(surf.box(), spec.t_box);

    return deriv::make_param_map(2 + nu, adim, box, [surf, inc, nu, mdim, adim](auto in, auto out) {
        using S = std::remove_cvref_t<decltype(in[0])>;
        using std::cosh;
        using std::sinh;
        using std::sqrt;
        std::vector<S> model(mdim), f(adim), eta(adim);
        eval_surface<S>(surf, in.first(2), std::span<S>(model.data(), model.size()));
        inc.include_point<S>(std::span<const S>(model.data(), model.size()),
                             std::span<S>(f.data(), f.size()));
        for (int j = 0; j < nu; ++j) {
            inc.normal_at<S>(j, std::span<const S>(model.data(), model.size()),
                             std::span<S>(eta.data(), eta.size()));
            const S c = cosh(in[2 + j]);
            const S s = sinh(in[2 + j]);
            for (int i = 0; i < adim; ++i) f[i] = c * f[i] + s * eta[i];
        }
        // Drift control: radial reprojection onto the sheet.
        S n2 = minkowski_dot_s<S>(std::span<const S>(f.data(), f.size()),
                                  std::span<const S>(f.data(), f.size()));
        S inv = 1.0 / sqrt(-n2);
        for (int i = 0; i < adim; ++i) out[i] = f[i] * inv;
    });
}

deriv::ParamMap composed_surface_map(const ConeSpec& spec) {
    const deriv::ParamMap surf = spec.surface.map;
    const UmbilicalInclusion inc = spec.inclusion;
    const int mdim = inc.model_coord_dim();
    const int adim = inc.ambient_coord_dim();
    return deriv::make_param_map(2, adim, surf.box(), [surf, inc, mdim](auto in, auto out) {
        using S = std::remove_cvref_t<decltype(in[0])>;
        std::vector<S> model(mdim);
        eval_surface<S>(surf, in, std::span<S>(model.data(), model.size()));
        inc.include_point<S>(std::span<const S>(model.data(), model.size()), out);
    });
}

double radius_r(const ConeSpec& spec, const Eigen::VectorXd& t) {
    if (t.size() != spec.nu) throw DimensionError("radius_r: fiber dimension mismatch");
    const double hnorm = spec.inclusion.mean_curvature_norm();
    double h1 = 1.0;
    for (int k = 1; k < spec.nu; ++k) h1 *= std::cosh(t[k]);
    return h1 * (std::cosh(t[0]) - hnorm * std::sinh(t[0]));
}

Eigen::MatrixXd cone_metric_closed(const ConeSpec& spec, const Eigen::Vector2d& x,
                                   const Eigen::VectorXd& t) {
    const double r = radius_r(spec, t);
    if (std::fabs(r) < 1e-12) throw DegeneracyError("cone_metric_closed: r = 0");
    const Eigen::MatrixXd g_surf =
        immersion::metric_at(composed_surface_map(spec), x, Ambient::Hyperboloid);
    const int m = spec.dim();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
    g.topLeftCorner(2, 2) = r * r * g_surf;
    for (int j = 0; j < spec.nu; ++j) {
        double hj = 1.0;
        for (int k = j + 1; k < spec.nu; ++k) hj *= std::cosh(t[k]);
        g(2 + j, 2 + j) = hj * hj;
    }
    return g;
}

double surface_alpha_norm2(const ConeSpec& spec, const Eigen::Vector2d& x) {
    const auto ev = immersion::evaluate(composed_surface_map(spec), x, Ambient::Hyperboloid);
    const Eigen::VectorXd model_pt = spec.surface.map(x);
    std::vector<Eigen::VectorXd> etas;
    for (int j = 0; j < spec.inclusion.codim(); ++j) {
        Eigen::VectorXd eta(spec.ambient_coord_dim());
        spec.inclusion.normal_at<double>(
            j, std::span<const double>(model_pt.data(), model_pt.size()),
            std::span<double>(eta.data(), eta.size()));
        etas.push_back(std::move(eta));
    }
    // Remove the inclusion-normal component of alpha, keep the model part.
    std::array<std::array<Eigen::VectorXd, 2>, 2> ag;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Eigen::VectorXd v = ev.alpha_vec(i, j);
            for (const auto& eta : etas) v -= lorentz::minkowski_dot(v, eta) * eta;
            ag[i][j] = std::move(v);
        }
    const Eigen::MatrixXd ginv = ev.metric_inv;
    double sum = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    sum += ginv(i, k) * ginv(j, l) * lorentz::minkowski_dot(ag[i][j], ag[k][l]);
    return sum;
}

double scalar_curvature_formula(const ConeSpec& spec, const Eigen::Vector2d& x,
                                const Eigen::VectorXd& t) {
    const double r = radius_r(spec, t);
    if (std::fabs(r) < 1e-12) throw DegeneracyError("scalar_curvature_formula: r = 0");
    const double m = spec.dim();
    return -m * (m - 1.0) - surface_alpha_norm2(spec, x) / (r * r);
}

ImmersionCriterion immersion_criterion(const ConeSpec& spec) {
    ImmersionCriterion crit;
    const double hnorm = spec.inclusion.mean_curvature_norm();
    if (hnorm <= 1.0) return crit;
    crit.immersion_everywhere = false;
    crit.degenerate_t1 = std::atanh(1.0 / hnorm);
    return crit;
}

Eigen::VectorXd fiber_normal_vector(const ConeSpec& spec, const Eigen::Vector2d& x,
                                    const Eigen::VectorXd& t) {
    if (t.size() != spec.nu) throw DimensionError("fiber_normal_vector: fiber dimension mismatch");
    // Coefficient recursion over the basis (p, eta_1..eta_nu).
    Eigen::VectorXd c = Eigen::VectorXd::Zero(spec.nu + 1);
    c[0] = 1.0;
    for (int j = 0; j < spec.nu; ++j) {
        c *= std::cosh(t[j]);
        c[1 + j] += std::sinh(t[j]);
    }
    const double b_norm = c.tail(spec.nu).norm();
    const double s = std::acosh(std::max(c[0], 1.0));

    const Eigen::VectorXd model_pt = spec.surface.map(x);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(spec.ambient_coord_dim());
    if (b_norm < 1e-300) return w;
    for (int j = 0; j < spec.nu; ++j) {
        Eigen::VectorXd eta(spec.ambient_coord_dim());
        spec.inclusion.normal_at<double>(
            j, std::span<const double>(model_pt.data(), model_pt.size()),
            std::span<double>(eta.data(), eta.size()));
        w += (s * c[1 + j] / b_norm) * eta;
    }
    return w;
}

MinimalityReport check_minimal(const ConeSpec& spec, int grid_per_axis) {
    MinimalityReport rep;
    const deriv::ParamMap surf = spec.surface.map;
    const deriv::ParamMap composed = composed_surface_map(spec);
    const deriv::Box& box = surf.box();
    for (int gi = 0; gi < grid_per_axis; ++gi)
        for (int gj = 0; gj < grid_per_axis; ++gj) {
            Eigen::Vector2d x;
            x[0] = box.lo[0] + (box.hi[0] - box.lo[0]) * (gi + 0.5) / grid_per_axis;
            x[1] = box.lo[1] + (box.hi[1] - box.lo[1]) * (gj + 0.5) / grid_per_axis;

            const auto model_ev = immersion::evaluate(surf, x, spec.surface.model_ambient);
            rep.max_model_mean_curvature =
                std::max(rep.max_model_mean_curvature, model_ev.mean_curvature_norm);

            const auto ev = immersion::evaluate(composed, x, Ambient::Hyperboloid);
            Eigen::VectorXd hvec = Eigen::VectorXd::Zero(spec.ambient_coord_dim());
            for (size_t a = 0; a < ev.normal_frame.size(); ++a)
                hvec += ev.mean_curvature[a] * ev.normal_frame[a];
            const Eigen::VectorXd model_pt = surf(x);
            for (int j = 0; j < spec.inclusion.codim(); ++j) {
                Eigen::VectorXd eta(spec.ambient_coord_dim());
                spec.inclusion.normal_at<double>(
                    j, std::span<const double>(model_pt.data(), model_pt.size()),
                    std::span<double>(eta.data(), eta.size()));
                hvec -= lorentz::minkowski_dot(hvec, eta) * eta;
            }
            const double proj = std::sqrt(std::max(lorentz::minkowski_norm2(hvec), 0.0));
            rep.max_projected_mean_curvature = std::max(rep.max_projected_mean_curvature, proj);
            ++rep.samples;
        }
    return rep;
}

std::string cone_config_text(const ConeSpec& spec, const SurfaceParams& params) {
    std::ostringstream os;
    os << "surface=" << spec.surface.name << "\n";
    os << "a=" << params.a << "\n";
    os << "b=" << params.b << "\n";
    os << "eps=" << params.eps << "\n";
    switch (spec.inclusion.kind()) {
        case hyperbolic::UmbilicKind::Equidistant:
            os << "inclusion=equidistant\nd=" << spec.inclusion.parameter() << "\n";
            break;
        case hyperbolic::UmbilicKind::Horosphere:
            os << "inclusion=horosphere\n";
            break;
        case hyperbolic::UmbilicKind::GeodesicSphere:
            os << "inclusion=geodesic-sphere\nrho=" << spec.inclusion.parameter() << "\n";
            break;
        case hyperbolic::UmbilicKind::TotallyGeodesic:
            os << "inclusion=totally-geodesic\n";
            break;
    }
    os << "n=" << spec.inclusion.space_dim() << "\n";
    os << "nu=" << spec.nu << "\n";
    os << "t-min=" << spec.t_box.lo[0] << "\n";
    os << "t-max=" << spec.t_box.hi[0] << "\n";
    return os.str();
}

}  // namespace hypercone::cone
