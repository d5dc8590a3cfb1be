#include "hypercone/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "hypercone/gaussmap.hpp"
#include "hypercone/nullflow.hpp"
#include "hypercone/splitting.hpp"

namespace hypercone::suite {

using cone::ConeSpec;
using hyperbolic::UmbilicalInclusion;
using immersion::Ambient;

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", x);
    return buf;
}

// Least-squares slope of y against t.
double fit_slope(const std::vector<double>& t, const std::vector<double>& y) {
    const double n = static_cast<double>(t.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    return (n * sty - st * sy) / (n * stt - st * st);
}

struct Collector {
    const SuiteConfig& cfg;
    std::vector<CheckRecord>& out;

    void add(const std::string& name, const std::string& ref, double residual, double tol,
             int samples, const std::string& note = "", bool expected_fail = false) {
        CheckRecord rec;
        rec.name = name;
        rec.ref = ref;
        rec.residual = residual;
        auto it = cfg.tol_override.find(name);
        rec.tolerance = it != cfg.tol_override.end() ? it->second : tol;
        rec.samples = samples;
        rec.expected_fail = expected_fail;
        rec.note = note;
        if (expected_fail)
            rec.status = residual > rec.tolerance ? "xfail-pass" : "fail";
        else
            rec.status = residual <= rec.tolerance ? "pass" : "fail";
        out.push_back(std::move(rec));
    }

    void skip(const std::string& name, const std::string& ref, const std::string& reason) {
        CheckRecord rec;
        rec.name = name;
        rec.ref = ref;
        rec.status = "skip";
        rec.note = reason;
        out.push_back(std::move(rec));
    }
};

deriv::Box shrink(const deriv::Box& box, double factor) {
    deriv::Box s = box;
    for (int i = 0; i < box.dim(); ++i) {
        const double c = 0.5 * (box.lo[i] + box.hi[i]);
        const double half = 0.5 * (box.hi[i] - box.lo[i]) * factor;
        s.lo[i] = c - half;
        s.hi[i] = c + half;
    }
    return s;
}

Eigen::VectorXd grid_point(const deriv::Box& box, const std::vector<int>& idx, int per_axis) {
    Eigen::VectorXd x(box.dim());
    for (int i = 0; i < box.dim(); ++i)
        x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * (idx[i] + 0.5) / per_axis;
    return x;
}

// Row-major sweep over a box grid.
template <class F>
void for_grid(const deriv::Box& box, int per_axis, F&& f) {
    const int dims = box.dim();
    std::vector<int> idx(dims, 0);
    const long total = static_cast<long>(std::pow(per_axis, dims));
    for (long flat = 0; flat < total; ++flat) {
        long rem = flat;
        for (int i = 0; i < dims; ++i) {
            idx[i] = static_cast<int>(rem % per_axis);
            rem /= per_axis;
        }
        f(grid_point(box, idx, per_axis));
    }
}

std::vector<Eigen::VectorXd> seeded_points(const deriv::Box& box, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        Eigen::VectorXd x(box.dim());
        for (int i = 0; i < box.dim(); ++i)
            x[i] = std::uniform_real_distribution<double>(box.lo[i], box.hi[i])(rng);
        pts.push_back(std::move(x));
    }
    return pts;
}

deriv::Box fiber_box(const SuiteConfig& cfg, int nu) {
    deriv::Box box;
    box.lo = Eigen::VectorXd::Constant(nu, std::min(cfg.t_min, -3.0) - 0.5);
    box.hi = Eigen::VectorXd::Constant(nu, std::max(cfg.t_max, 3.0) + 0.5);
    return box;
}

deriv::Box sample_box(const ConeSpec& spec, const SuiteConfig& cfg) {
    deriv::Box surf = shrink(spec.surface.map.box(), 0.75);
    deriv::Box box;
    box.lo.resize(2 + spec.nu);
    box.hi.resize(2 + spec.nu);
    box.lo.head(2) = surf.lo;
    box.hi.head(2) = surf.hi;
    box.lo.tail(spec.nu).setConstant(cfg.t_min);
    box.hi.tail(spec.nu).setConstant(cfg.t_max);
    // The cone is defined on the open set where G immerses; keep samples
    // clear of the degenerate fiber time when there is one.
    const auto crit = cone::immersion_criterion(spec);
    if (crit.degenerate_t1)
        box.hi[2] = std::min(box.hi[2], *crit.degenerate_t1 - 0.25);
    return box;
}

ConeSpec build_cone(const SuiteConfig& cfg, const std::string& surface,
                    const std::string& inclusion) {
    UmbilicalInclusion inc = [&]() {
        if (inclusion == "equidistant") return UmbilicalInclusion::equidistant(cfg.d, cfg.n, cfg.nu);
        if (inclusion == "horosphere") return UmbilicalInclusion::horosphere(cfg.n, cfg.nu);
        if (inclusion == "geodesic-sphere")
            return UmbilicalInclusion::geodesic_sphere(cfg.rho, cfg.n, cfg.nu);
        if (inclusion == "totally-geodesic")
            return UmbilicalInclusion::totally_geodesic(cfg.n, cfg.nu);
        throw DomainError("unknown inclusion '" + inclusion + "'");
    }();

    const cone::SurfaceParams params{cfg.a, cfg.b, cfg.eps};
    std::string catalog_name;
    if (surface == "helicoid") {
        catalog_name = inc.model_ambient() == Ambient::Hyperboloid ? "helicoid_h3"
                       : inc.model_ambient() == Ambient::Euclidean ? "euclidean_helicoid"
                                                                   : "sphere_patch";
    } else if (surface == "totally-geodesic") {
        catalog_name = "totally_geodesic_h2";
    } else if (surface == "euclidean-helicoid") {
        catalog_name = "euclidean_helicoid";
    } else if (surface == "complex-curve") {
        catalog_name = "complex_curve";
    } else if (surface == "sphere-patch") {
        catalog_name = "sphere_patch";
    } else if (surface == "perturbed") {
        catalog_name = "perturbed_nonminimal";
    } else if (surface == "helicoid_h3" || surface == "totally_geodesic_h2" ||
               surface == "euclidean_helicoid" || surface == "complex_curve" ||
               surface == "sphere_patch" || surface == "perturbed_nonminimal") {
        catalog_name = surface;  // catalog names pass through
    } else {
        throw DomainError("unknown surface '" + surface + "'");
    }
    return cone::make_cone(cone::surface_catalog(catalog_name, params, inc.model_coord_dim()),
                           inc, fiber_box(cfg, inc.codim()));
}

// ---------------------------------------------------------------------------
// cone-geometry suite

void run_cone_geometry(const SuiteConfig& cfg, Collector& col) {
    const ConeSpec spec = cone_from_config(cfg);
    const auto map = cone::cone_map(spec);
    const auto surf_h = cone::composed_surface_map(spec);
    const deriv::Box samples = sample_box(spec, cfg);

    double max_constraint = 0.0, max_h = 0.0, max_fiber = 0.0, max_metric = 0.0;
    double max_exp_dev = 0.0, max_nu_dev = 0.0;
    int count = 0;
    for_grid(samples, cfg.grid, [&](const Eigen::VectorXd& xt) {
        const Eigen::VectorXd p = map(xt);
        max_constraint = std::max(max_constraint,
                                  std::fabs(lorentz::minkowski_norm2(p) + 1.0) /
                                      (1.0 + p.squaredNorm()));
        const auto ev = immersion::evaluate(map, xt);
        max_h = std::max(max_h, ev.mean_curvature_norm);

        Eigen::VectorXd dt = Eigen::VectorXd::Zero(xt.size());
        dt[2] = 1.0;
        max_fiber = std::max(max_fiber, ev.alpha_contraction_norm(dt));
        // Totally geodesic generators give totally geodesic cones with full
        // nullity; otherwise the index is exactly the fiber dimension.
        const int expected_nu =
            spec.surface.claimed_totally_geodesic ? spec.dim() : spec.nu;
        const auto nd = immersion::nullity_space(ev);
        max_nu_dev = std::max(max_nu_dev, std::fabs(double(nd.nu - expected_nu)));

        const Eigen::MatrixXd closed =
            cone::cone_metric_closed(spec, xt.head<2>(), xt.tail(spec.nu));
        max_metric = std::max(max_metric, (closed - ev.metric).cwiseAbs().maxCoeff() /
                                              closed.cwiseAbs().maxCoeff());

        const Eigen::VectorXd w = cone::fiber_normal_vector(spec, xt.head<2>(), xt.tail(spec.nu));
        const auto q = hyperbolic::exp_point(hyperbolic::HPoint::from(surf_h(xt.head<2>())), w);
        max_exp_dev =
            std::max(max_exp_dev, (q.coords() - p).norm() / (1.0 + p.norm()));
        ++count;
    });
    col.add("cone/hyperboloid-constraint", "ambient-model", max_constraint, 1e-12, count);
    col.add("cone/exp-agreement", "cone-exp-def", max_exp_dev, 1e-10, count);
    col.add("cone/minimality", "cone-minimality", max_h, 1e-6, count);
    col.add("cone/nullity-index", "fiber-nullity", max_nu_dev, 0.5, count,
            "index of relative nullity minus nu over the grid");
    col.add("cone/nullity-fiber-residual", "fiber-nullity", max_fiber, 1e-8, count);
    col.add("cone/metric-closed-form", "cone-metric", max_metric, 1e-8, count);

    // Surface minimality feeding the construction.
    const auto min_rep = cone::check_minimal(spec, 32);
    col.add("cone/surface-minimality", "surface-minimality",
            std::max(min_rep.max_model_mean_curvature, min_rep.max_projected_mean_curvature),
            1e-8, min_rep.samples, "model route and inclusion-projection route");

    // alpha scaling and the curvature agreement on a seeded subset.
    double max_alpha_scaling = 0.0, max_curv = 0.0;
    const auto pts = seeded_points(samples, 27, cfg.seed + 1);
    for (const auto& xt : pts) {
        const auto ev = immersion::evaluate(map, xt);
        const double r = cone::radius_r(spec, xt.tail(spec.nu));
        const double ag2 = cone::surface_alpha_norm2(spec, xt.head<2>());
        max_alpha_scaling =
            std::max(max_alpha_scaling,
                     std::fabs(ev.alpha_norm2 - ag2 / (r * r)) / std::max(ev.alpha_norm2, 1e-12));

        const double s_formula = cone::scalar_curvature_formula(spec, xt.head<2>(), xt.tail(spec.nu));
        const double s_gauss = immersion::scalar_curvature_gauss(ev);
        const double s_intr = immersion::scalar_curvature_intrinsic(map, xt);
        const double scale = std::fabs(s_formula);
        max_curv = std::max({max_curv, std::fabs(s_formula - s_gauss) / scale,
                             std::fabs(s_formula - s_intr) / scale,
                             std::fabs(s_gauss - s_intr) / scale});
    }
    // Differentiation diagnostic: exact jets against the FD backend.
    double fd_dev1 = 0.0, fd_dev2 = 0.0;
    for (const auto& xt : seeded_points(shrink(samples, 0.9), 8, cfg.seed + 4)) {
        const auto exact = deriv::eval_jet2(map, xt, deriv::JetBackend::ExactJet);
        const auto fd = deriv::eval_jet2(map, xt, deriv::JetBackend::FiniteDifference);
        for (int i = 0; i < map.domain_dim(); ++i)
            fd_dev1 = std::max(fd_dev1,
                               (exact.d1(i) - fd.d1(i)).norm() / (1.0 + exact.d1(i).norm()));
        for (int i = 0; i < map.domain_dim(); ++i)
            for (int j = i; j < map.domain_dim(); ++j)
                fd_dev2 = std::max(fd_dev2, (exact.d2(i, j) - fd.d2(i, j)).norm() /
                                                (1.0 + exact.d2(i, j).norm()));
    }
    col.add("cone/jet-fd-agreement-first", "ambient-model", fd_dev1, 1e-6, 8,
            "exact-jet vs finite-difference first derivatives on the cone map");
    col.add("cone/jet-fd-agreement-second", "ambient-model", fd_dev2, 1e-4, 8,
            "exact-jet vs finite-difference second derivatives on the cone map");

    col.add("cone/alpha-scaling", "alpha-scaling", max_alpha_scaling, 1e-4,
            static_cast<int>(pts.size()));
    col.add("cone/scalar-curvature-agreement", "cone-scalar-curvature", max_curv, 1e-4,
            static_cast<int>(pts.size()), "closed form vs Gauss equation vs intrinsic route");

    // Totally geodesic generator: all routes give -m(m-1).
    if (spec.inclusion.model_ambient() == Ambient::Hyperboloid) {
        SuiteConfig tg_cfg = cfg;
        tg_cfg.b = 0.0;
        const ConeSpec tg = build_cone(tg_cfg, "helicoid", cfg.inclusion);
        const auto tg_map = cone::cone_map(tg);
        const double m = tg.dim();
        double dev = 0.0;
        for (const auto& xt : seeded_points(sample_box(tg, cfg), 8, cfg.seed + 2)) {
            const double want = -m * (m - 1.0);
            dev = std::max(dev, std::fabs(cone::scalar_curvature_formula(
                                              tg, xt.head<2>(), xt.tail(tg.nu)) -
                                          want));
            dev = std::max(dev, std::fabs(immersion::scalar_curvature_gauss(
                                              immersion::evaluate(tg_map, xt)) -
                                          want));
        }
        col.add("cone/scalar-curvature-totally-geodesic", "cone-scalar-curvature", dev, 1e-6, 8,
                "generator with b = 0");
    } else {
        col.skip("cone/scalar-curvature-totally-geodesic", "cone-scalar-curvature",
                 "totally geodesic generator variant requires a hyperboloid model");
    }

    // Immersion criterion for the configured cone.
    const auto crit = cone::immersion_criterion(spec);
    const double hnorm = spec.inclusion.mean_curvature_norm();
    col.add("cone/immersion-criterion", "immersion-criterion",
            crit.immersion_everywhere == (hnorm <= 1.0) ? 0.0 : 1.0, 0.5, 1,
            "criterion |H| <= 1 against the inclusion data");

    // Negative control: the perturbed generator must fail minimality. The
    // control is a fixture on the equidistant inclusion regardless of the
    // configured one (the perturbed surface lives in a hyperboloid model).
    const ConeSpec bad = build_cone(cfg, "perturbed", "equidistant");
    const auto bad_map = cone::cone_map(bad);
    double bad_h = 0.0;
    for (const auto& xt : seeded_points(sample_box(bad, cfg), 64, cfg.seed + 3))
        bad_h = std::max(bad_h, immersion::evaluate(bad_map, xt).mean_curvature_norm);
    col.add("cone/minimality-negative-control", "cone-minimality", bad_h, 1e-4, 64,
            "perturbed generator: mean curvature must exceed the threshold", true);
}

// ---------------------------------------------------------------------------
// splitting suite

void run_splitting(const SuiteConfig& cfg, Collector& col) {
    const ConeSpec spec = cone_from_config(cfg);
    if (spec.nu != 1) {
        col.skip("splitting/all", "splitting-span-ij", "splitting checks need nu = 1");
        return;
    }
    if (spec.surface.claimed_totally_geodesic) {
        col.skip("splitting/all", "splitting-span-ij",
                 "totally geodesic cone: nullity fills the tangent space");
        return;
    }
    const auto map = cone::cone_map(spec);
    const auto frame = immersion::coordinate_orthonormal_frame(map, Ambient::Hyperboloid);
    const deriv::Box samples = sample_box(spec, cfg);

    double span = 0.0, umb = 0.0, frame_dev = 0.0;
    const auto pts = seeded_points(samples, 100, cfg.seed + 10);
    for (const auto& xt : pts) {
        const auto s = splitting::splitting_tensor(map, frame, xt);
        span = std::max(span, s.span_residual);
        umb = std::max(umb, (s.C - s.v * Eigen::Matrix2d::Identity()).norm());
        frame_dev = std::max({frame_dev, std::fabs(s.v - s.v_alt), std::fabs(s.u - s.u_alt)});
    }
    col.add("splitting/span-identity-j", "splitting-span-ij", span, 1e-6,
            static_cast<int>(pts.size()));
    col.add("splitting/umbilical-conullity", "umbilical-conullity", umb, 1e-8,
            static_cast<int>(pts.size()), "C is a multiple of the identity on cones");
    col.add("splitting/frame-coefficients", "splitting-frame-coefficients", frame_dev, 1e-6,
            static_cast<int>(pts.size()));

    // Leaf ODEs on a few fibers.
    double v_ode = 0.0, u_ode = 0.0, cr = 0.0;
    int leaf_samples = 0;
    for (const auto& x : seeded_points(shrink(spec.surface.map.box(), 0.75), 3, cfg.seed + 11)) {
        const auto rep = splitting::leaf_ode_check(map, frame, x.head<2>(), -2.0, 2.0, 9);
        v_ode = std::max(v_ode, rep.max_v_ode);
        u_ode = std::max(u_ode, rep.max_u_ode);
        cr = std::max(cr, rep.max_cauchy_riemann);
        leaf_samples += rep.samples;
    }
    col.add("splitting/leaf-ode", "leaf-ode", std::max(v_ode, u_ode), 1e-6, leaf_samples);
    col.add("splitting/conjugate-pair", "leaf-conjugate-pair", cr, 1e-6, leaf_samples);

    // Harmonicity of u and v.
    auto v_field = [&](const Eigen::VectorXd& y) {
        return splitting::splitting_tensor(map, frame, y).v;
    };
    auto u_field = [&](const Eigen::VectorXd& y) {
        return splitting::splitting_tensor(map, frame, y).u;
    };
    double harm_v = 0.0, harm_u = 0.0;
    const auto hpts = seeded_points(shrink(samples, 0.6), 5, cfg.seed + 12);
    for (const auto& xt : hpts) {
        harm_v = std::max(harm_v, splitting::harmonic_residual(map, v_field, xt));
        harm_u = std::max(harm_u, splitting::harmonic_residual(map, u_field, xt));
    }
    col.add("splitting/harmonic-v", "harmonic-uv", harm_v, 1e-5, static_cast<int>(hpts.size()));
    col.add("splitting/harmonic-u", "harmonic-uv", harm_u, 1e-5, static_cast<int>(hpts.size()));

    // Transport of |alpha|^2 along leaves.
    double transport = 0.0;
    int tr_samples = 0;
    for (const auto& x : seeded_points(shrink(spec.surface.map.box(), 0.75), 3, cfg.seed + 13)) {
        const auto rep = splitting::alpha_transport_check(map, frame, x.head<2>(), -1.5, 1.5, 7);
        transport = std::max(transport, rep.max_rel_resid);
        tr_samples += rep.samples;
    }
    col.add("splitting/alpha-transport", "alpha-transport", transport, 1e-4, tr_samples);

    // Commutation identities.
    double eq_shape = 0.0, eq_min = 0.0;
    for (const auto& xt : seeded_points(samples, 20, cfg.seed + 14)) {
        const auto rep = splitting::commutation_check(map, frame, xt);
        eq_shape = std::max(eq_shape, rep.shape_commute);
        eq_min = std::max(eq_min, rep.minimal_commute);
    }
    col.add("splitting/shape-commutation", "shape-splitting-commutation", eq_shape, 1e-6, 20);
    col.add("splitting/minimality-commutation", "minimality-commutation", eq_min, 1e-6, 20);

    // Negative control: non-minimal generator breaks the J commutation;
    // same equidistant fixture as the minimality control.
    const ConeSpec bad = build_cone(cfg, "perturbed", "equidistant");
    const auto bad_map = cone::cone_map(bad);
    const auto bad_frame = immersion::coordinate_orthonormal_frame(bad_map, Ambient::Hyperboloid);
    double bad_eq = 0.0;
    for (const auto& xt : seeded_points(sample_box(bad, cfg), 36, cfg.seed + 15))
        bad_eq = std::max(bad_eq,
                          splitting::commutation_check(bad_map, bad_frame, xt).minimal_commute);
    col.add("splitting/minimality-commutation-negative", "minimality-commutation", bad_eq, 1e-4,
            36, "perturbed generator: J commutation must fail", true);
}

// ---------------------------------------------------------------------------
// gauss suite

void run_gauss(const SuiteConfig& cfg, Collector& col) {
    const ConeSpec spec = cone_from_config(cfg);
    if (spec.dim() != 3) {
        col.skip("gauss/all", "gauss-normalization", "gauss map checks need m = 3");
        return;
    }
    const auto map = cone::cone_map(spec);
    const auto frame = immersion::coordinate_orthonormal_frame(map, Ambient::Hyperboloid);
    const deriv::Box samples = sample_box(spec, cfg);

    double norm_dev = 0.0;
    const auto pts = seeded_points(samples, 100, cfg.seed + 20);
    for (const auto& xt : pts) {
        const auto gv = gaussmap::gauss_value(map, frame, xt);
        norm_dev = std::max(norm_dev,
                            std::fabs(lorentz::multivector_dot(gv.value, gv.value) + 1.0));
    }
    col.add("gauss/normalization", "gauss-normalization", norm_dev, 1e-8,
            static_cast<int>(pts.size()));

    double diff_resid = 0.0, energy = 0.0;
    const auto dpts = seeded_points(shrink(samples, 0.8), 8, cfg.seed + 21);
    for (const auto& xt : dpts) {
        const auto rep = gaussmap::gauss_differential_check(map, frame, xt);
        diff_resid = std::max(diff_resid, rep.max_resid);
        energy = std::max(energy, rep.energy_rel_dev);
    }
    col.add("gauss/differential", "gauss-differential", diff_resid, 1e-5,
            static_cast<int>(dpts.size()));
    col.add("gauss/energy-identity", "gauss-energy", energy, 1e-4,
            static_cast<int>(dpts.size()));

    chart::MetricField mf = [spec](const Eigen::VectorXd& y) {
        return cone::cone_metric_closed(spec, y.head<2>(), y.tail(y.size() - 2));
    };
    double lap = 0.0;
    const auto lpts = seeded_points(shrink(samples, 0.6), 4, cfg.seed + 22);
    for (const auto& xt : lpts) {
        const auto rep = gaussmap::gauss_laplace_check(map, frame, mf, xt);
        lap = std::max(lap, rep.resid_full);
    }
    col.add("gauss/laplace", "gauss-laplace", lap, 1e-3, static_cast<int>(lpts.size()),
            "componentwise Laplace identity with the closed-form weights");

    // Codimension-two ablation on the complex curve in a horosphere of H^5.
    SuiteConfig c2 = cfg;
    c2.n = 5;
    c2.nu = 1;
    const ConeSpec spec2 = build_cone(c2, "complex-curve", "horosphere");
    const auto map2 = cone::cone_map(spec2);
    const auto frame2 = immersion::coordinate_orthonormal_frame(map2, Ambient::Hyperboloid);
    chart::MetricField mf2 = [spec2](const Eigen::VectorXd& y) {
        return cone::cone_metric_closed(spec2, y.head<2>(), y.tail(y.size() - 2));
    };
    double worst_ratio = 1e300, lap2 = 0.0;
    const auto l2pts = seeded_points(shrink(sample_box(spec2, cfg), 0.5), 3, cfg.seed + 23);
    for (const auto& xt : l2pts) {
        const auto rep = gaussmap::gauss_laplace_check(map2, frame2, mf2, xt);
        lap2 = std::max(lap2, rep.resid_full);
        worst_ratio = std::min(worst_ratio, rep.resid_no_mixed / rep.resid_full);
    }
    col.add("gauss/laplace-codim2", "gauss-laplace", lap2, 1e-3, static_cast<int>(l2pts.size()),
            "complex curve in a horosphere of H^5");
    col.add("gauss/laplace-mixed-ablation", "gauss-laplace-mixed", 10.0 / worst_ratio, 1.0,
            static_cast<int>(l2pts.size()),
            "reciprocal ablation ratio: omitting the mixed term must degrade the residual 10x");
}

// ---------------------------------------------------------------------------
// flow suite

void run_flow(const SuiteConfig& cfg, Collector& col) {
    using namespace nullflow;

    // rk4 against the closed form.
    double rk4_err = 0.0;
    int rk4_samples = 0;
    for (double u0 : {0.0, 0.3, 0.9}) {
        for (double dir : {1.0, -1.0}) {
            const auto traj = rk4_flow(make_state(u0, 0.0), dir * 3.0, 1e-3);
            for (const auto& st : traj.states) {
                const auto w = moebius_flow(make_state(u0, 0.0), st.t);
                rk4_err = std::max({rk4_err, std::fabs(st.u - u_of(w)), std::fabs(st.v - v_of(w))});
            }
            rk4_samples += static_cast<int>(traj.states.size());
        }
    }
    col.add("flow/rk4-vs-closed-form", "leaf-ode-closed-form", rk4_err, 1e-8, rk4_samples);

    // Order-4 convergence window.
    auto end_err = [](double step) {
        const auto traj = rk4_flow(make_state(0.4, 0.2), 2.0, step);
        const auto& last = traj.states.back();
        const auto w = moebius_flow(make_state(0.4, 0.2), last.t);
        return std::hypot(last.u - u_of(w), last.v - v_of(w));
    };
    const double ratio = end_err(0.02) / end_err(0.01);
    col.add("flow/rk4-order", "leaf-ode-closed-form", std::fabs(ratio - 16.0), 3.0, 2,
            "step-halving error ratio against the fourth-order prediction");

    // Identities along level-set launches.
    double id46 = 0.0, id45 = 0.0, id50 = 0.0;
    int id_samples = 0;
    for (double u0 : {0.1, 0.5, 2.0}) {
        const auto rep = check_flow_identities(u0, -3.0, 3.0, 49);
        id46 = std::max(id46, rep.max_psi_moebius);
        id45 = std::max(id45, rep.max_psi_slope);
        id50 = std::max(id50, rep.max_theta_slope);
        id_samples += rep.samples;
    }
    col.add("flow/psi-moebius-relation", "psi-moebius-relation", id46, 1e-12, id_samples);
    col.add("flow/psi-slope", "psi-slope", id45, 1e-8, id_samples);
    col.add("flow/theta-slope", "theta-slope", id50, 1e-6, id_samples);

    // Radical expression for psi.
    double rad = 0.0;
    for (double u0 : {0.1, 0.5, 2.0})
        for (double t = -3.0; t <= 3.0; t += 0.125) {
            const auto w = moebius_flow(make_state(u0, 0.0), t);
            rad = std::max(rad, std::fabs(psi_radical(u_of(w), v_of(w)) - std::tanh(t)));
        }
    col.add("flow/psi-radical", "psi-moebius-relation", rad, 1e-12, 3 * 49);

    // Pointwise polynomial identity.
    std::mt19937_64 rng(cfg.seed + 30);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    double poly = 0.0;
    const int poly_samples = 1000000;
    for (int k = 0; k < poly_samples; ++k) {
        const double u = dist(rng), v = dist(rng);
        const double diff = polynomial_inequality_identity(u, v);
        poly = std::max(poly,
                        std::fabs(diff - 8.0 * u * u) / std::max(1.0, std::fabs(8.0 * u * u)));
    }
    col.add("flow/polynomial-identity", "inequality-gap", poly, 1e-9, poly_samples,
            "difference against 8u^2, relative");

    // Limits, monotonicity, semigroup, disk invariance, comparison.
    double lim = 0.0;
    for (double u0 : {0.1, 0.5, 1.0}) {
        const auto wp = moebius_flow(make_state(u0, 0.0), 10.0);
        const auto wm = moebius_flow(make_state(u0, 0.0), -10.0);
        lim = std::max({lim, std::fabs(v_of(wp) + 1.0), std::fabs(u_of(wp)),
                        std::fabs(v_of(wm) - 1.0), std::fabs(u_of(wm))});
    }
    col.add("flow/limits", "leaf-limits", lim, 1e-8, 6);

    std::mt19937_64 rng2(cfg.seed + 31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double mono_viol = 0.0, semi = 0.0, disk = 0.0, comparison = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double r = std::sqrt(unit(rng2));
        const double phi = 2.0 * M_PI * unit(rng2);
        const Riccati w0(r * std::cos(phi), r * std::sin(phi));
        const double s = -2.0 + 4.0 * unit(rng2);
        const double t = -2.0 + 4.0 * unit(rng2);
        semi = std::max(semi, std::abs(moebius_flow(moebius_flow(w0, s), t) -
                                       moebius_flow(w0, s + t)));
        disk = std::max(disk, std::abs(moebius_flow(w0, t)) - 1.0);
        const Riccati w = moebius_flow(w0, t);
        const double vprime = v_of(w) * v_of(w) - u_of(w) * u_of(w) - 1.0;
        comparison = std::max(comparison, vprime - (v_of(w) * v_of(w) - 1.0));

        if (std::fabs(u_of(w0)) > 1e-3) {
            const auto w1 = moebius_flow(w0, t);
            const auto w2 = moebius_flow(w0, t + 0.25);
            mono_viol = std::max(mono_viol, v_of(w2) - v_of(w1));
        }
    }
    col.add("flow/monotonicity", "leaf-monotonicity", std::max(mono_viol, 0.0), 1e-15, 200,
            "v must strictly decrease along disk trajectories");
    col.add("flow/semigroup", "flow-semigroup", semi, 1e-12, 200);
    col.add("flow/disk-invariance", "disk-invariance", std::max(disk, 0.0), 1e-12, 200);
    col.add("flow/comparison-ode", "comparison-ode", std::max(comparison, 0.0), 1e-15, 200,
            "v' <= v^2 - 1 on the closed disk");

    // theta dichotomy: zero exactly on the u0 = 0 trajectory, positive
    // otherwise.
    double theta_zero = 0.0, theta_min = 1e300;
    for (double t = -4.0; t <= 4.0; t += 0.125) {
        const auto a = moebius_flow(make_state(0.0, 0.0), t);
        theta_zero = std::max(theta_zero, psi_theta(t, u_of(a), v_of(a)).second);
        const auto b = moebius_flow(make_state(0.4, 0.0), t);
        theta_min = std::min(theta_min, psi_theta(t, u_of(b), v_of(b)).second);
    }
    col.add("flow/theta-vanishing", "theta-dichotomy", theta_zero, 1e-28, 65,
            "theta on the cone trajectory u0 = 0");
    col.add("flow/theta-positivity", "theta-dichotomy", theta_min, 1e-8, 65,
            "minimum of theta along a u0 != 0 trajectory; must exceed the threshold", true);
}

// ---------------------------------------------------------------------------
// boundary-cases suite

void run_boundary(const SuiteConfig& cfg, Collector& col) {
    // Horosphere cone: |alpha|^2 and the curvature grow like e^{2t}.
    SuiteConfig hcfg = cfg;
    hcfg.nu = 1;
    const ConeSpec horo = build_cone(hcfg, "helicoid", "horosphere");
    const auto horo_map = cone::cone_map(horo);
    {
        std::mt19937_64 rng(cfg.seed + 40);
        Eigen::Vector2d x(std::uniform_real_distribution<double>(0.5, 1.4)(rng),
                          std::uniform_real_distribution<double>(-1.0, 1.0)(rng));
        std::vector<double> ts, la, ls;
        for (double t = -1.5; t <= 1.51; t += 0.2) {
            Eigen::Vector3d xt(x[0], x[1], t);
            la.push_back(std::log(immersion::evaluate(horo_map, xt).alpha_norm2));
            const double s = cone::scalar_curvature_formula(horo, x, xt.tail(1));
            ls.push_back(std::log(std::fabs(s + 6.0)));
            ts.push_back(t);
        }
        col.add("boundary/horosphere-alpha-exponent", "alpha-growth-rate",
                std::fabs(fit_slope(ts, la) - 2.0), 0.01, static_cast<int>(ts.size()),
                "fitted exponent of |alpha|^2 along the fiber");
        col.add("boundary/horosphere-curvature-exponent", "curvature-boundedness",
                std::fabs(fit_slope(ts, ls) - 2.0), 0.05, static_cast<int>(ts.size()),
                "fitted exponent of |s + 6| along the fiber");

        // Constant solution v = 1 on horosphere cones.
        const auto frame = immersion::coordinate_orthonormal_frame(horo_map, Ambient::Hyperboloid);
        double vdev = 0.0;
        for (double t : {-1.5, -0.5, 0.5, 1.5}) {
            Eigen::Vector3d xt(x[0], x[1], t);
            const auto s = splitting::splitting_tensor(horo_map, frame, xt);
            vdev = std::max({vdev, std::fabs(s.v - 1.0), std::fabs(s.u)});
        }
        col.add("boundary/horosphere-v-constant", "leaf-ode", vdev, 1e-8, 4,
                "the constant v = 1, u = 0 boundary solution of the leaf ODE");
    }

    // Equidistant cone: curvature bounded along fibers.
    SuiteConfig ecfg = cfg;
    ecfg.nu = 1;
    const ConeSpec equi = build_cone(ecfg, "helicoid", "equidistant");
    {
        std::mt19937_64 rng(cfg.seed + 41);
        double excess = 0.0;
        int samples = 0;
        for (int k = 0; k < 3; ++k) {
            Eigen::Vector2d x(std::uniform_real_distribution<double>(-1.4, 1.4)(rng),
                              std::uniform_real_distribution<double>(-1.4, 1.4)(rng));
            const double ag2 = cone::surface_alpha_norm2(equi, x);
            const double bound = 6.0 + ag2 / (1.0 - std::pow(std::tanh(cfg.d), 2));
            for (double t = -3.0; t <= 3.0; t += 0.125) {
                Eigen::VectorXd tv(1);
                tv << t;
                const double s = cone::scalar_curvature_formula(equi, x, tv);
                excess = std::max(excess, std::fabs(s) - bound);
                ++samples;
            }
        }
        col.add("boundary/equidistant-curvature-bound", "curvature-boundedness",
                std::max(excess, 0.0), 1e-3, samples,
                "|s| against 6 + |alpha_g|^2 / (1 - tanh^2 d) along fibers");
    }

    // Geodesic sphere: degeneracy locus and the rank detector.
    SuiteConfig scfg = cfg;
    scfg.nu = 1;
    const ConeSpec sph = build_cone(scfg, "sphere-patch", "geodesic-sphere");
    {
        const auto crit = cone::immersion_criterion(sph);
        const double locus_dev =
            crit.degenerate_t1 ? std::fabs(*crit.degenerate_t1 - cfg.rho) : 1e300;
        col.add("boundary/sphere-degeneracy-locus", "immersion-criterion", locus_dev, 1e-6, 1,
                "degenerate fiber time arctanh(1/|H|) against rho");
        col.add("boundary/sphere-immersion", "immersion-criterion",
                crit.immersion_everywhere ? 0.0 : 1.0, 0.5, 1,
                "|H| > 1: the criterion must flag a degenerate locus", true);

        const auto sph_map = cone::cone_map(sph);
        double rank_ok = 0.0;
        try {
            immersion::evaluate(sph_map, Eigen::Vector3d(0.1, 0.1, cfg.rho));
            rank_ok = 1.0;  // must have thrown
        } catch (const DegeneracyError&) {
        }
        try {
            immersion::evaluate(sph_map, Eigen::Vector3d(0.1, 0.1, cfg.rho - 0.4));
        } catch (const DegeneracyError&) {
            rank_ok = 1.0;  // must not throw away from the locus
        }
        col.add("boundary/sphere-rank-detection", "immersion-criterion", rank_ok, 0.5, 2,
                "metric rank loss exactly at the algebraic locus");
    }

    // Equidistant and horosphere cones evaluate across the full fiber range.
    {
        double bad = 0.0;
        int samples = 0;
        for (const ConeSpec* spec : {&equi, &horo}) {
            const auto map = cone::cone_map(*spec);
            for (double t = -3.0; t <= 3.01; t += 0.5) {
                try {
                    immersion::evaluate(map, Eigen::Vector3d(0.4, 0.3, t));
                } catch (const DegeneracyError&) {
                    bad = 1.0;
                }
                ++samples;
            }
        }
        col.add("boundary/nondegenerate-fibers", "immersion-criterion", bad, 0.5, samples,
                "equidistant and horosphere cones immerse on t in [-3, 3]");
    }
}

}  // namespace

// ---------------------------------------------------------------------------

int Report::failures() const {
    int count = 0;
    for (const auto& rec : checks)
        if (rec.status == "fail") ++count;
    return count;
}

ConeSpec cone_from_config(const SuiteConfig& cfg) {
    return build_cone(cfg, cfg.surface, cfg.inclusion);
}

void apply_config_line(SuiteConfig& cfg, const std::string& key, const std::string& value) {
    auto as_double = [&]() { return std::stod(value); };
    auto as_int = [&]() { return std::stoi(value); };
    if (key == "suite") cfg.suite = value;
    else if (key == "surface") cfg.surface = value;
    else if (key == "inclusion") cfg.inclusion = value;
    else if (key == "a") cfg.a = as_double();
    else if (key == "b") cfg.b = as_double();
    else if (key == "d") cfg.d = as_double();
    else if (key == "rho") cfg.rho = as_double();
    else if (key == "eps") cfg.eps = as_double();
    else if (key == "n") cfg.n = as_int();
    else if (key == "nu") cfg.nu = as_int();
    else if (key == "grid") cfg.grid = as_int();
    else if (key == "t-min") cfg.t_min = as_double();
    else if (key == "t-max") cfg.t_max = as_double();
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "out") cfg.out_dir = value;
    else if (key == "format") cfg.format = value;
    else if (key.rfind("tol.", 0) == 0) cfg.tol_override[key.substr(4)] = as_double();
    else throw DomainError("unknown config key '" + key + "'");
}

SuiteConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file '" + path + "'");
    SuiteConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw DomainError("config line missing '=': " + line);
        apply_config_line(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

Report run_suite(const SuiteConfig& cfg) {
    Report report;
    report.config = cfg;
    if (cfg.grid < 4) throw DomainError("grid must be at least 4 per axis");
    for (const auto& [name, tol] : cfg.tol_override)
        if (!(tol > 0.0)) throw DomainError("tolerance override for '" + name + "' must be positive");

    Collector col{cfg, report.checks};
    const bool all = cfg.suite == "all";
    bool known = all;
    if (all || cfg.suite == "cone-geometry") run_cone_geometry(cfg, col), known = true;
    if (all || cfg.suite == "splitting") run_splitting(cfg, col), known = true;
    if (all || cfg.suite == "gauss") run_gauss(cfg, col), known = true;
    if (all || cfg.suite == "flow") run_flow(cfg, col), known = true;
    if (all || cfg.suite == "boundary-cases") run_boundary(cfg, col), known = true;
    if (!known) throw DomainError("unknown suite '" + cfg.suite + "'");

    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    return report;
}

namespace {

nlohmann::ordered_json config_json(const SuiteConfig& cfg) {
    nlohmann::ordered_json j;
    j["suite"] = cfg.suite;
    j["surface"] = cfg.surface;
    j["inclusion"] = cfg.inclusion;
    j["a"] = cfg.a;
    j["b"] = cfg.b;
    j["d"] = cfg.d;
    j["rho"] = cfg.rho;
    j["eps"] = cfg.eps;
    j["n"] = cfg.n;
    j["nu"] = cfg.nu;
    j["grid"] = cfg.grid;
    j["t_min"] = cfg.t_min;
    j["t_max"] = cfg.t_max;
    j["seed"] = cfg.seed;
    j["tol_override"] = cfg.tol_override;
    return j;
}

}  // namespace

std::string report_json_lines(const Report& report) {
    std::ostringstream os;
    nlohmann::ordered_json head;
    head["type"] = "config";
    head["version"] = report.version;
    head["config"] = config_json(report.config);
    os << head.dump() << "\n";
    for (const auto& rec : report.checks) {
        nlohmann::ordered_json j;
        j["type"] = "check";
        j["name"] = rec.name;
        j["ref"] = rec.ref;
        j["residual"] = fmt(rec.residual);
        j["tolerance"] = fmt(rec.tolerance);
        j["samples"] = rec.samples;
        j["expected_fail"] = rec.expected_fail;
        j["status"] = rec.status;
        j["note"] = rec.note;
        os << j.dump() << "\n";
    }
    nlohmann::ordered_json tail;
    tail["type"] = "summary";
    tail["checks"] = report.checks.size();
    tail["failures"] = report.failures();
    tail["pass"] = report.all_pass();
    os << tail.dump() << "\n";
    return os.str();
}

std::string report_csv(const Report& report) {
    std::ostringstream os;
    os << "name,ref,residual,tolerance,samples,expected_fail,status,note\n";
    for (const auto& rec : report.checks) {
        std::string note = rec.note;
        for (auto& c : note)
            if (c == ',') c = ';';
        os << rec.name << ',' << rec.ref << ',' << fmt(rec.residual) << ',' << fmt(rec.tolerance)
           << ',' << rec.samples << ',' << (rec.expected_fail ? 1 : 0) << ',' << rec.status << ','
           << note << "\n";
    }
    return os.str();
}

void emit_report_human(const Report& report, std::ostream& os) {
    os << report.version << "  suite=" << report.config.suite
       << "  seed=" << report.config.seed << "\n";
    os << std::left << std::setw(44) << "check" << std::setw(12) << "status" << std::setw(14)
       << "residual" << std::setw(14) << "tolerance" << "samples\n";
    char buf[32];
    for (const auto& rec : report.checks) {
        os << std::left << std::setw(44) << rec.name << std::setw(12) << rec.status;
        if (rec.status == "skip") {
            os << std::setw(44) << (rec.note + "  ");
        } else {
            std::snprintf(buf, sizeof(buf), "%.4e", rec.residual);
            os << std::setw(14) << buf;
            std::snprintf(buf, sizeof(buf), "%.4e", rec.tolerance);
            os << std::setw(14) << buf;
        }
        os << rec.samples << "\n";
    }
    os << (report.all_pass() ? "PASS" : "FAIL") << " (" << report.checks.size() << " checks, "
       << report.failures() << " failures)\n";
}

std::vector<std::string> write_report_files(const Report& report) {
    const auto& cfg = report.config;
    if (cfg.out_dir.empty()) return {};
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    std::vector<std::string> written;
    auto write = [&](const std::string& file, const std::string& data) {
        const std::string path = cfg.out_dir + "/" + file;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DomainError("cannot write '" + path + "'");
        out << data;
        written.push_back(path);
    };
    if (cfg.format == "json-lines")
        write("report.jsonl", report_json_lines(report));
    else if (cfg.format == "csv")
        write("report.csv", report_csv(report));
    else {
        std::ostringstream os;
        emit_report_human(report, os);
        write("report.txt", os.str());
    }
    return written;
}

FlowRun flow_trajectory(double u0, double v0, double t_min, double t_max, double step) {
    using namespace nullflow;
    FlowRun run;
    if (u0 == 0.0 && std::fabs(v0) > 1.0) {
        run.blow_up = true;
        run.pole_t = pole_time(v0);
    }
    std::ostringstream os;
    os << "t,u,v,psi,theta\n";
    auto emit_states = [&](const Trajectory& traj, bool reversed) {
        std::vector<FlowState> states = traj.states;
        if (reversed) std::reverse(states.begin(), states.end());
        for (const auto& st : states) {
            if (reversed && st.t == 0.0) continue;  // the forward pass owns t = 0
            const double psi = psi_radical(st.u, st.v);
            const double theta = st.u * st.u + (st.v + psi) * (st.v + psi);
            os << fmt(st.t) << ',' << fmt(st.u) << ',' << fmt(st.v) << ',' << fmt(psi) << ','
               << fmt(theta) << "\n";
        }
        return traj.aborted_at_pole;
    };
    const Riccati w0 = make_state(u0, v0);
    bool aborted = false;
    if (t_min < 0.0) aborted |= emit_states(rk4_flow(w0, t_min, step), true);
    aborted |= emit_states(rk4_flow(w0, std::max(t_max, 0.0), step), false);
    run.blow_up = run.blow_up || aborted;
    run.csv = os.str();
    return run;
}

SweepRun sweep_scalar_curvature(const SuiteConfig& cfg) {
    const ConeSpec spec = cone_from_config(cfg);
    if (spec.nu != 1) throw DomainError("sweep needs nu = 1");
    std::mt19937_64 rng(cfg.seed + 50);
    const deriv::Box surf = shrink(spec.surface.map.box(), 0.6);
    Eigen::Vector2d x(std::uniform_real_distribution<double>(surf.lo[0], surf.hi[0])(rng),
                      std::uniform_real_distribution<double>(surf.lo[1], surf.hi[1])(rng));
    const double m = spec.dim();
    const double flat = -m * (m - 1.0);

    SweepRun run;
    std::ostringstream os;
    os << "t,s\n";
    std::vector<double> ts, ys;
    const int samples = std::max(cfg.grid, 8);
    for (int i = 0; i < samples; ++i) {
        const double t = cfg.t_min + (cfg.t_max - cfg.t_min) * i / (samples - 1.0);
        Eigen::VectorXd tv(1);
        tv << t;
        const double s = cone::scalar_curvature_formula(spec, x, tv);
        os << fmt(t) << ',' << fmt(s) << "\n";
        if (std::fabs(s - flat) > 1e-14) {
            ts.push_back(t);
            ys.push_back(std::log(std::fabs(s - flat)));
        }
    }
    run.csv = os.str();
    run.fitted_slope = ts.size() >= 2 ? fit_slope(ts, ys) : 0.0;
    return run;
}

}  // namespace hypercone::suite
