#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hypercone/cone.hpp"

using namespace hypercone;
using namespace hypercone::cone;
using deriv::Box;
using hyperbolic::UmbilicalInclusion;
using immersion::Ambient;

namespace {

std::mt19937_64 rng(91203);

double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ConeSpec default_cone(double d = 0.7, int n = 4) {
    const auto inc = UmbilicalInclusion::equidistant(d, n);
    auto surf = surface_catalog("helicoid_h3", {}, inc.model_coord_dim());
    return make_cone(std::move(surf), inc, Box::cube(1, 3.0));
}

ConeSpec horosphere_cone(int n = 4) {
    const auto inc = UmbilicalInclusion::horosphere(n);
    auto surf = surface_catalog("euclidean_helicoid", {}, inc.model_coord_dim());
    return make_cone(std::move(surf), inc, Box::cube(1, 3.0));
}

ConeSpec sphere_cone(double rho = 1.0, int n = 4) {
    const auto inc = UmbilicalInclusion::geodesic_sphere(rho, n);
    return make_cone(surface_catalog("sphere_patch", {}, inc.model_coord_dim()), inc,
                     Box::cube(1, 2.0));
}

Eigen::VectorXd one(double t) {
    Eigen::VectorXd v(1);
    v << t;
    return v;
}

}  // namespace

TEST_CASE("cone map hits the inclusion at t = 0") {
    const auto spec = default_cone();
    const auto g = cone_map(spec);
    const auto h = composed_surface_map(spec);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::Vector2d x(uniform(-1.5, 1.5), uniform(-1.5, 1.5));
        Eigen::Vector3d xt(x[0], x[1], 0.0);
        CHECK((g(xt) - h(x)).norm() <= 1e-14);
    }
}

TEST_CASE("cone map satisfies the hyperboloid constraint") {
    for (const auto& spec : {default_cone(), horosphere_cone()}) {
        const auto g = cone_map(spec);
        for (int trial = 0; trial < 50; ++trial) {
            Eigen::Vector3d xt(uniform(-1.5, 1.5), uniform(-1.5, 1.5), uniform(-2.5, 2.5));
            const Eigen::VectorXd p = g(xt);
            CHECK(std::fabs(lorentz::minkowski_norm2(p) + 1.0) <=
                  1e-12 * (1.0 + p.squaredNorm()));
        }
    }
}

TEST_CASE("cone map agrees with the exponential of the fiber normal vector") {
    const auto spec = default_cone();
    const auto g = cone_map(spec);
    const auto h = composed_surface_map(spec);
    double max_dist = 0.0;
    const int grid = 16;
    for (int gi = 0; gi < grid; ++gi)
        for (int gj = 0; gj < grid; ++gj)
            for (int gk = 0; gk < grid; ++gk) {
                Eigen::Vector2d x(-1.5 + 3.0 * (gi + 0.5) / grid, -1.5 + 3.0 * (gj + 0.5) / grid);
                const double t = -2.0 + 4.0 * (gk + 0.5) / grid;
                const Eigen::VectorXd w = fiber_normal_vector(spec, x, one(t));
                const auto base = hyperbolic::HPoint::from(h(x));
                const auto q = hyperbolic::exp_point(base, w);
                Eigen::Vector3d xt(x[0], x[1], t);
                const Eigen::VectorXd cone_pt = g(xt);
                const double sep = (q.coords() - cone_pt).norm() / (1.0 + cone_pt.norm());
                max_dist = std::max(max_dist, sep);
            }
    CHECK(max_dist <= 1e-10);
}

TEST_CASE("nu = 2 cone equals the exponential through iterated fibers") {
    const auto inc = UmbilicalInclusion::equidistant(0.7, 5, 2);
    auto surf = surface_catalog("helicoid_h3", {}, inc.model_coord_dim());
    const auto spec = make_cone(std::move(surf), inc, Box::cube(2, 2.0));
    const auto g = cone_map(spec);
    const auto h = composed_surface_map(spec);
    for (int trial = 0; trial < 40; ++trial) {
        Eigen::Vector2d x(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        Eigen::VectorXd t(2);
        t << uniform(-1.5, 1.5), uniform(-1.5, 1.5);
        Eigen::VectorXd xt(4);
        xt << x, t;
        const Eigen::VectorXd w = fiber_normal_vector(spec, x, t);
        const auto q = hyperbolic::exp_point(hyperbolic::HPoint::from(h(x)), w);
        const Eigen::VectorXd cone_pt = g(xt);
        CHECK((q.coords() - cone_pt).norm() <= 1e-10 * (1.0 + cone_pt.norm()));
    }
}

TEST_CASE("radius closed forms") {
    // |H| = 0: t = 0 gives r = 1.
    const auto inc_tg = UmbilicalInclusion::totally_geodesic(4);
    auto surf = surface_catalog("totally_geodesic_h2", {}, inc_tg.model_coord_dim());
    const auto tg_cone = make_cone(std::move(surf), inc_tg, Box::cube(1, 3.0));
    CHECK(radius_r(tg_cone, one(0.0)) == doctest::Approx(1.0));

    // Horosphere: r = e^{-t}.
    const auto horo = horosphere_cone();
    for (double t : {-2.0, -0.3, 0.0, 0.9, 2.5})
        CHECK(radius_r(horo, one(t)) == doctest::Approx(std::exp(-t)).epsilon(1e-12));

    // Geodesic sphere rho = 1: r = 0 at t = arctanh(tanh 1) = 1.
    const auto sph = sphere_cone(1.0);
    CHECK(sph.inclusion.mean_curvature_norm() == doctest::Approx(1.3130352854993312));
    CHECK(radius_r(sph, one(1.0)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("closed-form metric matches the numerical first fundamental form") {
    for (const auto& spec : {default_cone(), horosphere_cone()}) {
        const auto g = cone_map(spec);
        double max_rel = 0.0;
        for (int trial = 0; trial < 40; ++trial) {
            Eigen::Vector2d x(uniform(-1.5, 1.5), uniform(-1.5, 1.5));
            const double t = uniform(-2.0, 2.0);
            Eigen::Vector3d xt(x[0], x[1], t);
            const Eigen::MatrixXd closed = cone_metric_closed(spec, x, one(t));
            const Eigen::MatrixXd numeric = immersion::metric_at(g, xt);
            const double rel = (closed - numeric).cwiseAbs().maxCoeff() /
                               closed.cwiseAbs().maxCoeff();
            max_rel = std::max(max_rel, rel);
        }
        CHECK(max_rel <= 1e-8);
    }
}

TEST_CASE("nu = 2 closed-form metric has the cosh fiber block") {
    const auto inc = UmbilicalInclusion::equidistant(0.7, 5, 2);
    auto surf = surface_catalog("helicoid_h3", {}, inc.model_coord_dim());
    const auto spec = make_cone(std::move(surf), inc, Box::cube(2, 2.0));
    const auto g = cone_map(spec);
    for (int trial = 0; trial < 15; ++trial) {
        Eigen::Vector2d x(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        Eigen::VectorXd t(2);
        t << uniform(-1.5, 1.5), uniform(-1.5, 1.5);
        const Eigen::MatrixXd closed = cone_metric_closed(spec, x, t);
        CHECK(closed(2, 2) == doctest::Approx(std::pow(std::cosh(t[1]), 2)).epsilon(1e-12));
        CHECK(closed(3, 3) == doctest::Approx(1.0));
        Eigen::VectorXd xt(4);
        xt << x, t;
        const Eigen::MatrixXd numeric = immersion::metric_at(g, xt);
        CHECK((closed - numeric).cwiseAbs().maxCoeff() <=
              1e-8 * closed.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("cone over a minimal surface is minimal, fibers lie in the nullity") {
    const auto spec = default_cone();
    const auto g = cone_map(spec);
    for (int trial = 0; trial < 30; ++trial) {
        Eigen::Vector3d xt(uniform(-1.5, 1.5), uniform(-1.5, 1.5), uniform(-2.0, 2.0));
        const auto ev = immersion::evaluate(g, xt);
        CHECK(ev.mean_curvature_norm <= 1e-6);

        const auto nd = immersion::nullity_space(ev);
        CHECK(nd.nu == 1);
        // Nullity direction is the fiber direction.
        Eigen::Vector3d dt(0.0, 0.0, 1.0);
        CHECK(ev.alpha_contraction_norm(dt) <= 1e-8);
        const double align = std::fabs((nd.basis.col(0).transpose() * ev.metric * dt)(0, 0));
        CHECK(align == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("perturbed surface breaks minimality of the cone") {
    const auto inc = UmbilicalInclusion::equidistant(0.7, 4);
    auto surf = surface_catalog("perturbed_nonminimal", {.a = 1, .b = 1, .eps = 0.1},
                                inc.model_coord_dim());
    const auto spec = make_cone(std::move(surf), inc, Box::cube(1, 3.0));
    const auto g = cone_map(spec);
    double worst = 0.0;
    for (int gi = 0; gi < 8; ++gi)
        for (int gj = 0; gj < 8; ++gj) {
            Eigen::Vector3d xt(-1.5 + 3.0 * (gi + 0.5) / 8, -1.5 + 3.0 * (gj + 0.5) / 8, 0.3);
            worst = std::max(worst, immersion::evaluate(g, xt).mean_curvature_norm);
        }
    CHECK(worst > 1e-4);
}

TEST_CASE("surface catalog minimality claims") {
    {
        const auto spec = default_cone();
        const auto rep = check_minimal(spec, 32);
        CHECK(rep.max_model_mean_curvature <= 1e-8);
        CHECK(rep.max_projected_mean_curvature <= 1e-8);
    }
    {
        // b = 0 degenerates to a totally geodesic H^2.
        const auto inc = UmbilicalInclusion::equidistant(0.7, 4);
        auto surf = surface_catalog("helicoid_h3", {.a = 1, .b = 0}, inc.model_coord_dim());
        CHECK(surf.claimed_totally_geodesic);
        const auto spec = make_cone(std::move(surf), inc, Box::cube(1, 3.0));
        for (int trial = 0; trial < 10; ++trial) {
            Eigen::Vector2d x(uniform(-1.5, 1.5), uniform(-1.5, 1.5));
            const auto ev = immersion::evaluate(spec.surface.map, x, Ambient::Hyperboloid);
            CHECK(std::sqrt(ev.alpha_norm2) <= 1e-8);
        }
    }
    {
        const auto inc = UmbilicalInclusion::equidistant(0.7, 4);
        auto surf = surface_catalog("perturbed_nonminimal", {.a = 1, .b = 1, .eps = 0.1},
                                    inc.model_coord_dim());
        const auto spec = make_cone(std::move(surf), inc, Box::cube(1, 3.0));
        const auto rep = check_minimal(spec, 16);
        CHECK(rep.max_model_mean_curvature > 1e-3);
        CHECK(rep.max_projected_mean_curvature > 1e-3);
    }
}

TEST_CASE("alpha scaling along fibers") {
    const auto spec = default_cone();
    const auto g = cone_map(spec);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::Vector2d x(uniform(-1.2, 1.2), uniform(-1.2, 1.2));
        const double t = uniform(-1.5, 1.5);
        Eigen::Vector3d xt(x[0], x[1], t);
        const auto ev = immersion::evaluate(g, xt);
        const double r = radius_r(spec, one(t));
        const double ag2 = surface_alpha_norm2(spec, x);
        CHECK(ev.alpha_norm2 == doctest::Approx(ag2 / (r * r)).epsilon(1e-4));
    }
}

TEST_CASE("scalar curvature three ways") {
    const auto spec = default_cone();
    const auto g = cone_map(spec);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::Vector2d x(uniform(-1.2, 1.2), uniform(-1.2, 1.2));
        const double t = uniform(-1.5, 1.5);
        Eigen::Vector3d xt(x[0], x[1], t);
        const double s_formula = scalar_curvature_formula(spec, x, one(t));
        const double s_gauss = immersion::scalar_curvature_gauss(immersion::evaluate(g, xt));
        const double s_intr = immersion::scalar_curvature_intrinsic(g, xt);
        CHECK(std::fabs(s_formula - s_gauss) <= 1e-4 * std::fabs(s_formula));
        CHECK(std::fabs(s_formula - s_intr) <= 1e-4 * std::fabs(s_formula));
    }
}

TEST_CASE("scalar curvature of the totally geodesic cone is -6") {
    const auto inc = UmbilicalInclusion::equidistant(0.7, 4);
    auto surf = surface_catalog("helicoid_h3", {.a = 1, .b = 0}, inc.model_coord_dim());
    const auto spec = make_cone(std::move(surf), inc, Box::cube(1, 3.0));
    const auto g = cone_map(spec);
    CHECK(scalar_curvature_formula(spec, Eigen::Vector2d(0.3, 0.4), one(0.8)) ==
          doctest::Approx(-6.0).epsilon(1e-10));
    const auto ev = immersion::evaluate(g, Eigen::Vector3d(0.3, 0.4, 0.8));
    CHECK(immersion::scalar_curvature_gauss(ev) == doctest::Approx(-6.0).epsilon(1e-6));
}

TEST_CASE("curvature boundedness dichotomy along fibers") {
    // Equidistant: |s| <= 6 + |alpha_g|^2 / (1 - tanh^2 d).
    const double d = 0.7;
    const auto spec = default_cone(d);
    const Eigen::Vector2d x(0.5, -0.3);
    const double ag2 = surface_alpha_norm2(spec, x);
    const double bound = 6.0 + ag2 / (1.0 - std::pow(std::tanh(d), 2));
    for (double t = -2.9; t <= 2.9; t += 0.1)
        CHECK(std::fabs(scalar_curvature_formula(spec, x, one(t))) <= bound + 1e-3);

    // Horosphere: s(t) = -6 - |alpha_g|^2 e^{2t}, unbounded.
    const auto horo = horosphere_cone();
    const Eigen::Vector2d y(0.8, 0.4);
    const double bg2 = surface_alpha_norm2(horo, y);
    CHECK(bg2 > 1e-4);
    for (double t : {-1.0, 0.0, 1.0, 2.0, 2.8}) {
        const double s = scalar_curvature_formula(horo, y, one(t));
        CHECK(s == doctest::Approx(-6.0 - bg2 * std::exp(2.0 * t)).epsilon(1e-10));
    }
}

TEST_CASE("immersion criterion") {
    CHECK(immersion_criterion(default_cone()).immersion_everywhere);
    CHECK(immersion_criterion(horosphere_cone()).immersion_everywhere);
    const auto crit = immersion_criterion(sphere_cone(1.0));
    CHECK_FALSE(crit.immersion_everywhere);
    REQUIRE(crit.degenerate_t1.has_value());
    CHECK(*crit.degenerate_t1 == doctest::Approx(1.0).epsilon(1e-12));

    // Rank detection agrees: evaluating at the degenerate fiber time throws.
    const auto g = cone_map(sphere_cone(1.0));
    CHECK_THROWS_AS(immersion::evaluate(g, Eigen::Vector3d(0.1, 0.1, 1.0)),
                    DegeneracyError);
    CHECK_NOTHROW(immersion::evaluate(g, Eigen::Vector3d(0.1, 0.1, 0.2)));
}

TEST_CASE("cone spec validation") {
    const auto inc = UmbilicalInclusion::equidistant(0.7, 4);
    CHECK_THROWS_AS(make_cone(surface_catalog("euclidean_helicoid", {}, 3), inc,
                              Box::cube(1, 3.0)),
                    DimensionError);
    CHECK_THROWS_AS(make_cone(surface_catalog("euclidean_helicoid", {}, 4), inc,
                              Box::cube(1, 3.0)),
                    PreconditionError);
    CHECK_THROWS_AS(make_cone(surface_catalog("helicoid_h3", {}, 4), inc, Box::cube(2, 3.0)),
                    DimensionError);
    CHECK_THROWS_AS(surface_catalog("unknown_surface", {}, 4), PreconditionError);
}

TEST_CASE("config text round descriptor") {
    const auto spec = default_cone();
    const std::string text = cone_config_text(spec, {});
    CHECK(text.find("surface=helicoid_h3") != std::string::npos);
    CHECK(text.find("inclusion=equidistant") != std::string::npos);
    CHECK(text.find("d=0.7") != std::string::npos);
    CHECK(text.find("nu=1") != std::string::npos);
}
