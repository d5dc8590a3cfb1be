#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hypercone/hyperbolic.hpp"

using namespace hypercone;
using namespace hypercone::hyperbolic;
using lorentz::minkowski_dot;
using lorentz::minkowski_norm2;

namespace {

std::mt19937_64 rng(40902);

Vec make(std::initializer_list<double> vals) {
    Vec v(static_cast<int>(vals.size()));
    int i = 0;
    for (double x : vals) v[i++] = x;
    return v;
}

HPoint random_point(int dim, double spread = 1.0) {
    std::normal_distribution<double> dist(0.0, spread);
    Vec x(dim);
    for (int i = 1; i < dim; ++i) x[i] = dist(rng);
    x[0] = std::sqrt(1.0 + x.tail(dim - 1).squaredNorm());
    return HPoint::from(x);
}

Vec random_tangent(const HPoint& p, double len) {
    std::normal_distribution<double> dist(0.0, 1.0);
    const int dim = p.ambient_dim();
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = dist(rng);
    v += minkowski_dot(v, p.coords()) * p.coords();  // remove the p-component
    const double n = std::sqrt(minkowski_norm2(v));
    return v * (len / n);
}

}  // namespace

TEST_CASE("HPoint constraint and renormalization") {
    const HPoint p = HPoint::from(make({1.0 + 3e-8, 0, 0, 0, 0}));
    CHECK(std::fabs(minkowski_norm2(p.coords()) + 1.0) <= 1e-10);
    CHECK_THROWS_AS(HPoint::from(make({0.5, 1, 0, 0, 0})), ModelError);   // spacelike
    CHECK_THROWS_AS(HPoint::from(make({-1.0, 0, 0, 0, 0})), ModelError);  // lower sheet
}

TEST_CASE("exp of the zero vector is the base point") {
    const HPoint p = random_point(5);
    const HPoint q = exp_point(p, Vec::Zero(5));
    CHECK((p.coords() - q.coords()).norm() == doctest::Approx(0.0));
}

TEST_CASE("exp of a unit tangent at the apex") {
    const HPoint p = HPoint::from(make({1, 0, 0, 0, 0}));
    const Vec v = make({0, 1, 0, 0, 0});
    const HPoint q = exp_point(p, v);
    CHECK(q.coords()[0] == doctest::Approx(1.5430806348152437).epsilon(1e-12));
    CHECK(q.coords()[1] == doctest::Approx(1.1752011936438014).epsilon(1e-12));
    CHECK(dist(p, q) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exp stays on the hyperboloid and inverts against dist") {
    for (int trial = 0; trial < 100; ++trial) {
        const HPoint p = random_point(5);
        const double len = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
        const Vec v = random_tangent(p, len);
        const HPoint q = exp_point(p, v);
        CHECK(std::fabs(minkowski_norm2(q.coords()) + 1.0) <= 1e-12 * (1.0 + q.coords().squaredNorm()));
        CHECK(dist(p, q) == doctest::Approx(len).epsilon(1e-10));
    }
}

TEST_CASE("exp rejects non-tangent vectors") {
    const HPoint p = HPoint::from(make({1, 0, 0, 0, 0}));
    CHECK_THROWS_AS(exp_point(p, make({1, 1, 0, 0, 0})), PreconditionError);
}

TEST_CASE("tangent vectors are validated at their base point") {
    const HPoint p = random_point(5);
    const Vec v = random_tangent(p, 2.0);
    const HTangent tv = make_tangent(p, v);
    CHECK(std::fabs(minkowski_dot(tv.base.coords(), tv.vec)) <= 1e-10 * (1.0 + v.norm()));
    CHECK_THROWS_AS(make_tangent(p, p.coords()), PreconditionError);
    CHECK_THROWS_AS(make_tangent(p, make({1, 0})), DimensionError);
}

TEST_CASE("dist basics and triangle inequality") {
    const HPoint p = random_point(5);
    CHECK(dist(p, p) == doctest::Approx(0.0));
    for (int trial = 0; trial < 200; ++trial) {
        const HPoint a = random_point(5), b = random_point(5), c = random_point(5);
        CHECK(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-10);
    }
}

TEST_CASE("umbilic data table") {
    const int n = 4;
    const auto eq = UmbilicalInclusion::equidistant(0.7, n);
    const auto horo = UmbilicalInclusion::horosphere(n);
    const auto sph = UmbilicalInclusion::geodesic_sphere(1.0, n);
    const auto tg = UmbilicalInclusion::totally_geodesic(n);

    CHECK(eq.mean_curvature_norm() == doctest::Approx(std::tanh(0.7)));
    CHECK(eq.curvature() == doctest::Approx(-1.0 / std::pow(std::cosh(0.7), 2)));
    CHECK(horo.mean_curvature_norm() == doctest::Approx(1.0));
    CHECK(horo.curvature() == doctest::Approx(0.0));
    CHECK(sph.mean_curvature_norm() == doctest::Approx(1.3130352854993312).epsilon(1e-12));
    CHECK(sph.curvature() == doctest::Approx(1.0 / std::pow(std::sinh(1.0), 2)));
    CHECK(tg.mean_curvature_norm() == doctest::Approx(0.0));
    CHECK(tg.curvature() == doctest::Approx(-1.0));

    // Classification: |H| < 1 iff equidistant or totally geodesic, etc.
    CHECK(eq.mean_curvature_norm() < 1.0);
    CHECK(tg.mean_curvature_norm() < 1.0);
    CHECK(horo.mean_curvature_norm() == 1.0);
    CHECK(sph.mean_curvature_norm() > 1.0);
}

TEST_CASE("equidistant inclusion closed-form identities") {
    const int n = 4;
    const auto inc = UmbilicalInclusion::equidistant(0.9, n);
    for (int trial = 0; trial < 50; ++trial) {
        std::normal_distribution<double> dist01(0.0, 0.8);
        Vec model(n);  // H^{n-1} point, n coords
        for (int i = 1; i < n; ++i) model[i] = dist01(rng);
        model[0] = std::sqrt(1.0 + model.tail(n - 1).squaredNorm());
        const auto [pt, frame] = inc.include(model);
        CHECK(std::fabs(minkowski_norm2(pt.coords()) + 1.0) <= 1e-12);
        REQUIRE(frame.size() == 1);
        CHECK(minkowski_norm2(frame[0]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(minkowski_dot(pt.coords(), frame[0]) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("horosphere inclusion induces the flat metric") {
    const int n = 4;
    const auto inc = UmbilicalInclusion::horosphere(n);
    const auto chart = inc.chart_map(deriv::Box::cube(n - 1, 2.0));
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 30; ++trial) {
        Eigen::VectorXd y(n - 1);
        for (int i = 0; i < n - 1; ++i) y[i] = u(rng);
        const Eigen::MatrixXd g = immersion::metric_at(chart, y, immersion::Ambient::Hyperboloid);
        CHECK((g - Eigen::MatrixXd::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("equidistant inclusion tends to the totally geodesic one as d -> 0") {
    const int n = 4;
    Vec model = make({std::sqrt(2.0), 0.6, 0.8, 0.0});
    const auto tg = UmbilicalInclusion::totally_geodesic(n);
    const auto [pt_tg, frame_tg] = tg.include(model);
    for (double d : {1e-3, 1e-5, 1e-7}) {
        const auto inc = UmbilicalInclusion::equidistant(d, n);
        const auto [pt, frame] = inc.include(model);
        CHECK((pt.coords() - pt_tg.coords()).norm() <= 4.0 * d);
    }
}

TEST_CASE("umbilic check: equidistant at arccosh(2)") {
    const double d = std::acosh(2.0);
    CHECK(std::tanh(d) == doctest::Approx(0.8660254037844386).epsilon(1e-12));
    const auto inc = UmbilicalInclusion::equidistant(d, 4);
    const auto rep = umbilic_check(inc, 4);
    CHECK(rep.max_shape_dev <= 1e-8);
    CHECK(rep.max_extra_shape <= 1e-8);
    CHECK(rep.max_curvature_dev <= 1e-8);
    CHECK(rep.max_frame_dev <= 1e-10);
}

TEST_CASE("umbilic check: totally geodesic has vanishing shape operator") {
    const auto inc = UmbilicalInclusion::totally_geodesic(4);
    const auto rep = umbilic_check(inc, 4);
    CHECK(rep.max_shape_dev <= 1e-10);  // A - 0*I
    CHECK(rep.max_curvature_dev <= 1e-8);
}

TEST_CASE("umbilic check: geodesic sphere and horosphere") {
    const auto sph = umbilic_check(UmbilicalInclusion::geodesic_sphere(1.0, 4), 4, 0.4);
    CHECK(sph.max_shape_dev <= 1e-8);
    CHECK(sph.max_curvature_dev <= 1e-8);
    const auto horo = umbilic_check(UmbilicalInclusion::horosphere(4), 4);
    CHECK(horo.max_shape_dev <= 1e-8);
    CHECK(horo.max_curvature_dev <= 1e-8);
}

TEST_CASE("codimension-2 chain inclusion is umbilical with constant extra normal") {
    const auto inc = UmbilicalInclusion::equidistant(0.7, 5, 2);
    CHECK(inc.model_dim() == 3);
    const auto rep = umbilic_check(inc, 3);
    CHECK(rep.max_shape_dev <= 1e-8);
    CHECK(rep.max_extra_shape <= 1e-8);
    CHECK(rep.max_frame_dev <= 1e-10);
    CHECK(rep.max_curvature_dev <= 1e-8);
}

TEST_CASE("include validates the intrinsic model point") {
    const auto inc = UmbilicalInclusion::equidistant(0.7, 4);
    CHECK_THROWS_AS(inc.include(make({1.0, 1.0, 1.0, 1.0})), PreconditionError);
    const auto sph = UmbilicalInclusion::geodesic_sphere(1.0, 4);
    CHECK_THROWS_AS(sph.include(make({2.0, 0.0, 0.0, 0.0})), PreconditionError);
}
