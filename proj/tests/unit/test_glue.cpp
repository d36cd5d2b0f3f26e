#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "orbidegen/errors.hpp"
#include "orbidegen/glue.hpp"

using namespace orbidegen;
using namespace orbidegen::glue;

namespace {

double rel_error(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff()); }

// t(x) = x + 2x^2 - 3 on R, chart at x = 0 with Q = 1
Model divergent() {
    Model m;
    m.name = "divergent";
    m.system.name = "divergent";
    m.system.evaluate = [](const Vec& x) {
        Vec t(1);
        t[0] = x[0] + 2 * x[0] * x[0] - 3;
        return t;
    };
    m.system.derivative = [](const Vec& x) -> Mat { return Mat::Constant(1, 1, 1 + 4 * x[0]); };
    m.chart.param = [](const Vec&) { return Vec::Zero(1); };
    m.chart.right_inverse = [](const Vec&) -> Mat { return Mat::Identity(1, 1); };
    m.chart.sample = [](std::mt19937_64&) { return Vec::Zero(1); };
    return m;
}

}  // namespace

TEST_SUITE("glue") {

TEST_CASE("finite differences agree with analytic Jacobians") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 1.0);
    for (const auto& m : builtin_models()) {
        CAPTURE(m.name);
        for (int i = 0; i < 100; ++i) {
            Vec x(m.system.N);
            for (int j = 0; j < m.system.N; ++j) x[j] = n(rng);
            CHECK(rel_error(fd_jacobian(m.system, x), m.system.derivative(x)) <= 1e-5);
        }
    }
}

TEST_CASE("sphere correction") {
    auto m = sphere_model(1.05);
    Vec s(2);
    s << 1.0, 0.5;
    auto c = correct(m.system, m.chart, s, 1e-10, 50);
    CHECK(c.residual <= 1e-10);
    CHECK(c.history.size() <= 51);
    CHECK(std::abs(c.xi.norm() - 0.105) <= 1e-9);
    CHECK(c.eps1 == doctest::Approx(0.1025).epsilon(1e-12));
    CHECK(c.xi_bound_ok);
    CHECK(std::abs(c.x.norm() - 1.0) <= 1e-10);
    for (std::size_t i = 1; i < c.history.size(); ++i) CHECK(c.history[i].residual <= c.history[i - 1].residual);
}

TEST_CASE("node chart derivative bound") {
    auto m = node_model(0.25);
    auto k = estimate_constants(m.system, m.chart, 200, 3);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        Vec s = m.chart.sample(rng);
        Vec eta = Vec::Constant(1, std::uniform_real_distribution<double>(-1, 1)(rng) * k.constants.delta1);
        CHECK(chart_map(m.system, m.chart, s, eta).dphi_norm <= 2.0);
    }
}

TEST_CASE("constants are stable under resampling") {
    auto m = node_model(0.25);
    const double a = quadratic_remainder_constant(m.system, m.chart, 100, 1);
    const double b = quadratic_remainder_constant(m.system, m.chart, 1000, 1);
    CHECK(a > 0.0);
    CHECK(b <= 2.0 * a);
    CHECK(a <= 2.0 * b);
}

TEST_CASE("linear model") {
    auto m = linear_model();
    CHECK(quadratic_remainder_constant(m.system, m.chart, 100) <= 1e-6);
    auto k = estimate_constants(m.system, m.chart, 100);
    CHECK(k.constants.eps1 <= 1e-9);
    CHECK(k.ordering_ok);
    auto r = run_demo(m, 100);
    REQUIRE(r.correction.has_value());
    CHECK(r.correction->residual <= 1e-10);
    CHECK(r.injectivity.collisions.empty());
}

TEST_CASE("demo reports") {
    for (const auto& m : {sphere_model(1.05), node_model(0.25)}) {
        CAPTURE(m.name);
        auto r = run_demo(m, 200);
        REQUIRE(r.correction.has_value());
        CHECK(r.correction->residual <= 1e-10);
        CHECK(r.probes == 100);
        CHECK(r.dphi_violations == 0);
        CHECK(r.injectivity.pairs == 500);
        CHECK(r.injectivity.collisions.empty());
        CHECK(r.constants.conditions.size() == 9);
    }
    CHECK_FALSE(run_demo(sphere_model(1.05), 200).constants.ordering_ok);
}

TEST_CASE("small node parameters stay injective") {
    for (double tau : {0.1, 0.01}) {
        auto m = node_model(tau);
        auto rep = injectivity_probe(m.system, m.chart, 300, 0.01, 4);
        CHECK(rep.collisions.empty());
    }
}

TEST_CASE("degenerate right inverse produces collisions") {
    auto m = node_model(0.25);
    m.chart.right_inverse = [](const Vec&) -> Mat { return Mat::Zero(2, 1); };
    auto rep = injectivity_probe(m.system, m.chart, 100, 0.1, 1);
    CHECK_FALSE(rep.collisions.empty());
}

TEST_CASE("non-finite evaluator") {
    auto m = node_model(0.25);
    m.system.evaluate = [](const Vec&) { return Vec::Constant(1, std::numeric_limits<double>::quiet_NaN()); };
    CHECK_THROWS_AS(evaluate_checked(m.system, Vec::Zero(2)), NumericError);
    CHECK_THROWS_AS(estimate_constants(m.system, m.chart, 10), NumericError);
}

TEST_CASE("divergent iteration") {
    auto m = divergent();
    try {
        correct(m.system, m.chart, Vec::Zero(1), 1e-10, 50);
        FAIL("expected NonConvergence");
    } catch (const NonConvergence& e) {
        CHECK(e.residuals().size() >= 2);
        CHECK(e.residuals().back() > e.residuals().front());
    }
}

TEST_CASE("invalid arguments") {
    auto m = sphere_model();
    CHECK_THROWS_AS(estimate_constants(m.system, m.chart, 5), DomainError);
    Vec s(2);
    s << 1.0, 0.5;
    CHECK_THROWS_AS(correct(m.system, m.chart, s, 0.0, 10), DomainError);
    m.chart.right_inverse = [](const Vec&) -> Mat { return Mat::Zero(3, 1); };
    CHECK_THROWS_AS(correct(m.system, m.chart, s, 1e-10, 10), DomainError);
    CHECK_THROWS_AS(model_by_name("torus", 0.25, 1.0), ValidationError);
}

}
