#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spc/quadrature.hpp"

using spc::integrate_adaptive;
using spc::QuadratureConfig;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("polynomials are integrated to machine precision") {
    QuadratureConfig cfg;
    // GK15 is exact for polynomials well beyond cubic order.
    auto r = integrate_adaptive([](double x) { return 3.0 * x * x; }, 0.0, 2.0, cfg);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(8.0).epsilon(1e-14));

    r = integrate_adaptive([](double x) { return x * x * x - x + 0.5; }, -1.0, 3.0, cfg);
    CHECK(r.value == doctest::Approx(18.0).epsilon(1e-14));
}

TEST_CASE("known transcendental integrals") {
    QuadratureConfig cfg;
    auto r = integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, 40.0, cfg);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

    r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi, cfg);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

    // Gaussian bump over a wide window.
    r = integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0, cfg);
    CHECK(r.value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
}

TEST_CASE("oscillatory integrand needs the period hint") {
    QuadratureConfig cfg;
    const double w = 80.0;
    // ∫_0^1 cos(w x) dx = sin(w)/w
    auto r = integrate_adaptive([w](double x) { return std::cos(w * x); }, 0.0, 1.0, cfg,
                                2.0 * kPi / w);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sin(w) / w).epsilon(1e-10));
}

TEST_CASE("split points capture an interior kink") {
    QuadratureConfig cfg;
    auto f = [](double x) { return std::abs(x - 0.3); };
    auto r = integrate_adaptive(f, 0.0, 1.0, cfg, 0.0, {0.3});
    // ∫ |x-0.3| dx over [0,1] = 0.3²/2 + 0.7²/2
    CHECK(r.value == doctest::Approx(0.045 + 0.245).epsilon(1e-13));
    CHECK(r.converged);
}

TEST_CASE("error estimate bounds the true error") {
    QuadratureConfig cfg;
    auto f = [](double x) { return std::cos(12.0 * x) * std::exp(-0.5 * x); };
    auto r = integrate_adaptive(f, 0.0, 10.0, cfg, 2.0 * kPi / 12.0);
    // exact: ∫ e^{-x/2} cos(12x) dx = [e^{-x/2}(-cos(12x)/2 + 12 sin(12x))]/(0.25+144)
    const double a = 0.5, w = 12.0;
    auto anti = [&](double x) {
        return std::exp(-a * x) * (-a * std::cos(w * x) + w * std::sin(w * x)) / (a * a + w * w);
    };
    const double exact = anti(10.0) - anti(0.0);
    CHECK(std::abs(r.value - exact) <= std::max(r.error, 1e-14));
}

TEST_CASE("budget exhaustion is reported, not hidden") {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 4;
    cfg.rel_tol = 1e-14;
    cfg.abs_tol = 1e-300;
    const double w = 900.0;
    auto r = integrate_adaptive([w](double x) { return std::cos(w * x * x); }, 0.0, 3.0, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.error > 0.0);
}

TEST_CASE("degenerate and reversed intervals") {
    QuadratureConfig cfg;
    auto one = [](double) { return 1.0; };
    auto r = integrate_adaptive(one, 2.0, 2.0, cfg);
    CHECK(r.value == 0.0);
    CHECK(r.converged);
}
