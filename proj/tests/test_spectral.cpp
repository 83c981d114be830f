#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <vector>

#include "spc/spectral.hpp"

using namespace spc;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// Reference values computed with an independent high-precision integrator
// (mpmath/scipy, 50-digit working precision) and frozen here.
constexpr double kW0Gauss = 3.0;
constexpr double kW0Semi = 4.71238898038;
constexpr double kW0Lor = 2.85782057317; // half-line mass of the clipped profile
constexpr double kKGauss1 = 1.61181491143;
constexpr double kKGauss2Pi = 2.40258727908;
constexpr double kKSemi0 = 4.71238898038;
constexpr double kKSemi1 = 2.53657862983;
constexpr double kKSemi2Pi = 4.04833796461;
// Full-line closed form for the Lorentzian (ignores the clipped e<0 mass).
constexpr double kKLorClosed2Pi = 1.16898341213;
// Half-line truth for the Lorentzian kernel at selected arguments.
constexpr double kKLorTrue1 = 1.3417618229;
constexpr double kKLorTrue2Pi = 1.16332592235;
constexpr double kKLorTrue10 = -0.564157917472;
constexpr double kKLorTrue333 = -0.0065053460926;
} // namespace

TEST_CASE("profile values at the peak and one width out") {
    auto g = SpectralDensity::gaussian();
    auto l = SpectralDensity::lorentzian();
    // gaussian: s/(γ√π)·exp(0) at e=ω
    CHECK(g.evaluate(1.0) == doctest::Approx(11.28379167).epsilon(1e-8));
    CHECK(g.evaluate(1.15) == doctest::Approx(11.28379167 * std::exp(-1.0)).epsilon(1e-8));
    // lorentzian: s/(πγ) at e=ω
    CHECK(l.evaluate(1.0) == doctest::Approx(6.366197724).epsilon(1e-8));
    CHECK(l.evaluate(1.15) == doctest::Approx(6.366197724 / 2.0).epsilon(1e-8));

    // semi-elliptic: (s/p)·sqrt(p − (e−ω)²) on its footprint, zero outside
    auto se = SpectralDensity::semi_elliptic();
    const double p = 4.0 * 0.15 * 0.15 / 3.0;
    const double a = std::sqrt(p);
    CHECK(se.evaluate(1.0 + a) <= 1e-5); // edge, up to rounding of 1+a
    CHECK(se.evaluate(1.0 + 2.0 * a) == 0.0);
    CHECK(se.evaluate(1.0) == doctest::Approx(3.0 / a).epsilon(1e-12));
}

TEST_CASE("evaluate rejects invalid frequencies") {
    auto g = SpectralDensity::gaussian();
    CHECK_THROWS_AS(g.evaluate(-0.5), std::domain_error);
    CHECK_THROWS_AS(g.evaluate(std::nan("")), std::domain_error);
    CHECK(g.evaluate(0.0) >= 0.0);
}

TEST_CASE("factory validation") {
    CHECK_THROWS_AS(SpectralDensity::gaussian(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::gaussian(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::gaussian(1.0, 0.15, -3.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::tabulated({}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::tabulated({{0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralDensity::tabulated({{1.0, 1.0}, {0.5, 1.0}}),
                    std::invalid_argument); // unsorted
    CHECK_THROWS_AS(SpectralDensity::tabulated({{0.0, 1.0}, {1.0, -0.1}}),
                    std::invalid_argument); // negative density
}

TEST_CASE("total mass is the closed-form zeroth moment") {
    CHECK(SpectralDensity::gaussian().total_mass() == doctest::Approx(kW0Gauss).epsilon(1e-12));
    CHECK(SpectralDensity::semi_elliptic().total_mass() ==
          doctest::Approx(kW0Semi).epsilon(1e-10));
    CHECK(SpectralDensity::lorentzian().total_mass() == doctest::Approx(kW0Lor).epsilon(1e-10));
}

TEST_CASE("cumulative is a valid distribution function") {
    for (auto sd : {SpectralDensity::gaussian(), SpectralDensity::semi_elliptic(),
                    SpectralDensity::lorentzian()}) {
        CHECK(sd.cumulative(0.0) == doctest::Approx(0.0).epsilon(1e-14));
        double prev = 0.0;
        for (double e = 0.1; e <= 5.0; e += 0.1) {
            const double c = sd.cumulative(e);
            CHECK(c >= prev - 1e-14);
            prev = c;
        }
        CHECK(sd.cumulative(1e6) == doctest::Approx(sd.total_mass()).epsilon(1e-6));
    }
}

TEST_CASE("support bounds hold the requested tail mass") {
    for (auto sd : {SpectralDensity::gaussian(), SpectralDensity::lorentzian()}) {
        const double tm = 1e-8;
        auto [lo, hi] = sd.support_bounds(tm);
        CHECK(lo >= 0.0);
        CHECK(hi > lo);
        const double below = sd.cumulative(lo);
        const double beyond = sd.total_mass() - sd.cumulative(hi);
        CHECK(below <= tm * sd.total_mass() * 0.5 * 1.01 + 1e-14);
        CHECK(beyond <= tm * sd.total_mass() * 0.5 * 1.01 + 1e-14);
    }
    // semi-elliptic support is exactly the ellipse footprint
    auto se = SpectralDensity::semi_elliptic();
    auto [lo, hi] = se.support_bounds(1e-10);
    const double a = std::sqrt(4.0 * 0.15 * 0.15 / 3.0);
    CHECK(lo == doctest::Approx(1.0 - a).epsilon(1e-12));
    CHECK(hi == doctest::Approx(1.0 + a).epsilon(1e-12));
}

TEST_CASE("gaussian support scales with the width parameter") {
    // Frozen half-width in units of γ_p for three tail settings.
    struct Row {
        double tail, half_width;
    };
    for (auto [tail, hw] : {Row{1e-12, 5.04203}, Row{1e-10, 4.57282}, Row{1e-8, 4.05224}}) {
        auto g = SpectralDensity::gaussian();
        auto [lo, hi] = g.support_bounds(tail);
        CHECK((hi - 1.0) / 0.15 == doctest::Approx(hw).epsilon(1e-4));
        CHECK((1.0 - lo) / 0.15 == doctest::Approx(hw).epsilon(1e-4));
    }
}

TEST_CASE("resolved bounds cap only the heavy-tailed family") {
    auto g = SpectralDensity::gaussian();
    auto l = SpectralDensity::lorentzian();
    auto gs = g.support_bounds(1e-10);
    auto gr = g.resolved_bounds(1e-10);
    CHECK(gr.first == gs.first);
    CHECK(gr.second == gs.second);
    auto lr = l.resolved_bounds(1e-10);
    CHECK(lr.second == doctest::Approx(301.0).epsilon(1e-12)); // ω + 2000 γ
    CHECK(lr.second < l.support_bounds(1e-10).second);
}

TEST_CASE("spectral moments match closed-form references") {
    QuadratureConfig cfg;
    auto g = SpectralDensity::gaussian();
    auto m = g.total_weight(cfg);
    CHECK(m.weight_0 == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(m.weight_1 == doctest::Approx(3.0).epsilon(1e-9)); // s·ω
    CHECK(m.weight_2 == doctest::Approx(3.03375).epsilon(1e-9)); // s(ω²+γ²/2)
    CHECK_FALSE(m.truncated);
    CHECK(m.err_0 < 1e-6);

    auto se = SpectralDensity::semi_elliptic();
    auto ms = se.total_weight(cfg);
    const double p = 4.0 * 0.15 * 0.15 / 3.0;
    CHECK(ms.weight_0 == doctest::Approx(0.5 * kPi * 3.0).epsilon(1e-9));
    CHECK(ms.weight_1 == doctest::Approx(0.5 * kPi * 3.0).epsilon(1e-9));
    CHECK(ms.weight_2 == doctest::Approx(0.5 * kPi * 3.0 * (1.0 + p / 4.0)).epsilon(1e-9));
    CHECK_FALSE(ms.truncated);

    auto ml = SpectralDensity::lorentzian().total_weight(cfg);
    CHECK(ml.truncated); // power-law tail: higher moments diverge on the full line
    CHECK(ml.weight_0 == doctest::Approx(2.857343108378).epsilon(1e-8));
}

TEST_CASE("closed-form kernels match frozen references") {
    QuadratureConfig cfg;
    auto g = SpectralDensity::gaussian();
    CHECK(g.cosine_kernel(0.0).value == doctest::Approx(kW0Gauss).epsilon(1e-12));
    CHECK(g.cosine_kernel(1.0).value == doctest::Approx(kKGauss1).epsilon(1e-10));
    CHECK(g.cosine_kernel(kTwoPi).value == doctest::Approx(kKGauss2Pi).epsilon(1e-10));

    auto se = SpectralDensity::semi_elliptic();
    CHECK(se.cosine_kernel(0.0).value == doctest::Approx(kKSemi0).epsilon(1e-10));
    CHECK(se.cosine_kernel(1.0).value == doctest::Approx(kKSemi1).epsilon(1e-10));
    CHECK(se.cosine_kernel(kTwoPi).value == doctest::Approx(kKSemi2Pi).epsilon(1e-10));

    auto l = SpectralDensity::lorentzian();
    auto kl = l.cosine_kernel(kTwoPi, KernelMethod::closed_form, cfg);
    CHECK(kl.value == doctest::Approx(kKLorClosed2Pi).epsilon(1e-10));
    // The closed form ignores the clipped e<0 mass; the reported error
    // covers the gap to the half-line truth.
    CHECK(std::abs(kl.value - kKLorTrue2Pi) <= kl.error);
}

TEST_CASE("quadrature kernel values carry honest error bounds") {
    QuadratureConfig cfg;
    auto l = SpectralDensity::lorentzian();
    struct Row {
        double x, truth;
    };
    for (auto [x, truth] : {Row{1.0, kKLorTrue1}, Row{kTwoPi, kKLorTrue2Pi},
                            Row{10.0, kKLorTrue10}, Row{33.3, kKLorTrue333}}) {
        auto k = l.cosine_kernel(x, KernelMethod::quadrature, cfg);
        CHECK(std::abs(k.value - truth) <= k.error);
    }
}

TEST_CASE("kernel symmetry and boundedness") {
    QuadratureConfig cfg;
    for (auto sd : {SpectralDensity::gaussian(), SpectralDensity::semi_elliptic(),
                    SpectralDensity::lorentzian()}) {
        const double k0 = sd.cosine_kernel(0.0).value;
        for (double x : {0.3, 1.0, 2.5, 7.0, 19.0, 44.0}) {
            const auto plus = sd.cosine_kernel(x);
            const auto minus = sd.cosine_kernel(-x);
            CHECK(plus.value == minus.value);
            CHECK(std::abs(plus.value) <= k0 * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("quadrature agrees with the closed form across the trace window") {
    QuadratureConfig cfg;
    for (auto sd : {SpectralDensity::gaussian(), SpectralDensity::semi_elliptic()}) {
        for (int i = 0; i <= 30; ++i) {
            const double x = 2.0 * i;
            const auto qc = sd.cosine_kernel(x, KernelMethod::quadrature, cfg);
            const auto cf = sd.cosine_kernel(x, KernelMethod::closed_form, cfg);
            const double tol = std::max(1e-8, qc.error + cf.error);
            CHECK(std::abs(qc.value - cf.value) <= tol);
        }
    }
}

TEST_CASE("automatic kernel method picks closed forms for analytic families") {
    CHECK(resolve_kernel_method(SpectralDensity::gaussian(), KernelMethod::automatic) ==
          KernelMethod::closed_form);
    CHECK(resolve_kernel_method(SpectralDensity::semi_elliptic(), KernelMethod::automatic) ==
          KernelMethod::closed_form);
    CHECK(resolve_kernel_method(SpectralDensity::lorentzian(), KernelMethod::automatic) ==
          KernelMethod::closed_form);
    std::vector<std::array<double, 2>> pts{{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}};
    CHECK(resolve_kernel_method(SpectralDensity::tabulated(pts), KernelMethod::automatic) ==
          KernelMethod::quadrature);
}

TEST_CASE("tabulated density reproduces a sampled gaussian") {
    auto g = SpectralDensity::gaussian();
    auto [lo, hi] = g.support_bounds(1e-12);
    const int n = 2048;
    std::vector<std::array<double, 2>> pts;
    pts.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double e = lo + (hi - lo) * i / n;
        pts.push_back({e, g.evaluate(e)});
    }
    auto tab = SpectralDensity::tabulated(pts);
    CHECK(tab.family() == SpectralFamily::tabulated);
    CHECK(tab.peak_frequency() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(tab.total_mass() == doctest::Approx(3.0).epsilon(1e-6));

    for (double x : {0.0, 0.7, 1.0, kTwoPi, 15.0}) {
        const double kt = tab.cosine_kernel(x).value;
        const double kg = g.cosine_kernel(x).value;
        CHECK(std::abs(kt - kg) <= 1e-4);
    }
    CHECK_THROWS_AS(tab.cosine_kernel(1.0, KernelMethod::closed_form, QuadratureConfig{}),
                    std::invalid_argument);
}

TEST_CASE("tabulated moments are exact piecewise-polynomial integrals") {
    // triangle on [0,2] peaking at 1: mass 1, first moment 1, second moment 7/6
    std::vector<std::array<double, 2>> pts{{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}};
    auto tab = SpectralDensity::tabulated(pts);
    auto m = tab.total_weight(QuadratureConfig{});
    CHECK(m.weight_0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.weight_1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.weight_2 == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
    CHECK_FALSE(m.truncated);
    CHECK(tab.cumulative(1.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("csv loading round-trips a table and rejects malformed input") {
    const std::string good = "/tmp/spc_test_table.csv";
    {
        std::ofstream out(good);
        out << "# piecewise-linear test profile\n";
        out << "e,h\n";
        out << "0.0,0.0\n0.5,2.0\n1.0,0.0\n";
    }
    auto tab = SpectralDensity::from_csv(good);
    CHECK(tab.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tab.evaluate(0.25) == doctest::Approx(1.0).epsilon(1e-14));
    std::remove(good.c_str());

    const std::string bad = "/tmp/spc_test_table_bad.csv";
    {
        std::ofstream out(bad);
        out << "e,h\n0.0,0.0\n0.5,oops\n";
    }
    CHECK_THROWS_AS(SpectralDensity::from_csv(bad), std::invalid_argument);
    std::remove(bad.c_str());
    CHECK_THROWS_AS(SpectralDensity::from_csv("/tmp/spc_no_such_file.csv"),
                    std::invalid_argument);
}
