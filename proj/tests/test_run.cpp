#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "spc/run.hpp"

using namespace spc;

namespace {

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

RunConfig small_trace_config() {
    RunConfig cfg;
    cfg.t_max = 3.0;
    cfg.dt = 0.5;
    cfg.tau_s = 1.0;
    return cfg;
}

} // namespace

TEST_CASE("trace output format and determinism") {
    const RunConfig cfg = small_trace_config();
    std::ostringstream out1, out2, diag;
    CHECK(run_trace(cfg, out1, diag) == 0);
    CHECK(run_trace(cfg, out2, diag) == 0);
    CHECK(out1.str() == out2.str()); // byte-identical reruns
    CHECK(first_line(out1.str()) == "t_scaled,intensity,exponent,n_pulses,err");

    // header + 7 grid points
    int lines = 0;
    for (char c : out1.str())
        if (c == '\n') ++lines;
    CHECK(lines == 8);
}

TEST_CASE("trace values round-trip through the full-precision formatter") {
    const RunConfig cfg = small_trace_config();
    std::ostringstream out, diag;
    REQUIRE(run_trace(cfg, out, diag) == 0);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line); // header
    std::getline(in, line); // t = 0
    double t, intensity, exponent, err;
    long n;
    REQUIRE(std::sscanf(line.c_str(), "%lg,%lg,%lg,%ld,%lg", &t, &intensity, &exponent, &n,
                        &err) == 5);
    CHECK(t == 0.0);
    CHECK(intensity == 1.0);
    CHECK(exponent == 0.0);
    CHECK(n == 0);
}

TEST_CASE("sweep output format, maxima diagnostics, determinism") {
    RunConfig cfg;
    cfg.sweep_lo = 5.9;
    cfg.sweep_hi = 6.5;
    cfg.sweep_step = 0.2;
    std::ostringstream out1, out2, diag1, diag2;
    CHECK(run_sweep(cfg, out1, diag1) == 0);
    CHECK(run_sweep(cfg, out2, diag2) == 0);
    CHECK(out1.str() == out2.str());
    CHECK(diag1.str() == diag2.str());
    CHECK(first_line(out1.str()) == "tau_s_scaled,P,converged,n_used");
    CHECK(diag1.str().find("maximum: tau_s=") != std::string::npos);
}

TEST_CASE("optimize reports the bracket and the refined point as JSON") {
    RunConfig cfg;
    cfg.bracket_lo = 5.0;
    cfg.bracket_hi = 7.5;
    std::ostringstream out, diag;
    CHECK(run_optimize(cfg, out, diag) == 0);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["bracket"][0].get<double>() == 5.0);
    CHECK(j["bracket"][1].get<double>() == 7.5);
    CHECK(j["tau_s"].get<double>() > 6.1);
    CHECK(j["tau_s"].get<double>() < 6.3);
    CHECK_FALSE(j["flat"].get<bool>());
}

TEST_CASE("optimize on a flat bracket returns the numerical exit code") {
    RunConfig cfg;
    cfg.bracket_lo = 0.52;
    cfg.bracket_hi = 0.55;
    std::ostringstream out, diag;
    CHECK(run_optimize(cfg, out, diag) == 2);
    CHECK(diag.str().find("flat bracket") != std::string::npos);
}

TEST_CASE("check emits the pass summary on the seeded ensemble") {
    RunConfig cfg;
    cfg.schedules = 24;
    std::ostringstream out, diag;
    CHECK(run_check(cfg, out, diag) == 0);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["seed"].get<unsigned long>() == 42);
    CHECK(j["modes"].get<int>() == 64);
    CHECK(j["schedules"].get<int>() == 24);
    CHECK(j["failures"].get<int>() == 0);
    CHECK(j["pass"].get<bool>());
    CHECK(j["max_amplitude_dev"].get<double>() <= 1e-10);
    CHECK(j["max_intensity_dev"].get<double>() <= 1e-10);
}

TEST_CASE("check is deterministic for a fixed seed and differs across seeds") {
    RunConfig cfg;
    cfg.schedules = 10;
    std::ostringstream a, b, c, diag;
    CHECK(run_check(cfg, a, diag) == 0);
    CHECK(run_check(cfg, b, diag) == 0);
    CHECK(a.str() == b.str());
    cfg.seed = 43;
    CHECK(run_check(cfg, c, diag) == 0);
    CHECK(a.str() != c.str());
}

TEST_CASE("report summarizes the density and the interaction-mode verdict") {
    RunConfig cfg;
    cfg.family = "lorentzian";
    std::ostringstream out, diag;
    CHECK(run_report(cfg, out, diag) == 0);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["family"].get<std::string>() == "lorentzian");
    CHECK(j["moments"]["truncated"].get<bool>());
    CHECK(j["interaction_mode"]["verdict"].get<std::string>() == "markovian-like");
    CHECK(j["interaction_mode"]["center"]["mode"].get<double>() == 1.0);
    CHECK(j["interaction_mode"]["envelope"].size() == 6);

    cfg.family = "gaussian";
    std::ostringstream out2;
    CHECK(run_report(cfg, out2, diag) == 0);
    const auto jg = nlohmann::json::parse(out2.str());
    CHECK(jg["interaction_mode"]["verdict"].get<std::string>() == "non-markovian-like");
    CHECK_FALSE(jg["moments"]["truncated"].get<bool>());
}

TEST_CASE("config file loading honours flag-style keys and rejects unknown ones") {
    const std::string path = "/tmp/spc_run_cfg.json";
    {
        std::ofstream f(path);
        f << R"({"spectrum": "semi-elliptic", "gamma": 0.2, "tau_s": 3.0,
                 "sweep": [1.0, 2.0, 0.5], "bracket": [5.5, 7.0], "n_pulses": 4})";
    }
    const RunConfig cfg = load_config(path);
    CHECK(cfg.family == "semi-elliptic");
    CHECK(cfg.gamma_p == 0.2);
    CHECK(cfg.tau_s == 3.0);
    CHECK(cfg.sweep_lo == 1.0);
    CHECK(cfg.sweep_hi == 2.0);
    CHECK(cfg.sweep_step == 0.5);
    CHECK(cfg.bracket_lo == 5.5);
    CHECK(cfg.bracket_hi == 7.0);
    CHECK(cfg.n_pulses == 4);
    CHECK(cfg.strength == 3.0); // untouched default
    std::remove(path.c_str());

    const std::string bad = "/tmp/spc_run_cfg_bad.json";
    {
        std::ofstream f(bad);
        f << R"({"specturm": "gaussian"})"; // typo must not be ignored
    }
    CHECK_THROWS_AS(load_config(bad), std::invalid_argument);
    std::remove(bad.c_str());
    CHECK_THROWS_AS(load_config("/tmp/spc_no_such_config.json"), std::invalid_argument);
}

TEST_CASE("unscaled inputs are converted to scaled units at the boundary") {
    RunConfig raw;
    raw.omega_p = 2.0;
    raw.gamma_p = 0.3;
    raw.tau_s = 0.5;
    raw.t_max = 1.5;
    raw.dt = 0.25;

    RunConfig scaled;
    scaled.gamma_p = 0.15;
    scaled.tau_s = 1.0;
    scaled.t_max = 3.0;
    scaled.dt = 0.5;

    std::ostringstream a, b, diag;
    CHECK(run_trace(raw, a, diag) == 0);
    CHECK(run_trace(scaled, b, diag) == 0);
    CHECK(a.str() == b.str());
    CHECK_THROWS_AS(normalized([] {
                        RunConfig c;
                        c.omega_p = -1.0;
                        return c;
                    }()),
                    std::invalid_argument);
}

TEST_CASE("unknown names in the configuration are usage errors") {
    RunConfig cfg;
    cfg.family = "triangle";
    std::ostringstream out, diag;
    CHECK_THROWS_AS(make_density(cfg), std::invalid_argument);
    CHECK_THROWS_AS(parse_method("fastest"), std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_form("magic"), std::invalid_argument);
    cfg = RunConfig{};
    cfg.family = "tabulated"; // requires a table path
    CHECK_THROWS_AS(make_density(cfg), std::invalid_argument);
    cfg = RunConfig{};
    cfg.rule = "sobol";
    CHECK_THROWS_AS(run_check(cfg, out, diag), std::invalid_argument);
}

TEST_CASE("full-precision formatting round-trips doubles exactly") {
    for (double v : {0.0, 1.0, 0.1, 6.283185307179586, 2.871094852e-21, -17.25}) {
        const std::string s = format_full(v);
        CHECK(std::stod(s) == v);
    }
}
