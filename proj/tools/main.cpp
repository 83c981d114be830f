// main.cpp — spcsim command-line tool.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spc/run.hpp"

namespace {

// Every flag is optional so a JSON config can supply defaults and explicit
// flags override it.
struct Flags {
    std::optional<std::string> config, family, table, method, kernel_form, rule, output;
    std::optional<double> omega_p, gamma_p, strength, tau_s, t_max, dt;
    std::optional<double> rel_tol, abs_tol, tail_mass, conv_tol;
    std::optional<long> n_pulses;
    std::optional<int> max_subdivisions, conv_window, n_max, modes, schedules;
    std::optional<unsigned long> seed;
    std::optional<std::vector<double>> sweep, bracket;
};

void add_spectrum_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON config file (flags override it)");
    cmd->add_option("--spectrum", f.family,
                    "spectral family: gaussian|semi-elliptic|lorentzian|tabulated");
    cmd->add_option("--table", f.table, "CSV table (header e,h) for the tabulated family");
    cmd->add_option("--omega-p", f.omega_p, "peak frequency; values != 1 rescale to scaled units");
    cmd->add_option("--gamma", f.gamma_p, "width parameter");
    cmd->add_option("--strength", f.strength, "overall coupling weight");
    cmd->add_option("--output,-o", f.output, "output file (default: stdout)");
}

void add_quadrature_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--rel-tol", f.rel_tol, "relative quadrature tolerance");
    cmd->add_option("--abs-tol", f.abs_tol, "absolute quadrature floor");
    cmd->add_option("--tail-mass", f.tail_mass, "density fraction outside the window");
    cmd->add_option("--max-subdivisions", f.max_subdivisions, "quadrature panel budget");
    cmd->add_option("--method", f.method, "exponent route: auto|kernel|direct");
    cmd->add_option("--kernel-form", f.kernel_form, "kernel route: auto|closed|quadrature");
}

void add_convergence_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--conv-tol", f.conv_tol, "peak-series convergence tolerance");
    cmd->add_option("--conv-window", f.conv_window, "peaks per parity required");
    cmd->add_option("--n-max", f.n_max, "pulse-count cap for peak series");
}

spc::RunConfig assemble(const Flags& f) {
    spc::RunConfig cfg;
    if (f.config) cfg = spc::load_config(*f.config);
    if (f.family) cfg.family = *f.family;
    if (f.table) cfg.table_path = *f.table;
    if (f.method) cfg.method = *f.method;
    if (f.kernel_form) cfg.kernel_form = *f.kernel_form;
    if (f.rule) cfg.rule = *f.rule;
    if (f.output) cfg.output = *f.output;
    if (f.omega_p) cfg.omega_p = *f.omega_p;
    if (f.gamma_p) cfg.gamma_p = *f.gamma_p;
    if (f.strength) cfg.strength = *f.strength;
    if (f.tau_s) cfg.tau_s = *f.tau_s;
    if (f.t_max) cfg.t_max = *f.t_max;
    if (f.dt) cfg.dt = *f.dt;
    if (f.rel_tol) cfg.rel_tol = *f.rel_tol;
    if (f.abs_tol) cfg.abs_tol = *f.abs_tol;
    if (f.tail_mass) cfg.tail_mass = *f.tail_mass;
    if (f.conv_tol) cfg.conv_tol = *f.conv_tol;
    if (f.n_pulses) cfg.n_pulses = *f.n_pulses;
    if (f.max_subdivisions) cfg.max_subdivisions = *f.max_subdivisions;
    if (f.conv_window) cfg.conv_window = *f.conv_window;
    if (f.n_max) cfg.n_max = *f.n_max;
    if (f.modes) cfg.modes = *f.modes;
    if (f.schedules) cfg.schedules = *f.schedules;
    if (f.seed) cfg.seed = *f.seed;
    if (f.sweep) {
        if (f.sweep->size() != 3)
            throw std::invalid_argument("--sweep expects three values: lo hi step");
        cfg.sweep_lo = (*f.sweep)[0];
        cfg.sweep_hi = (*f.sweep)[1];
        cfg.sweep_step = (*f.sweep)[2];
    }
    if (f.bracket) {
        if (f.bracket->size() != 2)
            throw std::invalid_argument("--bracket expects two values: lo hi");
        cfg.bracket_lo = (*f.bracket)[0];
        cfg.bracket_hi = (*f.bracket)[1];
    }
    return cfg;
}

int dispatch(const spc::RunConfig& cfg,
             int (*runner)(const spc::RunConfig&, std::ostream&, std::ostream&)) {
    if (!cfg.output.empty()) {
        std::ofstream out(cfg.output);
        if (!out) throw std::invalid_argument("cannot open output file '" + cfg.output + "'");
        return runner(cfg, out, std::cerr);
    }
    return runner(cfg, std::cout, std::cerr);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spcsim — pulsed-decoherence simulator for a two-level system in a boson reservoir"};
    app.require_subcommand(1);
    Flags f;

    CLI::App* trace = app.add_subcommand("trace", "intensity I(t) on a time grid");
    add_spectrum_options(trace, f);
    add_quadrature_options(trace, f);
    trace->add_option("--tau-s", f.tau_s, "pulse interval in scaled time");
    trace->add_option("--n-pulses", f.n_pulses, "pulse cap (0: free decay, <0: unlimited)");
    trace->add_option("--t-max", f.t_max, "grid end in scaled time");
    trace->add_option("--dt", f.dt, "grid step in scaled time");

    CLI::App* sweep = app.add_subcommand("sweep", "asymptotic peak value P over a tau_s grid");
    add_spectrum_options(sweep, f);
    add_quadrature_options(sweep, f);
    add_convergence_options(sweep, f);
    sweep->add_option("--sweep", f.sweep, "grid: lo hi step")->expected(3);

    CLI::App* optimize = app.add_subcommand("optimize", "maximize P over a tau_s bracket");
    add_spectrum_options(optimize, f);
    add_quadrature_options(optimize, f);
    add_convergence_options(optimize, f);
    optimize->add_option("--bracket", f.bracket, "search bracket: lo hi")->expected(2);

    CLI::App* check = app.add_subcommand("check", "randomized step-evolution cross-check");
    add_spectrum_options(check, f);
    check->add_option("--seed", f.seed, "RNG seed");
    check->add_option("--modes", f.modes, "modes per discretization");
    check->add_option("--schedules", f.schedules, "number of random schedules");
    check->add_option("--rule", f.rule, "discretization rule: uniform|gauss");

    CLI::App* report = app.add_subcommand("report", "spectral moments and interaction-mode diagnostics");
    add_spectrum_options(report, f);
    add_quadrature_options(report, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const spc::RunConfig cfg = assemble(f);
        if (trace->parsed()) return dispatch(cfg, spc::run_trace);
        if (sweep->parsed()) return dispatch(cfg, spc::run_sweep);
        if (optimize->parsed()) return dispatch(cfg, spc::run_optimize);
        if (check->parsed()) return dispatch(cfg, spc::run_check);
        if (report->parsed()) return dispatch(cfg, spc::run_report);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const spc::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 2;
    }
}
