// run.cpp — subcommand implementations and configuration plumbing.

#include "spc/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>

#include <json.hpp>

#include "spc/oracle.hpp"

namespace spc {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* verdict_name(bool markovian_like) {
    return markovian_like ? "markovian-like" : "non-markovian-like";
}

// Config keys mirror the CLI flag names (with '-' spelled '_').
void merge_json(RunConfig& cfg, const ordered_json& j) {
    for (const auto& [key, value] : j.items()) {
        if (key == "spectrum") cfg.family = value.get<std::string>();
        else if (key == "omega_p") cfg.omega_p = value.get<double>();
        else if (key == "gamma") cfg.gamma_p = value.get<double>();
        else if (key == "strength") cfg.strength = value.get<double>();
        else if (key == "table") cfg.table_path = value.get<std::string>();
        else if (key == "tau_s") cfg.tau_s = value.get<double>();
        else if (key == "n_pulses") cfg.n_pulses = value.get<long>();
        else if (key == "t_max") cfg.t_max = value.get<double>();
        else if (key == "dt") cfg.dt = value.get<double>();
        else if (key == "method") cfg.method = value.get<std::string>();
        else if (key == "kernel_form") cfg.kernel_form = value.get<std::string>();
        else if (key == "rel_tol") cfg.rel_tol = value.get<double>();
        else if (key == "abs_tol") cfg.abs_tol = value.get<double>();
        else if (key == "tail_mass") cfg.tail_mass = value.get<double>();
        else if (key == "max_subdivisions") cfg.max_subdivisions = value.get<int>();
        else if (key == "conv_tol") cfg.conv_tol = value.get<double>();
        else if (key == "conv_window") cfg.conv_window = value.get<int>();
        else if (key == "n_max") cfg.n_max = value.get<int>();
        else if (key == "sweep") {
            if (!value.is_array() || value.size() != 3)
                throw std::invalid_argument("config: 'sweep' must be [lo, hi, step]");
            cfg.sweep_lo = value[0].get<double>();
            cfg.sweep_hi = value[1].get<double>();
            cfg.sweep_step = value[2].get<double>();
        } else if (key == "bracket") {
            if (!value.is_array() || value.size() != 2)
                throw std::invalid_argument("config: 'bracket' must be [lo, hi]");
            cfg.bracket_lo = value[0].get<double>();
            cfg.bracket_hi = value[1].get<double>();
        } else if (key == "seed") cfg.seed = value.get<unsigned long>();
        else if (key == "modes") cfg.modes = value.get<int>();
        else if (key == "schedules") cfg.schedules = value.get<int>();
        else if (key == "rule") cfg.rule = value.get<std::string>();
        else if (key == "output") cfg.output = value.get<std::string>();
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

std::string csv_bool(bool v) { return v ? "1" : "0"; }

ordered_json interaction_json(const InteractionModeReport& report) {
    ordered_json j;
    j["g"] = report.g;
    j["g_error"] = report.g_error;
    j["truncated"] = report.truncated;
    j["center"] = {{"mode", report.center_mode},
                   {"weighted_mean", report.center_weighted_mean}};
    j["width"] = report.width;
    ordered_json env = ordered_json::array();
    for (const auto& [x, v] : report.envelope) env.push_back({x, v});
    j["envelope"] = env;
    j["fit"] = {{"linear_residual", report.fit.linear_residual},
                {"quadratic_residual", report.fit.quadratic_residual}};
    j["verdict"] = verdict_name(report.fit.markovian_like);
    return j;
}

} // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("config: parse failure in '" + path + "': " + e.what());
    }
    RunConfig cfg;
    merge_json(cfg, j);
    return cfg;
}

RunConfig normalized(const RunConfig& cfg) {
    if (!(cfg.omega_p > 0.0)) throw std::invalid_argument("omega_p must be positive");
    if (cfg.omega_p == 1.0) return cfg;
    RunConfig out = cfg;
    const double w = cfg.omega_p;
    out.omega_p = 1.0;
    out.gamma_p = cfg.gamma_p / w;
    out.tau_s = cfg.tau_s * w;
    out.t_max = cfg.t_max * w;
    out.dt = cfg.dt * w;
    out.sweep_lo = cfg.sweep_lo * w;
    out.sweep_hi = cfg.sweep_hi * w;
    out.sweep_step = cfg.sweep_step * w;
    out.bracket_lo = cfg.bracket_lo * w;
    out.bracket_hi = cfg.bracket_hi * w;
    return out;
}

SpectralDensity make_density(const RunConfig& raw) {
    const RunConfig cfg = normalized(raw);
    if (cfg.family == "gaussian")
        return SpectralDensity::gaussian(1.0, cfg.gamma_p, cfg.strength);
    if (cfg.family == "semi-elliptic" || cfg.family == "semi_elliptic")
        return SpectralDensity::semi_elliptic(1.0, cfg.gamma_p, cfg.strength);
    if (cfg.family == "lorentzian")
        return SpectralDensity::lorentzian(1.0, cfg.gamma_p, cfg.strength);
    if (cfg.family == "tabulated") {
        if (cfg.table_path.empty())
            throw std::invalid_argument("tabulated family requires --table");
        SpectralDensity sd = SpectralDensity::from_csv(cfg.table_path);
        if (raw.omega_p != 1.0) {
            std::vector<std::array<double, 2>> scaled = sd.table();
            for (auto& [e, h] : scaled) {
                e /= raw.omega_p;
                h *= raw.omega_p;
            }
            return SpectralDensity::tabulated(std::move(scaled));
        }
        return sd;
    }
    throw std::invalid_argument("unknown spectral family '" + cfg.family + "'");
}

QuadratureConfig quadrature_config(const RunConfig& cfg) {
    QuadratureConfig q;
    q.rel_tol = cfg.rel_tol;
    q.abs_tol = cfg.abs_tol;
    q.tail_mass = cfg.tail_mass;
    q.max_subdivisions = cfg.max_subdivisions;
    if (!(q.rel_tol > 0.0) || !(q.abs_tol > 0.0))
        throw std::invalid_argument("tolerances must be positive");
    if (!(q.tail_mass > 0.0 && q.tail_mass < 1.0))
        throw std::invalid_argument("tail_mass must be in (0, 1)");
    if (q.max_subdivisions < 1)
        throw std::invalid_argument("max_subdivisions must be >= 1");
    return q;
}

AnalysisConfig analysis_config(const RunConfig& cfg) {
    AnalysisConfig a;
    a.conv_tol = cfg.conv_tol;
    a.conv_window = cfg.conv_window;
    a.n_max = cfg.n_max;
    return a;
}

ExponentMethod parse_method(const std::string& name) {
    if (name == "auto" || name == "automatic") return ExponentMethod::automatic;
    if (name == "kernel") return ExponentMethod::kernel;
    if (name == "direct") return ExponentMethod::direct;
    throw std::invalid_argument("unknown method '" + name + "' (auto|kernel|direct)");
}

KernelMethod parse_kernel_form(const std::string& name) {
    if (name == "auto" || name == "automatic") return KernelMethod::automatic;
    if (name == "closed" || name == "closed_form") return KernelMethod::closed_form;
    if (name == "quadrature") return KernelMethod::quadrature;
    throw std::invalid_argument("unknown kernel form '" + name + "' (auto|closed|quadrature)");
}

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int run_trace(const RunConfig& raw, std::ostream& out, std::ostream& diag) {
    const RunConfig cfg = normalized(raw);
    const SpectralDensity sd = make_density(cfg);
    const CoherenceTrace tr =
        trace(sd, cfg.tau_s, cfg.n_pulses, cfg.t_max, cfg.dt, quadrature_config(cfg),
              parse_method(cfg.method), parse_kernel_form(cfg.kernel_form));

    out << "t_scaled,intensity,exponent,n_pulses,err\n";
    std::size_t flagged = 0;
    for (const auto& pt : tr.points) {
        out << format_full(pt.t) << ',' << format_full(pt.intensity) << ','
            << format_full(pt.exponent) << ',' << pt.n_pulses << ',' << format_full(pt.error)
            << '\n';
        if (!pt.converged) ++flagged;
    }
    if (flagged > 0)
        diag << "warning: " << flagged << " of " << tr.points.size()
             << " points carry an error bound above tolerance\n";
    return 0;
}

int run_sweep(const RunConfig& raw, std::ostream& out, std::ostream& diag) {
    const RunConfig cfg = normalized(raw);
    const SpectralDensity sd = make_density(cfg);
    const SweepResult result = sweep(sd, cfg.sweep_lo, cfg.sweep_hi, cfg.sweep_step,
                                     analysis_config(cfg), quadrature_config(cfg),
                                     parse_method(cfg.method));

    out << "tau_s_scaled,P,converged,n_used\n";
    std::size_t unconverged = 0;
    for (const auto& pt : result.points) {
        out << format_full(pt.tau_s) << ',' << format_full(pt.limit) << ','
            << csv_bool(pt.converged) << ',' << pt.n_used << '\n';
        if (!pt.converged) ++unconverged;
    }
    for (const auto& m : result.maxima)
        diag << "maximum: tau_s=" << format_full(m.tau_s) << " P=" << format_full(m.value)
             << " prominence=" << format_full(m.prominence) << '\n';
    if (result.maxima.empty()) diag << "no local maximum above the prominence tolerance\n";
    if (unconverged > 0)
        diag << "warning: " << unconverged << " of " << result.points.size()
             << " sweep points did not reach the peak-series convergence window\n";
    return 0;
}

int run_optimize(const RunConfig& raw, std::ostream& out, std::ostream& diag) {
    const RunConfig cfg = normalized(raw);
    const SpectralDensity sd = make_density(cfg);
    const OptimizeResult result =
        optimize_interval(sd, cfg.bracket_lo, cfg.bracket_hi, analysis_config(cfg),
                          quadrature_config(cfg), parse_method(cfg.method));

    ordered_json j;
    j["bracket"] = {cfg.bracket_lo, cfg.bracket_hi};
    j["tau_s"] = result.tau_s;
    j["P"] = result.value;
    j["flat"] = result.flat;
    j["evaluations"] = result.evaluations;
    out << j.dump(2) << '\n';
    if (result.flat) {
        diag << "flat bracket: no interior maximum above the convergence tolerance\n";
        return 2;
    }
    return 0;
}

int run_check(const RunConfig& raw, std::ostream& out, std::ostream& diag) {
    const RunConfig cfg = normalized(raw);
    if (cfg.schedules < 1) throw std::invalid_argument("check: schedules must be >= 1");
    constexpr double kTolerance = 1e-10;

    const SpectralDensity densities[3] = {
        SpectralDensity::gaussian(1.0, cfg.gamma_p, cfg.strength),
        SpectralDensity::semi_elliptic(1.0, cfg.gamma_p, cfg.strength),
        SpectralDensity::lorentzian(1.0, cfg.gamma_p, cfg.strength)};
    const char* names[3] = {"gaussian", "semi-elliptic", "lorentzian"};
    DiscretizationRule rule = DiscretizationRule::uniform;
    if (cfg.rule == "gauss" || cfg.rule == "gauss_weighted")
        rule = DiscretizationRule::gauss_weighted;
    else if (cfg.rule != "uniform")
        throw std::invalid_argument("unknown rule '" + cfg.rule + "' (uniform|gauss)");

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> tau_dist(0.1, 8.0);
    std::uniform_int_distribution<long> n_dist(0, 7);
    std::uniform_real_distribution<double> frac_dist(0.0, 1.0);

    double max_amp = 0.0, max_int = 0.0;
    int failures = 0;
    ordered_json worst = nullptr;
    for (int i = 0; i < cfg.schedules; ++i) {
        const double tau = tau_dist(rng);
        const long n = n_dist(rng);
        const double t = static_cast<double>(n) * tau + frac_dist(rng) * tau;
        const PulseTrain train{n, tau};
        const CrossCheckReport rep =
            cross_check(densities[i % 3], train, t, cfg.modes, rule, kTolerance);
        if (rep.max_amplitude_dev > max_amp) max_amp = rep.max_amplitude_dev;
        if (rep.intensity_dev > max_int) max_int = rep.intensity_dev;
        if (!rep.pass) {
            ++failures;
            worst = {{"family", names[i % 3]},
                     {"n_pulses", n},
                     {"tau_s", tau},
                     {"t", t},
                     {"amplitude_dev", rep.max_amplitude_dev},
                     {"intensity_dev", rep.intensity_dev},
                     {"worst_mode", rep.worst_mode}};
        }
    }

    ordered_json j;
    j["seed"] = cfg.seed;
    j["modes"] = cfg.modes;
    j["schedules"] = cfg.schedules;
    j["tolerance"] = kTolerance;
    j["max_amplitude_dev"] = max_amp;
    j["max_intensity_dev"] = max_int;
    j["failures"] = failures;
    j["pass"] = failures == 0;
    if (!worst.is_null()) j["worst_case"] = worst;
    out << j.dump(2) << '\n';
    if (failures > 0) {
        diag << "cross-check failed for " << failures << " of " << cfg.schedules
             << " schedules\n";
        return 2;
    }
    return 0;
}

int run_report(const RunConfig& raw, std::ostream& out, std::ostream&) {
    const RunConfig cfg = normalized(raw);
    const SpectralDensity sd = make_density(cfg);
    const QuadratureConfig qcfg = quadrature_config(cfg);

    const SpectralMoments m = sd.total_weight(qcfg);
    const auto [slo, shi] = sd.support_bounds(qcfg.tail_mass);
    const auto [rlo, rhi] = sd.resolved_bounds(qcfg.tail_mass);
    const InteractionModeReport report = interaction_mode_report(sd, qcfg);

    ordered_json j;
    j["family"] = cfg.family;
    j["omega_p"] = sd.family() == SpectralFamily::tabulated ? sd.peak_frequency() : sd.omega_p();
    j["gamma_p"] = sd.gamma_p();
    j["strength"] = sd.strength();
    j["moments"] = {{"weight_0", m.weight_0}, {"weight_1", m.weight_1},
                    {"weight_2", m.weight_2}, {"err_0", m.err_0},
                    {"err_1", m.err_1},       {"err_2", m.err_2},
                    {"truncated", m.truncated}};
    j["support_bounds"] = {slo, shi};
    j["resolved_bounds"] = {rlo, rhi};
    j["interaction_mode"] = interaction_json(report);
    out << j.dump(2) << '\n';
    return 0;
}

} // namespace spc
