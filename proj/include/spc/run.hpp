// run.hpp — command-line surface: configuration, scaling, and the five
// subcommand runners (trace / sweep / optimize / check / report).
//
// Exit codes: 0 success, 1 usage or configuration error, 2 numerical
// failure (cross-check failure, flat optimization bracket).

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "spc/analysis.hpp"
#include "spc/coherence.hpp"

namespace spc {

struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mirrors the command-line flags; a JSON config file uses the same keys
// (sweep and bracket as arrays). Flags override file values.
struct RunConfig {
    std::string family{"gaussian"}; // gaussian | semi-elliptic | lorentzian | tabulated
    double omega_p{1.0};
    double gamma_p{0.15};
    double strength{3.0};
    std::string table_path{};

    double tau_s{6.283185307179586}; // the reservoir period in scaled time
    long n_pulses{-1};               // <0 unlimited within the window, 0 free decay
    double t_max{60.0};
    double dt{0.01};

    std::string method{"auto"};      // auto | kernel | direct
    std::string kernel_form{"auto"}; // auto | closed | quadrature

    double rel_tol{1e-8};
    double abs_tol{1e-12};
    double tail_mass{1e-10};
    int max_subdivisions{4000};

    double conv_tol{1e-4};
    int conv_window{4};
    int n_max{200};

    double sweep_lo{0.5};
    double sweep_hi{8.0};
    double sweep_step{0.05};
    double bracket_lo{5.0};
    double bracket_hi{7.5};

    unsigned long seed{42};
    int modes{64};
    int schedules{200};
    std::string rule{"uniform"}; // uniform | gauss

    std::string output{}; // empty: stdout
};

// Reads a JSON config file into defaults; unknown keys are rejected.
RunConfig load_config(const std::string& path);

// All computation runs in scaled units (peak frequency = 1). A config with
// omega_p != 1 is rescaled here: frequencies divide by omega_p, times and
// widths multiply/divide accordingly, tabulated samples are rescaled.
RunConfig normalized(const RunConfig& cfg);

SpectralDensity make_density(const RunConfig& cfg);
QuadratureConfig quadrature_config(const RunConfig& cfg);
AnalysisConfig analysis_config(const RunConfig& cfg);
ExponentMethod parse_method(const std::string& name);
KernelMethod parse_kernel_form(const std::string& name);

// Full-precision decimal rendering (round-trips a double exactly).
std::string format_full(double v);

int run_trace(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int run_optimize(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int run_check(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int run_report(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

} // namespace spc
