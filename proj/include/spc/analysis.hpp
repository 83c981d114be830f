// analysis.hpp — asymptotic peak value P(tau_s), grid sweeps with refined
// maxima, pulse-interval optimization, and the interaction-mode diagnostics
// (g, spectral center/width, correlation-envelope classification).

#pragma once

#include <array>
#include <vector>

#include "spc/coherence.hpp"
#include "spc/spectral.hpp"

namespace spc {

struct AnalysisConfig {
    double conv_tol{1e-4}; // peak-to-peak convergence tolerance on I(n·tau_s)
    int conv_window{4};    // consecutive peaks required per parity
    int n_max{200};        // pulse-count cap
};

// I sampled at pulse application times t = n·tau_s with N = n pulses.
// Convergence: the last 2·conv_window consecutive peak-to-peak differences
// all within conv_tol (covering conv_window transitions of each parity);
// the limit is then the mean of the last 2·conv_window peaks, provided the
// even/odd parity means agree within 2·conv_tol — a larger gap is reported
// as non-convergence, never averaged away. Unconverged series carry the
// last value.
struct PeakSeries {
    double tau_s{0.0};
    std::vector<double> peak_values;
    double limit{1.0};
    bool converged{false};
    int n_used{0};
    double parity_gap{0.0};
};

struct SweepPoint {
    double tau_s{0.0};
    double limit{0.0};
    bool converged{false};
    int n_used{0};
};

struct SweepMaximum {
    double tau_s{0.0};  // golden-section refined position
    double value{0.0};  // P at the refined position
    double prominence{0.0};
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::vector<SweepMaximum> maxima; // interior maxima with prominence > conv_tol
};

struct OptimizeResult {
    double tau_s{0.0};
    double value{0.0};
    bool flat{false}; // no interior structure above conv_tol in the bracket
    int evaluations{0};
};

struct EnvelopeFit {
    double linear_residual{0.0};    // ln|C| vs a + b·x  (exponential envelope)
    double quadratic_residual{0.0}; // ln|C| vs a + b·x² (gaussian envelope)
    bool markovian_like{false};     // linear fit wins
};

struct InteractionModeReport {
    double g{0.0};       // sqrt of the second spectral moment
    double g_error{0.0};
    bool truncated{false}; // moment window truncated (lorentzian tail)
    double center_mode{0.0};          // mode of h
    double center_weighted_mean{0.0}; // ∫e³h / ∫e²h
    double width{0.0};                // gamma_p echo (FWHM/2 for tables)
    EnvelopeFit fit;
    std::vector<std::array<double, 2>> envelope; // (x, |K(x)|/K(0)) samples
};

PeakSeries asymptotic_peak(const SpectralDensity& sd, double tau_s, const AnalysisConfig& acfg,
                           const QuadratureConfig& qcfg,
                           ExponentMethod method = ExponentMethod::automatic);

// P over tau_s = lo, lo+step, …, hi (points computed concurrently), then
// interior local maxima filtered by prominence > conv_tol and refined by
// golden-section search within the bracketing grid cell (resolution 1e-3).
SweepResult sweep(const SpectralDensity& sd, double lo, double hi, double step,
                  const AnalysisConfig& acfg, const QuadratureConfig& qcfg,
                  ExponentMethod method = ExponentMethod::automatic);

// Golden-section maximization of P over [lo, hi] to interval width 1e-3.
OptimizeResult optimize_interval(const SpectralDensity& sd, double lo, double hi,
                                 const AnalysisConfig& acfg, const QuadratureConfig& qcfg,
                                 ExponentMethod method = ExponentMethod::automatic);

InteractionModeReport interaction_mode_report(const SpectralDensity& sd,
                                              const QuadratureConfig& qcfg);

} // namespace spc
