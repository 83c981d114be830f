// coherence.hpp — decoherence exponent Γ(t) and intensity I(t) = exp(−Γ(t))
// under a pulse schedule, by two independent routes: the kernel path
// (pair expansion against the correlation kernel K) and direct adaptive
// quadrature of h(e)·|Δ(e,t)|².

#pragma once

#include <vector>

#include "spc/quadrature.hpp"
#include "spc/sequence.hpp"
#include "spc/spectral.hpp"

namespace spc {

enum class ExponentMethod {
    automatic, // kernel for gaussian/semi-elliptic, direct for lorentzian/tabulated
    kernel,
    direct,
};

struct ExponentValue {
    double gamma{0.0};
    double error{0.0};     // conservative bound (quadrature + omitted tails)
    bool converged{true};  // error within the configured tolerances
};

struct IntensityValue {
    double value{1.0};
    double error{0.0}; // propagated as I·ΔΓ
    bool converged{true};
};

struct TracePoint {
    double t{0.0};
    double intensity{1.0};
    double exponent{0.0};
    long n_pulses{0};
    double error{0.0};
    bool converged{true};
};

struct CoherenceTrace {
    std::vector<TracePoint> points;
    ExponentMethod method{ExponentMethod::automatic};
};

ExponentMethod resolve_exponent_method(const SpectralDensity& sd, ExponentMethod method);

// Kernel form used by the kernel path: closed form for gaussian and
// semi-elliptic (their half-line corrections are negligible at baseline),
// quadrature for lorentzian and tabulated so both routes share the same
// half-line window semantics.
KernelMethod resolve_exponent_kernel(const SpectralDensity& sd, KernelMethod form);

ExponentValue decoherence_exponent(const SpectralDensity& sd, const PulseTrain& train, double t,
                                   const QuadratureConfig& cfg,
                                   ExponentMethod method = ExponentMethod::automatic,
                                   KernelMethod form = KernelMethod::automatic);

IntensityValue intensity(const SpectralDensity& sd, const PulseTrain& train, double t,
                         const QuadratureConfig& cfg,
                         ExponentMethod method = ExponentMethod::automatic,
                         KernelMethod form = KernelMethod::automatic);

// Pulses applied by time t: min(floor(t/tau_s), max_pulses), with a few ulps
// of slack so points exactly at pulse times count the just-applied pulse.
// max_pulses < 0 means unlimited; tau_s <= 0 or max_pulses == 0 is free decay.
long pulses_applied(double t, double tau_s, long max_pulses);

// Samples I on the grid t = 0, dt, 2·dt, …, t_max (points computed
// concurrently, assembled in grid order). Evaluation problems mark the
// point, they never abort the trace.
CoherenceTrace trace(const SpectralDensity& sd, double tau_s, long max_pulses, double t_max,
                     double dt, const QuadratureConfig& cfg,
                     ExponentMethod method = ExponentMethod::automatic,
                     KernelMethod form = KernelMethod::automatic);

} // namespace spc
