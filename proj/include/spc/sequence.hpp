// sequence.hpp — π-pulse schedules and the modulation they imprint on each
// reservoir mode: branch displacement amplitudes, their difference Δ(e,t),
// and the pair expansion of |Δ|² into weighted cosine terms.

#pragma once

#include <complex>
#include <vector>

namespace spc {

// A π/2 pulse at t = 0 followed by N π pulses at j·tau_s, j = 1..N.
// The closed-form amplitudes below hold after the last pulse (t >= N·tau_s).
struct PulseTrain {
    long n_pulses{0};
    double tau_s{1.0};
};

struct PairTerm {
    double coefficient;
    double time_offset;
};

// Δ(e,t) = Σ_m c_m·exp(−i·e·s_m), so |Δ|² = Σ_{m,n} c_m c_n cos(e(s_m − s_n))
// and Γ(t) = Σ_{m,n} c_m c_n K(s_m − s_n). Length n_pulses + 2.
struct ModulationExpansion {
    std::vector<PairTerm> terms;
};

// Per-unit-coupling displacement amplitudes of the two superposition
// branches after the schedule: branch A starts excited-associated, branch B
// ground-associated; π pulses swap the association.
struct BranchAmplitudes {
    std::complex<double> alpha;
    std::complex<double> beta;
};

BranchAmplitudes displacement_amplitudes(const PulseTrain& train, double e, double t);

// Δ = alpha − beta, evaluated in O(1) via the geometric form (explicit sum
// fallback near the e·tau_s = odd·π resonance of the denominator).
std::complex<double> modulation_delta(const PulseTrain& train, double e, double t);

ModulationExpansion pair_expansion(const PulseTrain& train, double t);

// Throws std::invalid_argument unless n_pulses >= 0, tau_s > 0 (when pulses
// exist), t finite and t >= n_pulses·tau_s up to rounding slack.
void validate_schedule(const PulseTrain& train, double t);

} // namespace spc
