// oracle.hpp — independent discrete-mode verifier: evolves per-mode
// displacement amplitudes step by step through the pulse schedule and
// checks the closed-form amplitudes and the overlap intensity on the same
// finite mode set.

#pragma once

#include <complex>
#include <vector>

#include "spc/quadrature.hpp"
#include "spc/sequence.hpp"
#include "spc/spectral.hpp"

namespace spc {

enum class DiscretizationRule {
    uniform,        // midpoint rule on the resolved window: h_k² = h(e_k)·Δe
    gauss_weighted, // Gauss–Legendre nodes/weights on the resolved window
};

struct DiscreteMode {
    double epsilon;  // mode frequency
    double coupling; // h_k >= 0
};

struct DiscreteModeSet {
    std::vector<DiscreteMode> modes; // strictly increasing in frequency
    DiscretizationRule rule{DiscretizationRule::uniform};
    double weight_error{0.0}; // |Σh_k² − ∫h| / ∫h
    bool coarse{false};       // weight_error above 1%
};

DiscreteModeSet discretize(const SpectralDensity& sd, int n_modes, DiscretizationRule rule,
                           double tail_mass = 1e-10);

// One superposition branch: per-mode displacement plus which system state
// it is currently associated with (π pulses swap the association).
struct BranchState {
    std::vector<std::complex<double>> displacement;
    bool excited{false};
};

BranchState vacuum_branch(std::size_t n_modes, bool excited);

// Free evolution for `duration`, then optionally a π pulse. The branch
// associated with the excited state picks up the driven-mode update
// d → e^{−iεΔ}(d + h) − h; the ground-associated branch rotates freely,
// d → e^{−iεΔ}·d. Global phases are dropped (they cancel in the overlap).
BranchState step_evolve(const BranchState& state, const DiscreteModeSet& modes, double duration,
                        bool then_pulse);

struct EvolvedPair {
    BranchState a; // starts excited-associated
    BranchState b; // starts ground-associated
};

// Runs the full schedule: N segments of tau_s each ending in a π pulse,
// then the trailing segment to t.
EvolvedPair evolve_schedule(const DiscreteModeSet& modes, const PulseTrain& train, double t);

// I = exp(−Σ_k |d_A,k − d_B,k|²).
double intensity_discrete(const BranchState& a, const BranchState& b);

// Same intensity from the closed-form amplitudes on the same mode set.
double intensity_discrete(const DiscreteModeSet& modes, const PulseTrain& train, double t);

struct CrossCheckReport {
    int n_modes{0};
    double max_amplitude_dev{0.0}; // worst per-mode relative deviation
    double intensity_dev{0.0};     // |Γ_step − Γ_closed| / max(1, Γ_closed)
    int worst_mode{-1};
    bool pass{false};
};

// Step evolution vs closed forms on one schedule; passes iff both
// deviations are within `tolerance`.
CrossCheckReport cross_check(const SpectralDensity& sd, const PulseTrain& train, double t,
                             int n_modes, DiscretizationRule rule, double tolerance = 1e-10);

} // namespace spc
