// oracle.cpp — discrete-mode step evolution and cross checks.

#include "spc/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace spc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss–Legendre nodes/weights on [-1, 1] by Newton iteration on the
// Legendre recurrence (ample accuracy for the mode counts used here).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

} // namespace

DiscreteModeSet discretize(const SpectralDensity& sd, int n_modes, DiscretizationRule rule,
                           double tail_mass) {
    if (n_modes < 2) throw std::invalid_argument("discretize: need at least two modes");
    const auto [lo, hi] = sd.resolved_bounds(tail_mass);

    DiscreteModeSet set;
    set.rule = rule;
    set.modes.reserve(static_cast<std::size_t>(n_modes));
    if (rule == DiscretizationRule::uniform) {
        const double de = (hi - lo) / n_modes;
        for (int k = 0; k < n_modes; ++k) {
            const double e = lo + (k + 0.5) * de;
            set.modes.push_back({e, std::sqrt(sd.evaluate(e) * de)});
        }
    } else {
        std::vector<double> nodes, weights;
        gauss_legendre(n_modes, nodes, weights);
        const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        for (int k = 0; k < n_modes; ++k) {
            const double e = mid + half * nodes[k];
            set.modes.push_back({e, std::sqrt(sd.evaluate(e) * weights[k] * half)});
        }
    }

    double mass = 0.0;
    for (const auto& mode : set.modes) mass += mode.coupling * mode.coupling;
    const double reference = sd.total_mass();
    set.weight_error = std::fabs(mass - reference) / reference;
    set.coarse = set.weight_error > 0.01;
    return set;
}

BranchState vacuum_branch(std::size_t n_modes, bool excited) {
    return BranchState{std::vector<std::complex<double>>(n_modes, {0.0, 0.0}), excited};
}

BranchState step_evolve(const BranchState& state, const DiscreteModeSet& modes, double duration,
                        bool then_pulse) {
    if (duration < 0.0) throw std::invalid_argument("step_evolve: negative duration");
    if (state.displacement.size() != modes.modes.size())
        throw std::invalid_argument("step_evolve: mode-count mismatch");

    BranchState next = state;
    for (std::size_t k = 0; k < modes.modes.size(); ++k) {
        const double eps = modes.modes[k].epsilon;
        const double h = modes.modes[k].coupling;
        const std::complex<double> rot = std::polar(1.0, -eps * duration);
        if (state.excited)
            next.displacement[k] = rot * (state.displacement[k] + h) - h;
        else
            next.displacement[k] = rot * state.displacement[k];
    }
    if (then_pulse) next.excited = !next.excited;
    return next;
}

EvolvedPair evolve_schedule(const DiscreteModeSet& modes, const PulseTrain& train, double t) {
    validate_schedule(train, t);
    EvolvedPair pair{vacuum_branch(modes.modes.size(), true),
                     vacuum_branch(modes.modes.size(), false)};
    double elapsed = 0.0;
    for (long j = 1; j <= train.n_pulses; ++j) {
        pair.a = step_evolve(pair.a, modes, train.tau_s, true);
        pair.b = step_evolve(pair.b, modes, train.tau_s, true);
        elapsed += train.tau_s;
    }
    const double rest = std::max(0.0, t - elapsed);
    pair.a = step_evolve(pair.a, modes, rest, false);
    pair.b = step_evolve(pair.b, modes, rest, false);
    return pair;
}

double intensity_discrete(const BranchState& a, const BranchState& b) {
    if (a.displacement.size() != b.displacement.size())
        throw std::invalid_argument("intensity_discrete: mode-count mismatch");
    double gamma = 0.0;
    for (std::size_t k = 0; k < a.displacement.size(); ++k)
        gamma += std::norm(a.displacement[k] - b.displacement[k]);
    return std::exp(-gamma);
}

double intensity_discrete(const DiscreteModeSet& modes, const PulseTrain& train, double t) {
    double gamma = 0.0;
    for (const auto& mode : modes.modes)
        gamma += mode.coupling * mode.coupling *
                 std::norm(modulation_delta(train, mode.epsilon, t));
    return std::exp(-gamma);
}

CrossCheckReport cross_check(const SpectralDensity& sd, const PulseTrain& train, double t,
                             int n_modes, DiscretizationRule rule, double tolerance) {
    const DiscreteModeSet modes = discretize(sd, n_modes, rule);
    const EvolvedPair evolved = evolve_schedule(modes, train, t);

    CrossCheckReport report;
    report.n_modes = n_modes;
    for (int k = 0; k < n_modes; ++k) {
        const double h = modes.modes[k].coupling;
        const BranchAmplitudes closed = displacement_amplitudes(train, modes.modes[k].epsilon, t);
        const double scale = h * (1.0 + std::abs(closed.alpha) + std::abs(closed.beta));
        const double dev =
            std::max(std::abs(evolved.a.displacement[k] - h * closed.alpha),
                     std::abs(evolved.b.displacement[k] - h * closed.beta)) /
            std::max(scale, 1e-300);
        if (dev > report.max_amplitude_dev) {
            report.max_amplitude_dev = dev;
            report.worst_mode = k;
        }
    }

    // Compare at the exponent level (the intensities can underflow exp(−Γ)).
    double gamma_step = 0.0, gamma_closed = 0.0;
    for (int k = 0; k < n_modes; ++k) {
        gamma_step += std::norm(evolved.a.displacement[k] - evolved.b.displacement[k]);
        gamma_closed += modes.modes[k].coupling * modes.modes[k].coupling *
                        std::norm(modulation_delta(train, modes.modes[k].epsilon, t));
    }
    report.intensity_dev = std::fabs(gamma_step - gamma_closed) / std::max(1.0, gamma_closed);
    report.pass = report.max_amplitude_dev <= tolerance && report.intensity_dev <= tolerance;
    return report;
}

} // namespace spc
