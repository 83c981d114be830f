// sequence.cpp — closed-form branch amplitudes and pair expansion.

#include "spc/sequence.hpp"

#include <cmath>
#include <stdexcept>

namespace spc {

namespace {

std::complex<double> phase(double angle) { return std::polar(1.0, angle); }

// S = Σ_{j=1..N} (−1)^j exp(−i·e·(t − j·tau)), geometric where stable.
std::complex<double> alternating_sum(long n, double tau, double e, double t) {
    if (n == 0) return {0.0, 0.0};
    const std::complex<double> u = phase(-e * tau);
    const std::complex<double> denom = 1.0 + u;
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
    if (std::abs(denom) > 1e-8) {
        // S = (−1)^N e^{−i e (t − N·tau)} (1 − (−u)^N) / (1 + u)
        const std::complex<double> mu_n = sign_n * phase(-e * tau * static_cast<double>(n));
        return sign_n * phase(-e * (t - static_cast<double>(n) * tau)) * (1.0 - mu_n) / denom;
    }
    std::complex<double> acc{0.0, 0.0};
    double sign = -1.0;
    for (long j = 1; j <= n; ++j, sign = -sign)
        acc += sign * phase(-e * (t - static_cast<double>(j) * tau));
    return acc;
}

} // namespace

void validate_schedule(const PulseTrain& train, double t) {
    if (train.n_pulses < 0)
        throw std::invalid_argument("PulseTrain: n_pulses must be >= 0");
    if (train.n_pulses > 0 && !(train.tau_s > 0.0))
        throw std::invalid_argument("PulseTrain: tau_s must be positive");
    if (!std::isfinite(t)) throw std::invalid_argument("PulseTrain: non-finite time");
    const double last_pulse = static_cast<double>(train.n_pulses) * train.tau_s;
    if (train.n_pulses > 0 && t - last_pulse < -1e-12 * std::max(1.0, last_pulse))
        throw std::invalid_argument("PulseTrain: evaluation time precedes the last pulse");
    if (train.n_pulses == 0 && t < 0.0)
        throw std::invalid_argument("PulseTrain: negative time");
}

BranchAmplitudes displacement_amplitudes(const PulseTrain& train, double e, double t) {
    validate_schedule(train, t);
    const std::complex<double> s = alternating_sum(train.n_pulses, train.tau_s, e, t);
    const std::complex<double> et = phase(-e * t);
    if (train.n_pulses % 2 == 0) return {-1.0 + et + s, -s};
    return {et + s, -1.0 - s};
}

std::complex<double> modulation_delta(const PulseTrain& train, double e, double t) {
    validate_schedule(train, t);
    const double parity = (train.n_pulses % 2 == 0) ? 1.0 : -1.0;
    return -parity + phase(-e * t) + 2.0 * alternating_sum(train.n_pulses, train.tau_s, e, t);
}

ModulationExpansion pair_expansion(const PulseTrain& train, double t) {
    validate_schedule(train, t);
    ModulationExpansion exp;
    exp.terms.reserve(static_cast<std::size_t>(train.n_pulses) + 2);
    const double parity = (train.n_pulses % 2 == 0) ? 1.0 : -1.0;
    exp.terms.push_back({-parity, 0.0});
    exp.terms.push_back({1.0, t});
    double sign = -1.0;
    for (long j = 1; j <= train.n_pulses; ++j, sign = -sign)
        exp.terms.push_back({2.0 * sign, t - static_cast<double>(j) * train.tau_s});
    return exp;
}

} // namespace spc
