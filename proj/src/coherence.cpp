// coherence.cpp — kernel-path and direct-quadrature evaluation of Γ(t).

#include "spc/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spc/parallel.hpp"

namespace spc {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct WeightedDistance {
    double x;          // |time offset difference|
    double weight;     // signed coefficient sum
    double abs_weight; // Σ|individual coefficients| for error propagation
};

// Collapses the pair expansion of |Δ|² into distinct kernel arguments.
// Coefficients follow the lag structure of the alternating train, so this
// is O(N) terms: lags d·tau within the pulse comb, cross terms t − j·tau
// against the constant, and the zero lag.
std::vector<WeightedDistance> kernel_arguments(const PulseTrain& train, double t) {
    const long n = train.n_pulses;
    const double tau = train.tau_s;
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    const double cb = -parity;

    std::vector<WeightedDistance> raw;
    raw.reserve(static_cast<std::size_t>(2 * n) + 3);
    raw.push_back({0.0, cb * cb + (1.0 + 4.0 * static_cast<double>(n)),
                   cb * cb + (1.0 + 4.0 * static_cast<double>(n))});
    for (long d = 1; d <= n; ++d) {
        const double sign = (d % 2 == 0) ? 1.0 : -1.0;
        const double b = sign * (4.0 * static_cast<double>(n - d) + 2.0);
        raw.push_back({static_cast<double>(d) * tau, 2.0 * b, 2.0 * std::fabs(b)});
    }
    for (long j = 0; j <= n; ++j) {
        const double cj = (j == 0) ? 1.0 : ((j % 2 == 0) ? 2.0 : -2.0);
        const double w = 2.0 * cb * cj;
        raw.push_back({std::fabs(t - static_cast<double>(j) * tau), w, std::fabs(w)});
    }

    std::sort(raw.begin(), raw.end(),
              [](const WeightedDistance& a, const WeightedDistance& b) { return a.x < b.x; });
    const double merge_eps = 1e-12 * std::max(1.0, std::fabs(t));
    std::vector<WeightedDistance> grouped;
    for (const auto& item : raw) {
        if (!grouped.empty() && item.x - grouped.back().x <= merge_eps) {
            grouped.back().weight += item.weight;
            grouped.back().abs_weight += item.abs_weight;
        } else {
            grouped.push_back(item);
        }
    }
    return grouped;
}

ExponentValue exponent_kernel_path(const SpectralDensity& sd, const PulseTrain& train, double t,
                                   const QuadratureConfig& cfg, KernelMethod form) {
    ExponentValue out;
    for (const auto& arg : kernel_arguments(train, t)) {
        const KernelValue k = sd.cosine_kernel(arg.x, form, cfg);
        out.gamma += arg.weight * k.value;
        out.error += arg.abs_weight * k.error;
    }
    return out;
}

ExponentValue exponent_direct_path(const SpectralDensity& sd, const PulseTrain& train, double t,
                                   const QuadratureConfig& cfg) {
    const ModulationExpansion expansion = pair_expansion(train, t);

    // DC component of |Δ|² in e: coincident offsets survive averaging, so
    // their contribution over the omitted tails is restored exactly from the
    // CDF. Everything else oscillates there and is only bounded.
    std::vector<double> offsets;
    offsets.reserve(expansion.terms.size());
    for (const auto& term : expansion.terms) offsets.push_back(term.time_offset);
    std::vector<std::size_t> order(offsets.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return offsets[a] < offsets[b]; });
    const double merge_eps = 1e-12 * std::max(1.0, std::fabs(t));

    double dc_weight = 0.0;
    double intra_group_abs = 0.0; // Σ_g (Σ_{m∈g}|c_m|)²: pairs with zero lag
    double abs_total = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    {
        std::size_t i = 0;
        double prev_rep = 0.0;
        bool have_prev = false;
        while (i < order.size()) {
            std::size_t j = i;
            double coeff_sum = 0.0;
            double abs_sum = 0.0;
            while (j < order.size() && offsets[order[j]] - offsets[order[i]] <= merge_eps) {
                coeff_sum += expansion.terms[order[j]].coefficient;
                abs_sum += std::fabs(expansion.terms[order[j]].coefficient);
                ++j;
            }
            dc_weight += coeff_sum * coeff_sum;
            intra_group_abs += abs_sum * abs_sum;
            if (have_prev) min_gap = std::min(min_gap, offsets[order[i]] - prev_rep);
            prev_rep = offsets[order[i]];
            have_prev = true;
            i = j;
        }
    }
    for (const auto& term : expansion.terms) abs_total += std::fabs(term.coefficient);
    const double oscillating_weight = std::max(0.0, abs_total * abs_total - intra_group_abs);

    // The omitted tails enter the error bound multiplied by the oscillating
    // weight, which grows with the pulse count.  Widen the window by the same
    // factor so the guaranteed tail error stays at the requested scale.
    const double window_tail = cfg.tail_mass / std::max(1.0, oscillating_weight);
    const auto [lo, hi] = sd.resolved_bounds(window_tail);
    const double span = std::fabs(t);
    auto integrand = [&](double e) { return sd.evaluate(e) * std::norm(modulation_delta(train, e, t)); };
    // Aim the integral below the caller's tolerance so the window-tail
    // bounds added afterwards still fit inside it.
    QuadratureConfig inner = cfg;
    inner.rel_tol = 0.25 * cfg.rel_tol;
    inner.abs_tol = 0.25 * cfg.abs_tol;
    const QuadratureResult r = integrate_adaptive(
        integrand, lo, hi, inner, span > 0.0 ? 2.0 * kPi / span : 0.0,
        std::vector<double>{sd.peak_frequency()});

    const double mass_below = sd.cumulative(lo);
    const double mass_beyond = sd.total_mass() - sd.cumulative(hi);

    ExponentValue out;
    out.gamma = r.value + dc_weight * (mass_below + mass_beyond);
    out.error = r.error;
    if (std::isfinite(min_gap) && min_gap > 0.0) {
        out.error += oscillating_weight *
                     (std::min(mass_below, 2.0 * sd.evaluate(lo) / min_gap) +
                      std::min(mass_beyond, 2.0 * sd.evaluate(hi) / min_gap));
    } else {
        out.error += oscillating_weight * (mass_below + mass_beyond);
    }
    return out;
}

} // namespace

ExponentMethod resolve_exponent_method(const SpectralDensity& sd, ExponentMethod method) {
    if (method != ExponentMethod::automatic) return method;
    switch (sd.family()) {
        case SpectralFamily::gaussian:
        case SpectralFamily::semi_elliptic:
            return ExponentMethod::kernel;
        default:
            return ExponentMethod::direct;
    }
}

KernelMethod resolve_exponent_kernel(const SpectralDensity& sd, KernelMethod form) {
    if (form != KernelMethod::automatic) return form;
    switch (sd.family()) {
        case SpectralFamily::gaussian:
        case SpectralFamily::semi_elliptic:
            return KernelMethod::closed_form;
        default:
            return KernelMethod::quadrature;
    }
}

ExponentValue decoherence_exponent(const SpectralDensity& sd, const PulseTrain& train, double t,
                                   const QuadratureConfig& cfg, ExponentMethod method,
                                   KernelMethod form) {
    validate_schedule(train, t);
    const ExponentMethod resolved = resolve_exponent_method(sd, method);
    ExponentValue out = (resolved == ExponentMethod::kernel)
                            ? exponent_kernel_path(sd, train, t, cfg,
                                                   resolve_exponent_kernel(sd, form))
                            : exponent_direct_path(sd, train, t, cfg);
    if (out.gamma < 0.0) {
        // Exact cancellations can land a hair below zero; anything beyond
        // the reported error is a genuine numerical problem.
        if (out.gamma < -(out.error + 1e-12)) out.converged = false;
        out.gamma = 0.0;
    }
    out.converged = out.converged && out.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::max(1.0, out.gamma));
    return out;
}

IntensityValue intensity(const SpectralDensity& sd, const PulseTrain& train, double t,
                         const QuadratureConfig& cfg, ExponentMethod method, KernelMethod form) {
    const ExponentValue g = decoherence_exponent(sd, train, t, cfg, method, form);
    IntensityValue out;
    out.value = std::exp(-g.gamma);
    out.error = out.value * g.error;
    out.converged = g.converged;
    return out;
}

long pulses_applied(double t, double tau_s, long max_pulses) {
    if (max_pulses == 0 || !(tau_s > 0.0) || t <= 0.0) return 0;
    const double eps = std::numeric_limits<double>::epsilon();
    const double ratio = t / tau_s * (1.0 + 4.0 * eps);
    long n = static_cast<long>(std::floor(ratio));
    if (n < 0) n = 0;
    if (max_pulses >= 0) n = std::min(n, max_pulses);
    return n;
}

CoherenceTrace trace(const SpectralDensity& sd, double tau_s, long max_pulses, double t_max,
                     double dt, const QuadratureConfig& cfg, ExponentMethod method,
                     KernelMethod form) {
    if (!(dt > 0.0) || !(t_max > 0.0))
        throw std::invalid_argument("trace: dt and t_max must be positive");
    if (max_pulses != 0 && !(tau_s > 0.0))
        throw std::invalid_argument("trace: tau_s must be positive when pulses are applied");

    const long steps = std::llround(t_max / dt);
    CoherenceTrace out;
    out.method = resolve_exponent_method(sd, method);
    out.points.resize(static_cast<std::size_t>(steps) + 1);

    parallel_for(out.points.size(), [&](std::size_t i) {
        const double t = static_cast<double>(i) * dt;
        const long n = pulses_applied(t, tau_s, max_pulses);
        const PulseTrain train{n, tau_s > 0.0 ? tau_s : 1.0};
        const ExponentValue g = decoherence_exponent(sd, train, t, cfg, method, form);
        TracePoint& pt = out.points[i];
        pt.t = t;
        pt.exponent = g.gamma;
        pt.intensity = std::exp(-g.gamma);
        pt.n_pulses = n;
        pt.error = pt.intensity * g.error;
        pt.converged = g.converged;
    });
    return out;
}

} // namespace spc
