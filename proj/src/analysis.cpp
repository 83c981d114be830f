// analysis.cpp — peak-series convergence, sweeps, optimization, diagnostics.

#include "spc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spc/parallel.hpp"

namespace spc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGoldenTol = 1e-3;

void validate_analysis(const AnalysisConfig& acfg) {
    if (!(acfg.conv_tol > 0.0)) throw std::invalid_argument("AnalysisConfig: conv_tol must be > 0");
    if (acfg.conv_window < 1) throw std::invalid_argument("AnalysisConfig: conv_window must be >= 1");
    if (acfg.n_max < 4) throw std::invalid_argument("AnalysisConfig: n_max must be >= 4");
}

double mean(const std::vector<double>& v, std::size_t first, std::size_t stride) {
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t i = first; i < v.size(); i += stride, ++n) acc += v[i];
    return n ? acc / static_cast<double>(n) : 0.0;
}

// Maximizes f on [lo, hi] by golden-section search; returns the best
// sampled point. Deterministic and derivative-free.
template <typename F>
OptimizeResult golden_max(F&& f, double lo, double hi, double conv_tol) {
    constexpr double invphi = 0.6180339887498948482;
    OptimizeResult out;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    out.evaluations = 2;
    double best_x = fc >= fd ? c : d;
    double best_v = std::max(fc, fd);
    double seen_min = std::min(fc, fd);
    while (b - a > kGoldenTol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        ++out.evaluations;
        const double x = fc >= fd ? c : d;
        const double v = std::max(fc, fd);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
        seen_min = std::min(seen_min, std::min(fc, fd));
    }
    out.tau_s = best_x;
    out.value = best_v;
    // Flat bracket: no interior structure above tolerance, or the maximum
    // sits on a bracket edge (the objective only rises toward the boundary).
    out.flat = (best_v - seen_min) <= conv_tol || best_x - lo <= 2.0 * kGoldenTol ||
               hi - best_x <= 2.0 * kGoldenTol;
    return out;
}

} // namespace

PeakSeries asymptotic_peak(const SpectralDensity& sd, double tau_s, const AnalysisConfig& acfg,
                           const QuadratureConfig& qcfg, ExponentMethod method) {
    validate_analysis(acfg);
    if (!(tau_s > 0.0)) throw std::invalid_argument("asymptotic_peak: tau_s must be positive");

    PeakSeries out;
    out.tau_s = tau_s;
    out.peak_values.reserve(static_cast<std::size_t>(acfg.n_max));

    const std::size_t window = 2 * static_cast<std::size_t>(acfg.conv_window);
    std::size_t run = 0; // consecutive peak-to-peak differences within tolerance
    for (int n = 1; n <= acfg.n_max; ++n) {
        const PulseTrain train{n, tau_s};
        const IntensityValue v =
            intensity(sd, train, static_cast<double>(n) * tau_s, qcfg, method);
        out.peak_values.push_back(v.value);
        out.n_used = n;
        if (out.peak_values.size() >= 2) {
            const auto last = out.peak_values.size() - 1;
            const double diff = std::fabs(out.peak_values[last] - out.peak_values[last - 1]);
            run = diff <= acfg.conv_tol ? run + 1 : 0;
        }
        if (run >= window && out.peak_values.size() >= window) break;
    }

    if (run >= window && out.peak_values.size() >= window) {
        const std::size_t first = out.peak_values.size() - window;
        out.parity_gap = std::fabs(mean(out.peak_values, first, 2) -
                                   mean(out.peak_values, first + 1, 2));
        if (out.parity_gap <= 2.0 * acfg.conv_tol) {
            out.converged = true;
            out.limit = mean(out.peak_values, first, 1);
            return out;
        }
    }
    out.converged = false;
    out.limit = out.peak_values.back();
    return out;
}

SweepResult sweep(const SpectralDensity& sd, double lo, double hi, double step,
                  const AnalysisConfig& acfg, const QuadratureConfig& qcfg,
                  ExponentMethod method) {
    validate_analysis(acfg);
    if (!(lo > 0.0) || !(hi > lo) || !(step > 0.0))
        throw std::invalid_argument("sweep: require 0 < lo < hi and step > 0");

    const std::size_t count =
        static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    SweepResult out;
    out.points.resize(count);
    parallel_for(count, [&](std::size_t i) {
        const double tau = lo + static_cast<double>(i) * step;
        const PeakSeries series = asymptotic_peak(sd, tau, acfg, qcfg, method);
        out.points[i] = SweepPoint{tau, series.limit, series.converged, series.n_used};
    });

    // Interior strict maxima, prominence-filtered, then refined in-cell.
    for (std::size_t i = 1; i + 1 < count; ++i) {
        const double p = out.points[i].limit;
        if (!(p > out.points[i - 1].limit && p > out.points[i + 1].limit)) continue;

        double left_floor = p;
        for (std::size_t j = i; j-- > 0;) {
            if (out.points[j].limit > p) break;
            left_floor = std::min(left_floor, out.points[j].limit);
        }
        double right_floor = p;
        for (std::size_t j = i + 1; j < count; ++j) {
            if (out.points[j].limit > p) break;
            right_floor = std::min(right_floor, out.points[j].limit);
        }
        const double prominence = p - std::max(left_floor, right_floor);
        if (!(prominence > acfg.conv_tol)) continue;

        auto objective = [&](double tau) {
            return asymptotic_peak(sd, tau, acfg, qcfg, method).limit;
        };
        const OptimizeResult refined =
            golden_max(objective, out.points[i - 1].tau_s, out.points[i + 1].tau_s, acfg.conv_tol);
        if (refined.value >= p)
            out.maxima.push_back(SweepMaximum{refined.tau_s, refined.value, prominence});
        else
            out.maxima.push_back(SweepMaximum{out.points[i].tau_s, p, prominence});
    }
    return out;
}

OptimizeResult optimize_interval(const SpectralDensity& sd, double lo, double hi,
                                 const AnalysisConfig& acfg, const QuadratureConfig& qcfg,
                                 ExponentMethod method) {
    validate_analysis(acfg);
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("optimize_interval: require 0 < lo < hi");
    auto objective = [&](double tau) { return asymptotic_peak(sd, tau, acfg, qcfg, method).limit; };
    return golden_max(objective, lo, hi, acfg.conv_tol);
}

InteractionModeReport interaction_mode_report(const SpectralDensity& sd,
                                              const QuadratureConfig& qcfg) {
    InteractionModeReport out;

    const SpectralMoments m = sd.total_weight(qcfg);
    out.g = std::sqrt(std::max(0.0, m.weight_2));
    out.g_error = out.g > 0.0 ? 0.5 * m.err_2 / out.g : m.err_2;
    out.truncated = m.truncated;
    out.center_mode = sd.peak_frequency();
    out.width = sd.gamma_p();

    // weight_2-weighted mean frequency: ∫e³h / ∫e²h over the same window.
    {
        const auto [lo, hi] = sd.resolved_bounds(qcfg.tail_mass);
        const QuadratureResult w3 = integrate_adaptive(
            [&](double e) { return e * e * e * sd.evaluate(e); }, lo, hi, qcfg, 0.0,
            std::vector<double>{sd.peak_frequency()});
        out.center_weighted_mean = m.weight_2 > 0.0 ? w3.value / m.weight_2 : 0.0;
    }

    // Envelope of the normalized kernel |C(x)| = |K(x)|/K(0), sampled where
    // |cos(center·x)| = 1 so the oscillatory factor drops out.
    const KernelValue k0 = sd.cosine_kernel(0.0, KernelMethod::automatic, qcfg);
    const double x_unit = out.center_mode > 0.0 ? kPi / out.center_mode : kPi;
    std::vector<std::array<double, 2>> pts;
    for (int k = 1; k <= 6; ++k) {
        const double x = static_cast<double>(k) * x_unit;
        const KernelValue kx = sd.cosine_kernel(x, KernelMethod::automatic, qcfg);
        const double env = std::fabs(kx.value) / k0.value;
        out.envelope.push_back({x, env});
        if (env > 1e-300) pts.push_back({x, std::log(env)});
    }
    if (pts.size() < 3)
        throw std::runtime_error("interaction_mode_report: envelope degenerate, no fit possible");

    // Least-squares of ln|C| against a + b·φ(x) for φ = x and φ = x².
    auto residual = [&](bool quadratic) {
        double sw = static_cast<double>(pts.size());
        double sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
        for (const auto& [x, y] : pts) {
            const double phi = quadratic ? x * x : x;
            sx += phi;
            sxx += phi * phi;
            sy += y;
            sxy += phi * y;
        }
        const double det = sw * sxx - sx * sx;
        const double b = (sw * sxy - sx * sy) / det;
        const double a = (sy - b * sx) / sw;
        double ss = 0.0;
        for (const auto& [x, y] : pts) {
            const double phi = quadratic ? x * x : x;
            const double r = y - (a + b * phi);
            ss += r * r;
        }
        return ss;
    };
    out.fit.linear_residual = residual(false);
    out.fit.quadratic_residual = residual(true);
    out.fit.markovian_like = out.fit.linear_residual < out.fit.quadratic_residual;
    return out;
}

} // namespace spc
