// quadrature.cpp — adaptive 15-point Gauss–Kronrod integration.

#include "spc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace spc {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi;
    double value;
    double error;
};

struct PanelOrder {
    bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

// One Gauss–Kronrod pass over [lo, hi]; error estimate per QUADPACK dqk15.
Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double fc = f(center);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double resabs = std::fabs(resk);

    double fv1[7], fv2[7];
    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = half * kXgk[jtw];
        const double f1 = f(center - absc);
        const double f2 = f(center + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (std::fabs(f1) + std::fabs(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = half * kXgk[jtwm1];
        const double f1 = f(center - absc);
        const double f2 = f(center + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (std::fabs(f1) + std::fabs(f2));
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

    const double hlgth = std::fabs(half);
    resabs *= hlgth;
    resasc *= hlgth;
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);

    return Panel{lo, hi, resk * half, err};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureConfig& cfg,
                                    double oscillation_period,
                                    const std::vector<double>& split_points) {
    if (!(std::isfinite(lo) && std::isfinite(hi)))
        throw std::invalid_argument("integrate_adaptive: non-finite bounds");
    if (cfg.max_subdivisions < 1)
        throw std::invalid_argument("integrate_adaptive: max_subdivisions must be >= 1");
    if (hi <= lo) return QuadratureResult{0.0, 0.0, true, 0};

    std::vector<double> bounds{lo, hi};
    for (double p : split_points)
        if (p > lo && p < hi) bounds.push_back(p);
    std::sort(bounds.begin(), bounds.end());

    // Pre-split each segment into half-period pieces so one panel never
    // averages over whole oscillations; cap at half the budget to leave
    // room for adaptive refinement.
    const int init_cap = std::max(1, cfg.max_subdivisions / 2);
    std::vector<std::pair<double, double>> segments;
    if (oscillation_period > 0.0) {
        const double piece = oscillation_period * 0.5;
        double needed = 0.0;
        for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
            needed += std::ceil((bounds[i + 1] - bounds[i]) / piece);
        const double scale = needed > init_cap ? needed / init_cap : 1.0;
        for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
            const double a = bounds[i], b = bounds[i + 1];
            const int n = std::max(1, static_cast<int>(std::ceil((b - a) / (piece * scale))));
            for (int k = 0; k < n; ++k)
                segments.emplace_back(a + (b - a) * k / n, a + (b - a) * (k + 1) / n);
        }
    } else {
        for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
            segments.emplace_back(bounds[i], bounds[i + 1]);
    }

    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
    double total_value = 0.0;
    double total_error = 0.0;
    int panels = 0;
    for (const auto& [a, b] : segments) {
        Panel p = gk15(f, a, b);
        total_value += p.value;
        total_error += p.error;
        heap.push(p);
        ++panels;
    }

    auto tolerance = [&]() { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total_value)); };

    while (total_error > tolerance() && panels < cfg.max_subdivisions && !heap.empty()) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            heap.push(worst); // interval at floating-point resolution
            break;
        }
        Panel left = gk15(f, worst.lo, mid);
        Panel right = gk15(f, mid, worst.hi);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }

    QuadratureResult out;
    out.value = total_value;
    out.error = total_error;
    out.converged = total_error <= tolerance();
    out.subdivisions = panels;
    return out;
}

} // namespace spc
