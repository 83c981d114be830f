// spectral.cpp — density families, CDFs, moments, and cosine kernels.

#include "spc/spectral.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cap for the lorentzian integration window, in units of gamma_p above the
// peak. Chosen so half-period oscillation panels for x up to ~40 fit the
// default subdivision budget; the ~5e-4 tail mass beyond it re-enters
// analytically via the CDF wherever it has a DC component.
constexpr double kLorentzCapWidths = 2000.0;

double semi_halfwidth(double gamma_p) { return 2.0 * gamma_p / std::sqrt(3.0); }

// J1(z)/z, finite at z = 0.
double bessel_j1_over_z(double z) {
    z = std::fabs(z);
    if (z < 0.05) {
        const double q = 0.25 * z * z;
        return 0.5 * (1.0 - q / 2.0 + q * q / 12.0 - q * q * q / 144.0);
    }
    return std::cyl_bessel_j(1.0, z) / z;
}

void validate_family_params(double omega_p, double gamma_p, double strength) {
    if (!(omega_p > 0.0) || !std::isfinite(omega_p))
        throw std::invalid_argument("SpectralDensity: omega_p must be positive");
    if (!(gamma_p > 0.0) || !std::isfinite(gamma_p))
        throw std::invalid_argument("SpectralDensity: gamma_p must be positive");
    if (!(strength > 0.0) || !std::isfinite(strength))
        throw std::invalid_argument("SpectralDensity: strength must be positive");
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

SpectralDensity SpectralDensity::gaussian(double omega_p, double gamma_p, double strength) {
    validate_family_params(omega_p, gamma_p, strength);
    SpectralDensity sd;
    sd.family_ = SpectralFamily::gaussian;
    sd.omega_p_ = omega_p;
    sd.gamma_p_ = gamma_p;
    sd.strength_ = strength;
    return sd;
}

SpectralDensity SpectralDensity::semi_elliptic(double omega_p, double gamma_p, double strength) {
    validate_family_params(omega_p, gamma_p, strength);
    SpectralDensity sd;
    sd.family_ = SpectralFamily::semi_elliptic;
    sd.omega_p_ = omega_p;
    sd.gamma_p_ = gamma_p;
    sd.strength_ = strength;
    return sd;
}

SpectralDensity SpectralDensity::lorentzian(double omega_p, double gamma_p, double strength) {
    validate_family_params(omega_p, gamma_p, strength);
    SpectralDensity sd;
    sd.family_ = SpectralFamily::lorentzian;
    sd.omega_p_ = omega_p;
    sd.gamma_p_ = gamma_p;
    sd.strength_ = strength;
    return sd;
}

SpectralDensity SpectralDensity::tabulated(std::vector<std::array<double, 2>> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("SpectralDensity: table needs at least two samples");
    double any_positive = false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [e, h] = samples[i];
        if (!std::isfinite(e) || !std::isfinite(h))
            throw std::invalid_argument("SpectralDensity: non-finite table entry");
        if (e < 0.0) throw std::invalid_argument("SpectralDensity: table frequencies must be >= 0");
        if (h < 0.0) throw std::invalid_argument("SpectralDensity: table densities must be >= 0");
        if (i > 0 && !(e > samples[i - 1][0]))
            throw std::invalid_argument("SpectralDensity: table frequencies must be strictly increasing");
        if (h > 0.0) any_positive = true;
    }
    if (!any_positive) throw std::invalid_argument("SpectralDensity: table density is identically zero");

    SpectralDensity sd;
    sd.family_ = SpectralFamily::tabulated;
    sd.table_ = std::move(samples);
    sd.table_prefix_.assign(sd.table_.size(), 0.0);
    for (std::size_t i = 1; i < sd.table_.size(); ++i) {
        const double de = sd.table_[i][0] - sd.table_[i - 1][0];
        sd.table_prefix_[i] =
            sd.table_prefix_[i - 1] + 0.5 * (sd.table_[i][1] + sd.table_[i - 1][1]) * de;
    }
    // Carry the mode as omega_p/gamma_p echoes (mode + half-maximum halfwidth).
    std::size_t imax = 0;
    for (std::size_t i = 1; i < sd.table_.size(); ++i)
        if (sd.table_[i][1] > sd.table_[imax][1]) imax = i;
    sd.omega_p_ = sd.table_[imax][0];
    const double half = 0.5 * sd.table_[imax][1];
    double lo = sd.table_.front()[0], hi = sd.table_.back()[0];
    for (std::size_t i = imax; i-- > 0;) {
        if (sd.table_[i][1] <= half) {
            const double t = (half - sd.table_[i][1]) / (sd.table_[i + 1][1] - sd.table_[i][1]);
            lo = sd.table_[i][0] + t * (sd.table_[i + 1][0] - sd.table_[i][0]);
            break;
        }
    }
    for (std::size_t i = imax + 1; i < sd.table_.size(); ++i) {
        if (sd.table_[i][1] <= half) {
            const double t = (sd.table_[i - 1][1] - half) / (sd.table_[i - 1][1] - sd.table_[i][1]);
            hi = sd.table_[i - 1][0] + t * (sd.table_[i][0] - sd.table_[i - 1][0]);
            break;
        }
    }
    sd.gamma_p_ = std::max(0.5 * (hi - lo), std::numeric_limits<double>::min());
    sd.strength_ = sd.table_prefix_.back();
    return sd;
}

SpectralDensity SpectralDensity::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("SpectralDensity: cannot open '" + path + "'");

    std::string line;
    bool first = true;
    for (;;) {
        if (!std::getline(in, line))
            throw std::invalid_argument("SpectralDensity: no header row in '" + path + "'");
        if (first && !line.empty() && line.front() == '\xEF') line.erase(0, 3); // UTF-8 BOM
        first = false;
        const std::string probe = trim(line);
        if (!probe.empty() && probe.front() != '#') break; // header candidate
    }
    {
        std::stringstream hs(line);
        std::string c0, c1;
        std::getline(hs, c0, ',');
        std::getline(hs, c1, ',');
        if (trim(c0) != "e" || trim(c1) != "h")
            throw std::invalid_argument("SpectralDensity: expected header 'e,h' in '" + path + "'");
    }

    std::vector<std::array<double, 2>> samples;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string row = trim(line);
        if (row.empty() || row.front() == '#') continue;
        std::stringstream rs(row);
        std::string c0, c1;
        std::getline(rs, c0, ',');
        std::getline(rs, c1, ',');
        try {
            std::size_t used0 = 0, used1 = 0;
            const double e = std::stod(trim(c0), &used0);
            const double h = std::stod(trim(c1), &used1);
            if (used0 != trim(c0).size() || used1 != trim(c1).size()) throw std::invalid_argument("");
            samples.push_back({e, h});
        } catch (const std::exception&) {
            throw std::invalid_argument("SpectralDensity: bad row at " + path + ":" +
                                        std::to_string(lineno));
        }
    }
    return tabulated(std::move(samples));
}

double SpectralDensity::evaluate(double e) const {
    if (!std::isfinite(e) || e < 0.0)
        throw std::domain_error("SpectralDensity::evaluate: frequency must be finite and >= 0");
    switch (family_) {
        case SpectralFamily::gaussian: {
            const double u = (e - omega_p_) / gamma_p_;
            return strength_ / (std::sqrt(kPi) * gamma_p_) * std::exp(-u * u);
        }
        case SpectralFamily::semi_elliptic: {
            const double a = semi_halfwidth(gamma_p_);
            const double u = e - omega_p_;
            if (std::fabs(u) >= a) return 0.0;
            const double p = a * a;
            return strength_ / p * std::sqrt(p - u * u);
        }
        case SpectralFamily::lorentzian: {
            const double u = e - omega_p_;
            return strength_ / kPi * gamma_p_ / (u * u + gamma_p_ * gamma_p_);
        }
        case SpectralFamily::tabulated: {
            if (e <= table_.front()[0] || e >= table_.back()[0]) {
                if (e == table_.front()[0]) return table_.front()[1];
                if (e == table_.back()[0]) return table_.back()[1];
                return 0.0;
            }
            auto it = std::upper_bound(table_.begin(), table_.end(), e,
                                       [](double v, const std::array<double, 2>& s) { return v < s[0]; });
            const auto& b = *it;
            const auto& a = *(it - 1);
            const double t = (e - a[0]) / (b[0] - a[0]);
            return a[1] + t * (b[1] - a[1]);
        }
    }
    return 0.0;
}

double SpectralDensity::cumulative(double e) const {
    if (!std::isfinite(e)) throw std::domain_error("SpectralDensity::cumulative: non-finite frequency");
    if (e <= 0.0) return 0.0;

    // Full-line antiderivative C with C(-inf) = 0; result is C(e) - C(0).
    auto antiderivative = [this](double v) -> double {
        switch (family_) {
            case SpectralFamily::gaussian:
                return 0.5 * strength_ * (1.0 + std::erf((v - omega_p_) / gamma_p_));
            case SpectralFamily::semi_elliptic: {
                const double a = semi_halfwidth(gamma_p_);
                const double u = v - omega_p_;
                if (u <= -a) return 0.0;
                if (u >= a) return 0.5 * kPi * strength_;
                const double p = a * a;
                return strength_ / p *
                       (0.5 * u * std::sqrt(p - u * u) + 0.5 * p * (std::asin(u / a) + 0.5 * kPi));
            }
            case SpectralFamily::lorentzian:
                return strength_ * (0.5 + std::atan((v - omega_p_) / gamma_p_) / kPi);
            case SpectralFamily::tabulated:
                return 0.0; // handled below
        }
        return 0.0;
    };

    if (family_ == SpectralFamily::tabulated) {
        if (e <= table_.front()[0]) return 0.0;
        if (e >= table_.back()[0]) return table_prefix_.back();
        auto it = std::upper_bound(table_.begin(), table_.end(), e,
                                   [](double v, const std::array<double, 2>& s) { return v < s[0]; });
        const std::size_t i = static_cast<std::size_t>(it - table_.begin());
        const auto& a = table_[i - 1];
        const auto& b = table_[i];
        const double t = (e - a[0]) / (b[0] - a[0]);
        const double h_at = a[1] + t * (b[1] - a[1]);
        return table_prefix_[i - 1] + 0.5 * (a[1] + h_at) * (e - a[0]);
    }
    return antiderivative(e) - antiderivative(0.0);
}

double SpectralDensity::total_mass() const {
    switch (family_) {
        case SpectralFamily::gaussian:
            return 0.5 * strength_ * (1.0 + std::erf(omega_p_ / gamma_p_));
        case SpectralFamily::semi_elliptic: {
            const double a = semi_halfwidth(gamma_p_);
            if (omega_p_ - a >= 0.0) return 0.5 * kPi * strength_;
            return 0.5 * kPi * strength_ - cumulative(0.0); // never negative support mass
        }
        case SpectralFamily::lorentzian:
            return strength_ * (0.5 + std::atan(omega_p_ / gamma_p_) / kPi);
        case SpectralFamily::tabulated:
            return table_prefix_.back();
    }
    return 0.0;
}

double SpectralDensity::peak_frequency() const {
    if (family_ != SpectralFamily::tabulated) return omega_p_;
    std::size_t imax = 0;
    for (std::size_t i = 1; i < table_.size(); ++i)
        if (table_[i][1] > table_[imax][1]) imax = i;
    return table_[imax][0];
}

std::pair<double, double> SpectralDensity::support_bounds(double tail_mass) const {
    if (!(tail_mass > 0.0 && tail_mass < 1.0))
        throw std::invalid_argument("support_bounds: tail_mass must be in (0, 1)");

    if (family_ == SpectralFamily::semi_elliptic) {
        const double a = semi_halfwidth(gamma_p_);
        return {std::max(0.0, omega_p_ - a), omega_p_ + a};
    }

    const double mass = total_mass();
    const double target_lo = 0.5 * tail_mass * mass;
    const double target_hi = mass - target_lo;

    if (family_ == SpectralFamily::tabulated) {
        double lo = table_.front()[0], hi = table_.back()[0];
        for (std::size_t i = 0; i < table_.size(); ++i) {
            if (table_prefix_[i] <= target_lo) lo = table_[i][0];
            if (table_prefix_[i] >= target_hi) {
                hi = table_[i][0];
                break;
            }
        }
        return {lo, hi};
    }

    auto bisect = [this](double a, double b, double target) {
        for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::fabs(b)); ++i) {
            const double mid = 0.5 * (a + b);
            (cumulative(mid) < target ? a : b) = mid;
        }
        return 0.5 * (a + b);
    };

    const double lo = bisect(0.0, omega_p_, target_lo);
    double upper = omega_p_ + gamma_p_;
    while (cumulative(upper) < target_hi) upper *= 2.0;
    const double hi = bisect(omega_p_, upper, target_hi);
    return {lo, hi};
}

std::pair<double, double> SpectralDensity::resolved_bounds(double tail_mass) const {
    auto [lo, hi] = support_bounds(tail_mass);
    if (family_ == SpectralFamily::lorentzian)
        hi = std::min(hi, omega_p_ + kLorentzCapWidths * gamma_p_);
    return {lo, hi};
}

SpectralMoments SpectralDensity::total_weight(const QuadratureConfig& cfg) const {
    SpectralMoments m;
    m.truncated = (family_ == SpectralFamily::lorentzian);

    if (family_ == SpectralFamily::tabulated) {
        // Exact moments of the piecewise-linear model: per-segment polynomials.
        double w[3] = {0.0, 0.0, 0.0};
        for (std::size_t i = 1; i < table_.size(); ++i) {
            const double ea = table_[i - 1][0], eb = table_[i][0];
            const double ha = table_[i - 1][1], hb = table_[i][1];
            const double slope = (hb - ha) / (eb - ea);
            const double c0 = ha - slope * ea;
            auto mono = [&](int n, double e) { // ∫ e^n (c0 + slope·e) de
                return c0 * std::pow(e, n + 1) / (n + 1) + slope * std::pow(e, n + 2) / (n + 2);
            };
            for (int n = 0; n < 3; ++n) w[n] += mono(n, eb) - mono(n, ea);
        }
        m.weight_0 = w[0];
        m.weight_1 = w[1];
        m.weight_2 = w[2];
        const double eps = std::numeric_limits<double>::epsilon();
        m.err_0 = eps * table_.size() * std::fabs(w[0]);
        m.err_1 = eps * table_.size() * std::fabs(w[1]);
        m.err_2 = eps * table_.size() * std::fabs(w[2]);
        return m;
    }

    const auto [lo, hi] = resolved_bounds(cfg.tail_mass);
    const double omitted = total_mass() - (cumulative(hi) - cumulative(lo));
    const std::vector<double> splits{omega_p_};
    double* values[3] = {&m.weight_0, &m.weight_1, &m.weight_2};
    double* errors[3] = {&m.err_0, &m.err_1, &m.err_2};
    for (int n = 0; n < 3; ++n) {
        auto f = [this, n](double e) { return std::pow(e, n) * evaluate(e); };
        const QuadratureResult r = integrate_adaptive(f, lo, hi, cfg, 0.0, splits);
        *values[n] = r.value;
        *errors[n] = r.error;
        if (!m.truncated) *errors[n] += omitted * std::pow(hi, n);
    }
    return m;
}

KernelMethod resolve_kernel_method(const SpectralDensity& sd, KernelMethod method) {
    if (method != KernelMethod::automatic) return method;
    return sd.family() == SpectralFamily::tabulated ? KernelMethod::quadrature
                                                    : KernelMethod::closed_form;
}

KernelValue SpectralDensity::cosine_kernel(double x, KernelMethod method,
                                           const QuadratureConfig& cfg) const {
    if (!std::isfinite(x)) throw std::domain_error("cosine_kernel: non-finite time difference");
    x = std::fabs(x); // K is even
    method = resolve_kernel_method(*this, method);
    const double eps = std::numeric_limits<double>::epsilon();

    if (family_ == SpectralFamily::tabulated) {
        if (method == KernelMethod::closed_form)
            throw std::invalid_argument("cosine_kernel: closed form unavailable for tabulated densities");
        // Exact cosine transform of the piecewise-linear model.
        if (x < 1e-300) return {table_prefix_.back(), eps * table_.size() * table_prefix_.back()};
        double acc = 0.0;
        for (std::size_t i = 1; i < table_.size(); ++i) {
            const double ea = table_[i - 1][0], eb = table_[i][0];
            const double ha = table_[i - 1][1], hb = table_[i][1];
            const double slope = (hb - ha) / (eb - ea);
            const double c0 = ha - slope * ea;
            auto seg = [&](double e) { // ∫ (c0 + slope·e) cos(e x) de
                return c0 * std::sin(e * x) / x +
                       slope * (std::cos(e * x) / (x * x) + e * std::sin(e * x) / x);
            };
            acc += seg(eb) - seg(ea);
        }
        return {acc, eps * table_.size() * std::max(1.0, table_prefix_.back())};
    }

    if (method == KernelMethod::closed_form) {
        switch (family_) {
            case SpectralFamily::gaussian: {
                const double arg = 0.5 * gamma_p_ * x;
                const double value = strength_ * std::exp(-arg * arg) * std::cos(omega_p_ * x);
                const double half_line = 0.5 * strength_ * std::erfc(omega_p_ / gamma_p_);
                return {value, half_line + 4.0 * eps * strength_};
            }
            case SpectralFamily::semi_elliptic: {
                const double a = semi_halfwidth(gamma_p_);
                const double value =
                    strength_ * kPi * bessel_j1_over_z(a * x) * std::cos(omega_p_ * x);
                // Mass clipped below e = 0 (zero unless the support crosses it).
                const double half_line = 0.5 * kPi * strength_ - total_mass();
                return {value, half_line + 4.0 * eps * strength_ * kPi};
            }
            case SpectralFamily::lorentzian: {
                const double value = strength_ * std::exp(-gamma_p_ * x) * std::cos(omega_p_ * x);
                const double half_line = strength_ / kPi * std::atan(gamma_p_ / omega_p_);
                return {value, half_line + 4.0 * eps * strength_};
            }
            default:
                break;
        }
    }

    // Quadrature over the shared resolved window.
    const auto [lo, hi] = resolved_bounds(cfg.tail_mass);
    if (x < 1e-300) return {total_mass(), 4.0 * eps * total_mass()};
    auto f = [this, x](double e) { return evaluate(e) * std::cos(e * x); };
    const QuadratureResult r =
        integrate_adaptive(f, lo, hi, cfg, 2.0 * kPi / x, std::vector<double>{omega_p_});
    // Omitted tails: per side, the smaller of the omitted mass and the
    // van-der-Corput oscillation bound 2·h(edge)/x.
    const double below = std::min(cumulative(lo), 2.0 * evaluate(lo) / x);
    const double beyond = std::min(total_mass() - cumulative(hi), 2.0 * evaluate(hi) / x);
    return {r.value, r.error + below + beyond};
}

} // namespace spc
