// spectral.hpp — coupling spectral densities h(e) and their cosine transforms
// K(x) = ∫₀^∞ h(e)·cos(e·x) de (the reservoir correlation kernel).
//
// All frequencies and times are in scaled units: the density peak frequency
// is the frequency unit, so the baseline density peaks at e = 1 and the
// reservoir oscillation period is 2π.

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "spc/quadrature.hpp"

namespace spc {

enum class SpectralFamily { gaussian, semi_elliptic, lorentzian, tabulated };

enum class KernelMethod {
    automatic,   // closed_form for analytic families, quadrature for tabulated
    closed_form, // full-line analytic transform + reported half-line correction bound
    quadrature,  // adaptive integration over the resolved half-line window
};

// Low-order moments ∫ eⁿ h(e) de, n = 0,1,2, over [0, ∞).
// For the lorentzian family the first and second moments do not converge on
// the half line; they are computed over the resolved window and flagged
// `truncated` (the reported errors then cover the quadrature only, not the
// discarded power-law tail).
struct SpectralMoments {
    double weight_0{0.0};
    double weight_1{0.0};
    double weight_2{0.0};
    double err_0{0.0};
    double err_1{0.0};
    double err_2{0.0};
    bool truncated{false};
};

struct KernelValue {
    double value{0.0};
    double error{0.0}; // quadrature estimate + omitted-tail / half-line bound
};

class SpectralDensity {
  public:
    static SpectralDensity gaussian(double omega_p = 1.0, double gamma_p = 0.15,
                                    double strength = 3.0);
    static SpectralDensity semi_elliptic(double omega_p = 1.0, double gamma_p = 0.15,
                                         double strength = 3.0);
    static SpectralDensity lorentzian(double omega_p = 1.0, double gamma_p = 0.15,
                                      double strength = 3.0);
    // Piecewise-linear density through (e, h) samples; zero outside the table.
    static SpectralDensity tabulated(std::vector<std::array<double, 2>> samples);
    // Loads a tabulated density from CSV with header "e,h".
    static SpectralDensity from_csv(const std::string& path);

    SpectralFamily family() const { return family_; }
    double omega_p() const { return omega_p_; }
    double gamma_p() const { return gamma_p_; }
    double strength() const { return strength_; }
    const std::vector<std::array<double, 2>>& table() const { return table_; }

    // h(e); zero outside compact support / table range. e must be finite, >= 0.
    double evaluate(double e) const;

    // ∫₀^e h, via the closed-form antiderivative (trapezoid prefix for tables).
    double cumulative(double e) const;

    // ∫₀^∞ h, exact (closed form or full-table trapezoid).
    double total_mass() const;

    // Frequency where h attains its maximum.
    double peak_frequency() const;

    // Smallest interval in [0, ∞) whose complement holds <= tail_mass of the
    // total mass (half on each side where possible). Exact endpoints for the
    // compactly supported family.
    std::pair<double, double> support_bounds(double tail_mass) const;

    // The window actually integrated over. Equals support_bounds except for
    // the lorentzian, whose power-law tail is capped at omega_p + 2000·gamma_p
    // so oscillatory panels stay within budget; every consumer shares this
    // window so omitted tails cancel between evaluation routes, and the mass
    // beyond it re-enters analytically through cumulative()/total_mass().
    std::pair<double, double> resolved_bounds(double tail_mass) const;

    SpectralMoments total_weight(const QuadratureConfig& cfg) const;

    // K(x) = ∫₀^∞ h(e)cos(e·x) de. Even in x. The closed_form method is the
    // full-line transform and reports the half-line correction bound in
    // `error`; quadrature integrates resolved_bounds() and reports the
    // omitted-tail bound. Tabulated densities use an exact piecewise-linear
    // transform under either non-automatic method name.
    KernelValue cosine_kernel(double x, KernelMethod method = KernelMethod::automatic,
                              const QuadratureConfig& cfg = QuadratureConfig{}) const;

  private:
    SpectralDensity() = default;

    SpectralFamily family_{SpectralFamily::gaussian};
    double omega_p_{1.0};
    double gamma_p_{0.15};
    double strength_{3.0};
    std::vector<std::array<double, 2>> table_;
    std::vector<double> table_prefix_; // trapezoid cumulative per sample
};

// Resolves KernelMethod::automatic for a given density.
KernelMethod resolve_kernel_method(const SpectralDensity& sd, KernelMethod method);

} // namespace spc
