// quadrature.hpp — adaptive Gauss–Kronrod integration tuned for oscillatory
// spectral integrands (cos(e·x) against a peaked density).

#pragma once

#include <functional>
#include <vector>

namespace spc {

// Shared tolerance/budget settings for every integral in the library.
struct QuadratureConfig {
    double rel_tol{1e-8};       // relative tolerance target
    double abs_tol{1e-12};      // absolute floor (dominates near zero results)
    int max_subdivisions{4000}; // panel budget for one integral
    double tail_mass{1e-10};    // density fraction allowed outside the window
};

struct QuadratureResult {
    double value{0.0};
    double error{0.0};     // estimated absolute error (bound, not a guess)
    bool converged{true};  // error <= max(abs_tol, rel_tol*|value|)
    int subdivisions{0};   // panels used
};

// Integrates f over [lo, hi]. If oscillation_period > 0 the interval is
// pre-split into half-period panels (capped at half the budget) so the
// embedded rule never straddles many oscillations; split_points inject
// extra panel boundaries (e.g. the density peak). Refinement is
// worst-panel-first until the tolerance or the budget is met.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureConfig& cfg,
                                    double oscillation_period = 0.0,
                                    const std::vector<double>& split_points = {});

} // namespace spc
