#pragma once

#include <functional>
#include <vector>

namespace stablelike::quad {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // accumulated error estimate
};

// Adaptive Gauss-Kronrod (G7, K15) on a finite interval. Stops when the
// summed panel error estimate falls under max(abs_tol, rel_tol*|value|).
// Throws NumericalError when the panel budget runs out first.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_panels = 4000);

// Same, but the initial panel edges are given explicitly. Breakpoints must be
// increasing; panels between consecutive breakpoints are refined adaptively.
QuadResult integrate_segments(const std::function<double(double)>& f,
                              const std::vector<double>& breakpoints,
                              double abs_tol, double rel_tol, int max_panels = 4000);

// Breakpoint helper: a, a*ratio, a*ratio^2, ..., capped at b (0 < a < b).
std::vector<double> geometric_breakpoints(double a, double b, double ratio = 2.0);

}  // namespace stablelike::quad
