#pragma once

#include <functional>
#include <vector>

namespace betasplit::quad {

struct QuadResult {
    double value = 0.0;
    double est_error = 0.0;
    int panels = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. The interval is
/// pre-split at the points in `breaks` (sorted, inside (a, b)). Throws
/// NonconvergenceError when max_panels is exhausted above abs_tol.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, int max_panels,
                     const std::vector<double>& breaks = {});

/// Integral over [T, inf) via tau = T/u, u in (0, 1].
QuadResult integrate_tail(const std::function<double(double)>& f, double T, double abs_tol, int max_panels);

}  // namespace betasplit::quad
