#pragma once

#include <span>

namespace asym {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;        // coefficient of determination; 1 for an exact fit
    double slope_se = 0.0;  // standard error of the slope
    int n = 0;
};

/// Ordinary least squares y ~ slope*x + intercept. A constant dataset fitted
/// by a constant is a perfect fit (r2 = 1) even though SS_tot vanishes.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace asym
