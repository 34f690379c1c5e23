#include "asym/linear_fit.hpp"

#include <cmath>

#include "asym/errors.hpp"

namespace asym {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ShapeError("fit_line: need >= 2 samples");
    const int n = static_cast<int>(x.size());
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += x[static_cast<size_t>(i)];
        my += y[static_cast<size_t>(i)];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        double dx = x[static_cast<size_t>(i)] - mx;
        double dy = y[static_cast<size_t>(i)] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LineFit fit;
    fit.n = n;
    if (sxx == 0.0) throw ShapeError("fit_line: degenerate abscissae");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = y[static_cast<size_t>(i)] - (fit.slope * x[static_cast<size_t>(i)] + fit.intercept);
        ss_res += r * r;
    }
    const double scale = syy + my * my * n;
    if (syy <= 1e-24 * std::max(1.0, scale)) {
        fit.r2 = (ss_res <= 1e-20 * std::max(1.0, scale)) ? 1.0 : 0.0;
    } else {
        fit.r2 = 1.0 - ss_res / syy;
    }
    fit.slope_se = (n > 2) ? std::sqrt(ss_res / ((n - 2) * sxx)) : 0.0;
    return fit;
}

}  // namespace asym
