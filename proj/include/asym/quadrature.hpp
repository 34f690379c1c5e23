#pragma once

#include <functional>
#include <span>
#include <vector>

namespace asym {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1],
/// computed by Newton iteration on the Legendre polynomial.
struct GaussLegendre {
    std::vector<double> nodes, weights;
    explicit GaussLegendre(int n);
};

/// Cached rule lookup (thread safe).
const GaussLegendre& gauss_legendre(int n);

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

/// Adaptive bisection with an embedded GL(n)/GL(2n) error estimate.
/// split_points inside (a,b) seed the initial panel boundaries so kinks
/// and support edges never sit inside a panel.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int nodes = 15, int max_depth = 48,
                              std::span<const double> split_points = {});

}  // namespace asym
