#include "asym/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace asym {

GaussLegendre::GaussLegendre(int n) {
    nodes.resize(static_cast<size_t>(n));
    weights.resize(static_cast<size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double z1 = 0.0, pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        nodes[static_cast<size_t>(i)] = -z;
        nodes[static_cast<size_t>(n - 1 - i)] = z;
        double w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[static_cast<size_t>(i)] = w;
        weights[static_cast<size_t>(n - 1 - i)] = w;
    }
}

const GaussLegendre& gauss_legendre(int n) {
    static std::mutex mtx;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, GaussLegendre(n)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussLegendre& gl = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * f(mid + half * gl.nodes[i]);
    return s * half;
}

namespace {

struct Panel {
    double a, b;
    int depth;
};

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int nodes, int max_depth,
                              std::span<const double> split_points) {
    QuadResult out;
    if (a == b) return out;

    std::vector<double> cuts = {a, b};
    for (double s : split_points) {
        if (s > a && s < b) cuts.push_back(s);
    }
    std::sort(cuts.begin(), cuts.end());

    std::vector<Panel> stack;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) stack.push_back({cuts[i], cuts[i + 1], 0});

    double sum = 0.0, err_sum = 0.0;
    const double span = b - a;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double coarse = integrate_gl(f, p.a, p.b, nodes);
        double fine = integrate_gl(f, p.a, p.b, 2 * nodes);
        double err = std::abs(fine - coarse);
        double local_tol = std::max(abs_tol * (p.b - p.a) / span, rel_tol * std::abs(fine));
        if (err <= local_tol || p.depth >= max_depth) {
            sum += fine;
            err_sum += err;
            if (p.depth >= max_depth && err > local_tol) out.converged = false;
            continue;
        }
        double mid = 0.5 * (p.a + p.b);
        stack.push_back({p.a, mid, p.depth + 1});
        stack.push_back({mid, p.b, p.depth + 1});
    }
    out.value = sum;
    out.error_estimate = err_sum;
    return out;
}

}  // namespace asym
