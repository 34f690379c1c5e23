#include "asym/mollifier.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "asym/quadrature.hpp"

namespace asym {

double DensePoly::eval(double x) const {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

DensePoly DensePoly::derivative() const {
    DensePoly d;
    if (c.size() <= 1) return d;
    d.c.resize(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d.c[i - 1] = static_cast<double>(i) * c[i];
    return d;
}

DensePoly DensePoly::times(const DensePoly& other) const {
    DensePoly r;
    if (c.empty() || other.c.empty()) return r;
    r.c.assign(c.size() + other.c.size() - 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
        for (size_t j = 0; j < other.c.size(); ++j) r.c[i + j] += c[i] * other.c[j];
    }
    return r;
}

DensePoly DensePoly::plus(const DensePoly& other) const {
    DensePoly r;
    r.c.assign(std::max(c.size(), other.c.size()), 0.0);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < other.c.size(); ++i) r.c[i] += other.c[i];
    return r;
}

DensePoly DensePoly::scaled(double s) const {
    DensePoly r = *this;
    for (double& v : r.c) v *= s;
    return r;
}

BumpKernel::BumpKernel(int max_order) {
    const DensePoly D{{1.0, 0.0, -1.0}};            // 1 - x^2
    const DensePoly D2 = D.times(D);
    numer_.push_back(DensePoly{{1.0}});             // N_0 = 1
    for (int k = 0; k < max_order; ++k) {
        const DensePoly& Nk = numer_.back();
        DensePoly term1 = Nk.derivative().times(D2);
        DensePoly term2 = DensePoly{{0.0, 4.0 * k}}.times(Nk).times(D);
        DensePoly term3 = DensePoly{{0.0, -2.0}}.times(Nk);
        numer_.push_back(term1.plus(term2).plus(term3));
    }
}

double BumpKernel::eval(double x, int k) const {
    if (k < 0 || k > max_order()) throw CapabilityError("bump derivative order out of range");
    const double t = 1.0 - x * x;
    if (t <= 0.0) return 0.0;
    const double a = -1.0 / t;
    if (a < -700.0) return 0.0;  // exp underflows before the rational part overflows
    double denom = 1.0;
    for (int i = 0; i < 2 * k; ++i) denom *= t;
    return numer_[static_cast<size_t>(k)].eval(x) * std::exp(a) / denom;
}

Mollifier::Mollifier(BumpKernel kernel, DensePoly pcoef, double radius, int moments)
    : kernel_(std::move(kernel)), pcoef_(std::move(pcoef)), radius_(radius), moments_(moments) {
    build_antiderivative_table();
}

Mollifier Mollifier::make(int vanishing_moments, double support_radius, int max_order) {
    if (vanishing_moments < 0) throw ShapeError("vanishing_moments must be >= 0");
    if (vanishing_moments > 8)
        throw CapabilityError("moment system ill-conditioned beyond N = 8");
    if (!(support_radius > 0.0)) throw ShapeError("support radius must be positive");

    const int N = vanishing_moments;
    BumpKernel kernel(max_order + N + 2);

    // moments of the unit bump, M_j = int u^j exp(-1/(1-u^2)) du (GL-96 is
    // exact to machine precision here)
    std::vector<double> M(static_cast<size_t>(2 * N + 1), 0.0);
    for (int j = 0; j <= 2 * N; ++j) {
        M[static_cast<size_t>(j)] = integrate_gl(
            [&](double u) { return std::pow(u, j) * kernel.eval(u, 0); }, -1.0, 1.0, 96);
    }

    Eigen::MatrixXd A(N + 1, N + 1);
    for (int j = 0; j <= N; ++j) {
        for (int k = 0; k <= N; ++k) A(j, k) = M[static_cast<size_t>(j + k)];
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + 1);
    rhs(0) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) throw CapabilityError("moment system is singular");
    Eigen::VectorXd sol = lu.solve(rhs);

    DensePoly p;
    p.c.resize(static_cast<size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) p.c[static_cast<size_t>(k)] = sol(k);

    return Mollifier(std::move(kernel), std::move(p), support_radius, N);
}

double Mollifier::base_profile(double u, int k) const {
    // Leibniz over the polynomial factor and the bump
    double v = 0.0;
    double binom = 1.0;
    DensePoly pd = pcoef_;
    for (int i = 0; i <= k; ++i) {
        if (i > 0) {
            binom = binom * static_cast<double>(k - i + 1) / static_cast<double>(i);
            pd = pd.derivative();
        }
        if (pd.c.empty()) break;
        v += binom * pd.eval(u) * kernel_.eval(u, k - i);
    }
    return v;
}

double Mollifier::profile(double x, int k) const {
    const double u = x / radius_;
    if (u <= -1.0 || u >= 1.0) return 0.0;
    double scale = 1.0 / radius_;
    for (int i = 0; i < k; ++i) scale /= radius_;
    return base_profile(u, k) * scale;
}

void Mollifier::build_antiderivative_table() {
    cum_table_.assign(static_cast<size_t>(table_panels_) + 1, 0.0);
    const double h = 2.0 / table_panels_;
    double acc = 0.0;
    for (int p = 0; p < table_panels_; ++p) {
        const double a = -1.0 + p * h, b = a + h;
        acc += integrate_gl([&](double u) { return base_profile(u, 0); }, a, b, 16);
        cum_table_[static_cast<size_t>(p) + 1] = acc;
    }
}

double Mollifier::antiderivative(double t) const {
    const double u = t / radius_;
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return cum_table_.back();
    const double h = 2.0 / table_panels_;
    int panel = static_cast<int>(std::floor((u + 1.0) / h));
    if (panel >= table_panels_) panel = table_panels_ - 1;
    const double a = -1.0 + panel * h;
    double partial = integrate_gl([&](double v) { return base_profile(v, 0); }, a, u, 16);
    return cum_table_[static_cast<size_t>(panel)] + partial;
}

}  // namespace asym
