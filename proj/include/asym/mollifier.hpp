#pragma once

#include <vector>

#include "asym/errors.hpp"

namespace asym {

/// Dense 1-d polynomial with double coefficients (ascending); the small
/// helper behind bump-kernel jets and mollifier profiles.
struct DensePoly {
    std::vector<double> c;

    double eval(double x) const;
    DensePoly derivative() const;
    DensePoly times(const DensePoly& other) const;
    DensePoly plus(const DensePoly& other) const;
    DensePoly scaled(double s) const;
};

/// The standard unnormalized bump exp(-1/(1-x^2)) on (-1,1) with exact
/// derivatives of every order: D^k = (N_k(x)/(1-x^2)^{2k}) exp(-1/(1-x^2)),
/// the numerators generated once by the recurrence
/// N_{k+1} = N_k' D^2 + 4k x N_k D - 2x N_k, D = 1-x^2.
class BumpKernel {
public:
    explicit BumpKernel(int max_order);
    int max_order() const { return static_cast<int>(numer_.size()) - 1; }
    double eval(double x, int k) const;

private:
    std::vector<DensePoly> numer_;
};

/// Compactly supported smooth mollifier: (polynomial of degree <= N) times
/// the standard bump, rescaled to the requested support radius, with
/// integral 1 and vanishing moments 1..N. Construction solves the
/// (N+1)-dimensional moment system once; everything afterwards is pure and
/// immutable (safe to share across threads).
class Mollifier {
public:
    static Mollifier make(int vanishing_moments, double support_radius, int max_order = 12);

    int vanishing_moments() const { return moments_; }
    double support_radius() const { return radius_; }
    int max_order() const { return kernel_.max_order(); }

    /// phi^{(k)}(x); zero outside (-radius, radius).
    double profile(double x, int k = 0) const;
    /// int_{-inf}^{t} phi, exactly 0 left of the support and 1 right of it.
    double antiderivative(double t) const;

private:
    Mollifier(BumpKernel kernel, DensePoly pcoef, double radius, int moments);
    void build_antiderivative_table();
    /// psi^{(k)} on the unit-radius profile psi(u) = p(u) * bump(u).
    double base_profile(double u, int k) const;

    BumpKernel kernel_;
    DensePoly pcoef_;
    double radius_;
    int moments_;
    std::vector<double> cum_table_;  // cumulative integral at panel boundaries
    int table_panels_ = 256;
};

}  // namespace asym
