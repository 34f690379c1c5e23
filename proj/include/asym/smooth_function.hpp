#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "asym/box_domain.hpp"
#include "asym/multi_index.hpp"

namespace asym {

/// A closed-form smooth scalar function with exact jets of every order.
/// These feed the constant (epsilon-independent) nets and pullback maps.
struct SmoothFunction {
    int dim = 1;
    std::string name;
    std::function<double(std::span<const double>, const MultiIndex&)> jet;

    double operator()(std::span<const double> x) const { return jet(x, MultiIndex::zero(dim)); }
    double value1(double x) const {
        double p[1] = {x};
        return jet(std::span<const double>(p, 1), MultiIndex::zero(1));
    }
};

namespace smooth {

SmoothFunction constant(int dim, double c);
SmoothFunction coordinate(int dim, int axis);
/// w . x + b
SmoothFunction affine(int dim, std::vector<double> w, double b);
/// 1-d polynomial sum c_k x^k with exact derivative jets.
SmoothFunction poly1(std::vector<double> coeffs, std::string name = "");
/// sin(a x + b), cos(a x + b), exp(a x + b) of coordinate `axis`.
SmoothFunction sin_of(int dim, int axis, double a = 1.0, double b = 0.0);
SmoothFunction cos_of(int dim, int axis, double a = 1.0, double b = 0.0);
SmoothFunction exp_of(int dim, int axis, double a = 1.0, double b = 0.0);
/// Monomial x_axis^k in n variables.
SmoothFunction power_of(int dim, int axis, int k);

SmoothFunction add(const SmoothFunction& f, const SmoothFunction& g);
SmoothFunction mul(const SmoothFunction& f, const SmoothFunction& g);
SmoothFunction scale(double c, const SmoothFunction& f);

}  // namespace smooth

/// A smooth map between boxes with componentwise jets; used for pullbacks.
struct SmoothMap {
    BoxDomain source = BoxDomain::point();
    int dim_out = 0;
    std::vector<SmoothFunction> components;
    std::string name;

    int dim_in() const { return source.dim(); }
    std::vector<double> operator()(std::span<const double> x) const;

    static SmoothMap identity(const BoxDomain& box);
    static SmoothMap from_components(BoxDomain source, std::vector<SmoothFunction> comps,
                                     std::string name = "");
};

/// Levelwise map composition on jets (chain rule via Taylor substitution).
SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

}  // namespace asym
