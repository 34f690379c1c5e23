#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>

#include "asym/box_domain.hpp"
#include "asym/multi_index.hpp"
#include "asym/smooth_function.hpp"
#include "asym/taylor.hpp"

namespace asym {

enum class ScalarKind { Real, Complex };

/// An epsilon-net of smooth scalar functions on a box, evaluable together
/// with partial derivatives up to max_deriv_order. Evaluators are pure and
/// re-entrant; nets are immutable values and all arithmetic returns new nets.
class Net {
public:
    using Evaluator =
        std::function<Cplx(double eps, std::span<const double> x, const MultiIndex& alpha)>;

    Net(BoxDomain domain, ScalarKind kind, int max_deriv_order, Evaluator eval,
        std::string label = "net");

    const BoxDomain& domain() const { return domain_; }
    ScalarKind kind() const { return kind_; }
    int max_deriv_order() const { return max_order_; }
    const std::string& label() const { return label_; }
    Net with_label(std::string label) const;

    /// Feature hints (center, radius factor): the net concentrates activity
    /// on [c - f*eps, c + f*eps]. Quadrature seeds panel boundaries there.
    const std::vector<std::pair<double, double>>& features() const { return features_; }
    Net with_feature(double center, double radius_factor) const;
    Net with_features(std::vector<std::pair<double, double>> f) const;

    /// D^alpha f_eps(x). Checks domain membership, derivative capability
    /// and 0 < eps <= 1.
    Cplx eval(double eps, std::span<const double> x, const MultiIndex& alpha) const;
    double eval_real(double eps, std::span<const double> x, const MultiIndex& alpha) const;
    /// Convenience for 1-d nets: alpha = (k).
    double eval1(double eps, double x, int k = 0) const;

private:
    BoxDomain domain_;
    ScalarKind kind_;
    int max_order_;
    Evaluator eval_;
    std::string label_;
    std::vector<std::pair<double, double>> features_;
};

/// Union of both nets' feature hints, for arithmetic combinators.
std::vector<std::pair<double, double>> merge_features(const Net& a, const Net& b);

Net add(const Net& a, const Net& b);
Net mul(const Net& a, const Net& b);  // derivative evaluation via the Leibniz rule
Net scale(Cplx c, const Net& a);
Net neg(const Net& a);
Net sub(const Net& a, const Net& b);

/// New net whose (x, beta)-evaluation equals the original (x, alpha+beta).
Net derive(const Net& a, const MultiIndex& alpha);

/// F^*: evaluator computes D^alpha (f_eps o F) by jet propagation.
Net pullback(const Net& a, const SmoothMap& F);

/// i_U: the class of the constant net with value f.
Net embed_smooth(const SmoothFunction& f, const BoxDomain& domain, int max_deriv_order = 8);

/// Sampled surrogate for max_{x in K} |D^alpha f_eps(x)|: the maximum of
/// |eval| over the uniform tensor grid with grid_per_axis subdivisions per
/// axis (grid_per_axis + 1 points including both corners). NaN evaluations
/// raise EvaluationError; infinities are returned as is.
double sup_on_box(const Net& a, double eps, const CompactBox& K, const MultiIndex& alpha,
                  int grid_per_axis);

/// The full jet of a net at one point as a Taylor polynomial of given order.
TaylorPoly net_jet(const Net& a, double eps, std::span<const double> x, int order);

}  // namespace asym
