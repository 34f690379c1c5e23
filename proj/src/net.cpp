#include "asym/net.hpp"

#include <algorithm>
#include <cmath>

namespace asym {

Net::Net(BoxDomain domain, ScalarKind kind, int max_deriv_order, Evaluator eval, std::string label)
    : domain_(std::move(domain)),
      kind_(kind),
      max_order_(max_deriv_order),
      eval_(std::move(eval)),
      label_(std::move(label)) {
    if (max_order_ < 0) throw ShapeError("max_deriv_order must be non-negative");
}

Net Net::with_label(std::string label) const {
    Net n = *this;
    n.label_ = std::move(label);
    return n;
}

Net Net::with_feature(double center, double radius_factor) const {
    Net n = *this;
    n.features_.emplace_back(center, radius_factor);
    return n;
}

Net Net::with_features(std::vector<std::pair<double, double>> f) const {
    Net n = *this;
    n.features_ = std::move(f);
    return n;
}

std::vector<std::pair<double, double>> merge_features(const Net& a, const Net& b) {
    std::vector<std::pair<double, double>> f = a.features();
    for (const auto& x : b.features()) {
        if (std::find(f.begin(), f.end(), x) == f.end()) f.push_back(x);
    }
    return f;
}

Cplx Net::eval(double eps, std::span<const double> x, const MultiIndex& alpha) const {
    if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("eps must lie in (0,1]");
    if (alpha.dim() != domain_.dim()) throw ShapeError("alpha dimension mismatch");
    if (!domain_.contains(x)) throw DomainError("point outside net domain (" + label_ + ")");
    if (alpha.order() > max_order_)
        throw CapabilityError("derivative order " + std::to_string(alpha.order()) +
                              " exceeds net capability " + std::to_string(max_order_));
    return eval_(eps, x, alpha);
}

double Net::eval_real(double eps, std::span<const double> x, const MultiIndex& alpha) const {
    return eval(eps, x, alpha).real();
}

double Net::eval1(double eps, double x, int k) const {
    double p[1] = {x};
    return eval(eps, std::span<const double>(p, 1), MultiIndex({k})).real();
}

namespace {

void require_same_shape(const Net& a, const Net& b, const char* op) {
    if (!a.domain().same_box(b.domain()))
        throw ShapeError(std::string(op) + ": domain mismatch");
    if (a.kind() != b.kind()) throw ShapeError(std::string(op) + ": scalar kind mismatch");
}

}  // namespace

Net add(const Net& a, const Net& b) {
    require_same_shape(a, b, "add");
    return Net(a.domain(), a.kind(), std::min(a.max_deriv_order(), b.max_deriv_order()),
               [a, b](double eps, std::span<const double> x, const MultiIndex& al) {
                   return a.eval(eps, x, al) + b.eval(eps, x, al);
               },
               a.label() + "+" + b.label())
        .with_features(merge_features(a, b));
}

Net mul(const Net& a, const Net& b) {
    require_same_shape(a, b, "mul");
    return Net(a.domain(), a.kind(), std::min(a.max_deriv_order(), b.max_deriv_order()),
               [a, b](double eps, std::span<const double> x, const MultiIndex& al) {
                   Cplx v(0.0, 0.0);
                   for (const MultiIndex& be : sub_indices(al)) {
                       std::vector<int> re(al.entries());
                       for (int i = 0; i < al.dim(); ++i) re[static_cast<size_t>(i)] -= be[i];
                       v += multi_binomial(al, be) * a.eval(eps, x, be) *
                            b.eval(eps, x, MultiIndex(std::move(re)));
                   }
                   return v;
               },
               a.label() + "*" + b.label())
        .with_features(merge_features(a, b));
}

Net scale(Cplx c, const Net& a) {
    ScalarKind kind = (c.imag() != 0.0) ? ScalarKind::Complex : a.kind();
    return Net(a.domain(), kind, a.max_deriv_order(),
               [c, a](double eps, std::span<const double> x, const MultiIndex& al) {
                   return c * a.eval(eps, x, al);
               },
               "scale(" + a.label() + ")")
        .with_features(a.features());
}

Net neg(const Net& a) { return scale(Cplx(-1.0, 0.0), a).with_label("-" + a.label()); }

Net sub(const Net& a, const Net& b) { return add(a, neg(b)).with_label(a.label() + "-" + b.label()); }

Net derive(const Net& a, const MultiIndex& alpha) {
    if (alpha.dim() != a.domain().dim()) throw ShapeError("derive: alpha dimension mismatch");
    int remaining = a.max_deriv_order() - alpha.order();
    if (remaining < 0) throw CapabilityError("derive: order overflow");
    return Net(a.domain(), a.kind(), remaining,
               [a, alpha](double eps, std::span<const double> x, const MultiIndex& be) {
                   return a.eval(eps, x, alpha.plus(be));
               },
               "D" + alpha.str() + a.label())
        .with_features(a.features());
}

Net pullback(const Net& a, const SmoothMap& F) {
    if (F.dim_out != a.domain().dim()) throw ShapeError("pullback: map target dimension mismatch");
    return Net(F.source, a.kind(), a.max_deriv_order(),
               [a, F](double eps, std::span<const double> w, const MultiIndex& al) {
                   const int m = al.order();
                   std::vector<double> u = F(w);
                   if (m == 0) return a.eval(eps, u, MultiIndex::zero(a.domain().dim()));
                   const int din = F.dim_in();
                   std::vector<TaylorPoly> inner;
                   inner.reserve(F.components.size());
                   for (const auto& c : F.components) {
                       inner.push_back(TaylorPoly::from_jets(
                           din, m, [&](const MultiIndex& b) { return Cplx(c.jet(w, b), 0.0); }));
                   }
                   TaylorPoly outer = net_jet(a, eps, u, m);
                   return taylor_compose(outer, inner).derivative(al);
               },
               a.label() + "o" + F.name);
}

Net embed_smooth(const SmoothFunction& f, const BoxDomain& domain, int max_deriv_order) {
    if (f.dim != domain.dim()) throw ShapeError("embed_smooth: dimension mismatch");
    return Net(domain, ScalarKind::Real, max_deriv_order,
               [f](double, std::span<const double> x, const MultiIndex& al) {
                   return Cplx(f.jet(x, al), 0.0);
               },
               "i(" + f.name + ")");
}

double sup_on_box(const Net& a, double eps, const CompactBox& K, const MultiIndex& alpha,
                  int grid_per_axis) {
    if (grid_per_axis < 2) throw ShapeError("sup_on_box: grid_per_axis must be >= 2");
    if (!K.inside(a.domain())) throw DomainError("sup_on_box: box not inside net domain");
    const int dim = K.dim();
    double best = 0.0;
    std::vector<double> x(static_cast<size_t>(dim));
    std::vector<int> idx(static_cast<size_t>(dim), 0);
    const long long per_axis = grid_per_axis + 1;
    long long total = 1;
    for (int i = 0; i < dim; ++i) total *= per_axis;
    for (long long it = 0; it < total; ++it) {
        long long rem = it;
        for (int i = 0; i < dim; ++i) {
            idx[static_cast<size_t>(i)] = static_cast<int>(rem % per_axis);
            rem /= per_axis;
        }
        for (int i = 0; i < dim; ++i) {
            double t = static_cast<double>(idx[static_cast<size_t>(i)]) /
                       static_cast<double>(grid_per_axis);
            x[static_cast<size_t>(i)] = K.lower(i) + (K.upper(i) - K.lower(i)) * t;
        }
        double v = std::abs(a.eval(eps, x, alpha));
        if (std::isnan(v))
            throw EvaluationError("non-finite evaluation in sup_on_box at eps=" +
                                  std::to_string(eps));
        if (v > best) best = v;
    }
    return best;
}

TaylorPoly net_jet(const Net& a, double eps, std::span<const double> x, int order) {
    return TaylorPoly::from_jets(a.domain().dim(), order,
                                 [&](const MultiIndex& b) { return a.eval(eps, x, b); });
}

}  // namespace asym
