#include "asym/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "asym/quadrature.hpp"

namespace asym {

// ---------------------------------------------------------------------------
// TestFunction

TestFunction::TestFunction(DensePoly p, double center, double width, double height)
    : kernel_(std::make_shared<const BumpKernel>(14)),
      pcoef_(std::move(p)),
      center_(center),
      width_(width),
      height_(height) {
    if (!(width > 0.0)) throw ShapeError("test function width must be positive");
}

TestFunction TestFunction::bump(double center, double width, double height) {
    return TestFunction(DensePoly{{1.0}}, center, width, height);
}

TestFunction TestFunction::tilted_bump(double center, double width, double tilt) {
    return TestFunction(DensePoly{{tilt, 1.0}}, center, width, 1.0);
}

TestFunction TestFunction::zero(double center, double width) {
    return TestFunction(DensePoly{{0.0}}, center, width, 0.0);
}

double TestFunction::eval(double x, int k) const {
    const double u = (x - center_) / width_;
    if (u <= -1.0 || u >= 1.0) return 0.0;
    // Leibniz over the polynomial factor and the bump, then chain-rule scale
    double v = 0.0;
    double binom = 1.0;
    DensePoly pd = pcoef_;
    for (int i = 0; i <= k; ++i) {
        if (i > 0) {
            binom = binom * static_cast<double>(k - i + 1) / static_cast<double>(i);
            pd = pd.derivative();
        }
        if (pd.c.empty()) break;
        v += binom * pd.eval(u) * kernel_->eval(u, k - i);
    }
    double scale = height_;
    for (int i = 0; i < k; ++i) scale /= width_;
    return v * scale;
}

SmoothFunction TestFunction::as_smooth() const {
    TestFunction copy = *this;
    SmoothFunction f;
    f.dim = 1;
    f.name = "testfn";
    f.jet = [copy](std::span<const double> x, const MultiIndex& a) {
        return copy.eval(x[0], a.order());
    };
    return f;
}

// ---------------------------------------------------------------------------
// DistributionSpec factories

DistributionSpec DistributionSpec::delta(int order, double shift) {
    DistributionSpec s;
    s.kind = Kind::DeltaDerivative;
    s.delta_order = order;
    s.shift = shift;
    s.name = "delta" + std::string(static_cast<size_t>(order), '\'');
    return s;
}

DistributionSpec DistributionSpec::heaviside(double shift) {
    DistributionSpec s;
    s.kind = Kind::Heaviside;
    s.shift = shift;
    s.name = "heaviside";
    return s;
}

DistributionSpec DistributionSpec::pv_reciprocal() {
    DistributionSpec s;
    s.kind = Kind::PVReciprocal;
    s.name = "pv";
    return s;
}

DistributionSpec DistributionSpec::locally_integrable(std::function<double(double)> f,
                                                      std::vector<double> kinks,
                                                      std::string name) {
    DistributionSpec s;
    s.kind = Kind::LocallyIntegrable;
    s.li_fn = std::move(f);
    s.li_kinks = std::move(kinks);
    s.name = std::move(name);
    return s;
}

DistributionSpec DistributionSpec::sign_x() {
    DistributionSpec s = locally_integrable([](double x) { return x < 0.0 ? -1.0 : 1.0; }, {0.0},
                                            "sign");
    s.li_derivative = std::make_shared<const std::vector<std::pair<double, DistributionSpec>>>(
        std::vector<std::pair<double, DistributionSpec>>{{2.0, delta(0, 0.0)}});
    return s;
}

DistributionSpec DistributionSpec::abs_x() {
    DistributionSpec s = locally_integrable([](double x) { return std::abs(x); }, {0.0}, "abs");
    s.li_derivative = std::make_shared<const std::vector<std::pair<double, DistributionSpec>>>(
        std::vector<std::pair<double, DistributionSpec>>{{1.0, sign_x()}});
    return s;
}

DistributionSpec DistributionSpec::smooth(SmoothFunction f) {
    DistributionSpec s;
    s.kind = Kind::SmoothFn;
    s.name = "smooth:" + f.name;
    s.fn = std::move(f);
    return s;
}

std::optional<std::vector<std::pair<double, DistributionSpec>>> DistributionSpec::derivative()
    const {
    switch (kind) {
        case Kind::DeltaDerivative:
            return std::vector<std::pair<double, DistributionSpec>>{
                {1.0, delta(delta_order + 1, shift)}};
        case Kind::Heaviside:
            return std::vector<std::pair<double, DistributionSpec>>{{1.0, delta(0, shift)}};
        case Kind::SmoothFn: {
            SmoothFunction df;
            df.dim = fn.dim;
            df.name = fn.name + "'";
            if (fn.dim != 1) return std::nullopt;
            df.jet = [f = fn](std::span<const double> x, const MultiIndex& a) {
                return f.jet(x, a.plus(MultiIndex::unit(1, 0)));
            };
            return std::vector<std::pair<double, DistributionSpec>>{{1.0, smooth(df)}};
        }
        case Kind::LocallyIntegrable:
            if (li_derivative) return *li_derivative;
            return std::nullopt;
        case Kind::PVReciprocal:
            return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// embed

namespace {

/// Shared closed form for D^m of the delta-k embedding; Heaviside
/// derivatives dispatch here so the identity D(iota H) = iota(delta) is
/// bit-exact.
double delta_eval(const Mollifier& phi, int k, double eps, double x) {
    return std::pow(eps, -1.0 - static_cast<double>(k)) * phi.profile(x / eps, k);
}

Net embed_delta(const DistributionSpec& u, const Mollifier& phi, const BoxDomain& domain,
                const EmbedOptions& opts) {
    const int k = u.delta_order;
    const double c = u.shift;
    return Net(domain, ScalarKind::Real, opts.max_deriv_order,
               [phi, k, c](double eps, std::span<const double> x, const MultiIndex& a) {
                   return Cplx(delta_eval(phi, k + a.order(), eps, x[0] - c), 0.0);
               },
               "iota(" + u.name + ")")
        .with_feature(c, phi.support_radius());
}

Net embed_heaviside(const DistributionSpec& u, const Mollifier& phi, const BoxDomain& domain,
                    const EmbedOptions& opts) {
    const double c = u.shift;
    return Net(domain, ScalarKind::Real, opts.max_deriv_order,
               [phi, c](double eps, std::span<const double> x, const MultiIndex& a) {
                   const int m = a.order();
                   if (m == 0) return Cplx(phi.antiderivative((x[0] - c) / eps), 0.0);
                   return Cplx(delta_eval(phi, m - 1, eps, x[0] - c), 0.0);
               },
               "iota(heaviside)")
        .with_feature(c, phi.support_radius());
}

Net embed_pv(const DistributionSpec&, const Mollifier& phi, const BoxDomain& domain,
             const EmbedOptions& opts) {
    return Net(domain, ScalarKind::Real, opts.max_deriv_order,
               [phi, opts](double eps, std::span<const double> xs, const MultiIndex& a) {
                   const double x = xs[0];
                   const int m = a.order();
                   const double r = phi.support_radius();
                   auto g = [&](double t) { return delta_eval(phi, m, eps, t); };
                   auto gp = [&](double t) { return delta_eval(phi, m + 1, eps, t); };
                   // pv integral F(x) = int_0^inf (g(x-y) - g(x+y))/y dy with the
                   // symmetric pairing making the integrand continuous at 0
                   auto f = [&](double y) {
                       if (y < 1e-12) return -2.0 * gp(x);
                       return (g(x - y) - g(x + y)) / y;
                   };
                   const double ymax = std::abs(x) + r * eps + 1e-9;
                   std::vector<double> splits = {std::abs(x - r * eps), std::abs(x + r * eps),
                                                 std::abs(x) - r * eps, std::abs(x) + r * eps};
                   std::erase_if(splits, [&](double s) { return !(s > 0.0 && s < ymax); });
                   QuadResult q = integrate_adaptive(f, 0.0, ymax, opts.quad_abs_tol,
                                                     opts.quad_rel_tol, 15, 40, splits);
                   if (!q.converged)
                       throw IntegrationError("pv convolution quadrature did not converge");
                   return Cplx(q.value, 0.0);
               },
               "iota(pv)")
        .with_feature(0.0, phi.support_radius());
}

Net embed_locally_integrable(const DistributionSpec& u, const Mollifier& phi,
                             const BoxDomain& domain, const EmbedOptions& opts) {
    auto f = u.li_fn;
    auto kinks = u.li_kinks;
    std::vector<std::pair<double, double>> feats;
    for (double kk : kinks) feats.emplace_back(kk, phi.support_radius());
    return Net(domain, ScalarKind::Real, opts.max_deriv_order,
               [phi, f, kinks, domain, opts](double eps, std::span<const double> xs,
                                             const MultiIndex& a) {
                   const double x = xs[0];
                   const int m = a.order();
                   const double r = phi.support_radius();
                   // window clamped to the domain closure near the boundary
                   double lo = std::max(x - r * eps, domain.lower(0));
                   double hi = std::min(x + r * eps, domain.upper(0));
                   if (!(lo < hi)) return Cplx(0.0, 0.0);
                   auto integrand = [&](double y) {
                       return f(y) * delta_eval(phi, m, eps, x - y);
                   };
                   std::vector<double> splits;
                   for (double kk : kinks) {
                       if (kk > lo && kk < hi) splits.push_back(kk);
                   }
                   QuadResult q = integrate_adaptive(integrand, lo, hi, opts.quad_abs_tol,
                                                     opts.quad_rel_tol, 15, 40, splits);
                   if (!q.converged)
                       throw IntegrationError("convolution quadrature did not converge");
                   return Cplx(q.value, 0.0);
               },
               "iota(" + u.name + ")")
        .with_features(feats);
}

Net embed_smooth_conv(const DistributionSpec& u, const Mollifier& phi, const BoxDomain& domain,
                      const EmbedOptions& opts) {
    const SmoothFunction f = u.fn;
    const int dim = domain.dim();
    if (f.dim != dim) throw ShapeError("embed: smooth payload dimension mismatch");

    if (dim == 1) {
        return Net(domain, ScalarKind::Real, opts.max_deriv_order,
                   [phi, f, domain, opts](double eps, std::span<const double> xs,
                                          const MultiIndex& a) {
                       const double x = xs[0];
                       const int m = a.order();
                       const double r = phi.support_radius();
                       double lo = std::max(x - r * eps, domain.lower(0));
                       double hi = std::min(x + r * eps, domain.upper(0));
                       if (!(lo < hi)) return Cplx(0.0, 0.0);
                       auto integrand = [&](double y) {
                           double p[1] = {y};
                           return f.jet(std::span<const double>(p, 1), MultiIndex::zero(1)) *
                                  delta_eval(phi, m, eps, x - y);
                       };
                       QuadResult q = integrate_adaptive(integrand, lo, hi, opts.quad_abs_tol,
                                                         opts.quad_rel_tol, 15, 40, {});
                       if (!q.converged)
                           throw IntegrationError("convolution quadrature did not converge");
                       return Cplx(q.value, 0.0);
                   },
                   "iota(" + u.name + ")");
    }

    // n-d: tensorized kernel, composite GL per axis in the rescaled variable
    return Net(domain, ScalarKind::Real, opts.max_deriv_order,
               [phi, f, domain, opts, dim](double eps, std::span<const double> xs,
                                           const MultiIndex& a) {
                   const double r = phi.support_radius();
                   const GaussLegendre& gl = gauss_legendre(opts.tensor_nodes);
                   const int panels = opts.tensor_panels;
                   const int per_axis = panels * opts.tensor_nodes;
                   std::vector<std::vector<std::pair<double, double>>> axis_nodes(
                       static_cast<size_t>(dim));
                   for (int i = 0; i < dim; ++i) {
                       double zlo = std::max(-r, (xs[i] - domain.upper(i)) / eps);
                       double zhi = std::min(r, (xs[i] - domain.lower(i)) / eps);
                       auto& nodes = axis_nodes[static_cast<size_t>(i)];
                       if (!(zlo < zhi)) return Cplx(0.0, 0.0);
                       for (int p = 0; p < panels; ++p) {
                           double a0 = zlo + (zhi - zlo) * p / panels;
                           double b0 = zlo + (zhi - zlo) * (p + 1) / panels;
                           double mid = 0.5 * (a0 + b0), half = 0.5 * (b0 - a0);
                           for (size_t g = 0; g < gl.nodes.size(); ++g) {
                               double z = mid + half * gl.nodes[g];
                               nodes.emplace_back(z, half * gl.weights[g]);
                           }
                       }
                   }
                   (void)per_axis;
                   // D^a conv = eps^{-|a|} int f(x - eps z) prod phi^{(a_i)}(z_i) dz
                   double total = 0.0;
                   std::vector<int> idx(static_cast<size_t>(dim), 0);
                   std::vector<double> y(static_cast<size_t>(dim));
                   while (true) {
                       double w = 1.0;
                       for (int i = 0; i < dim; ++i) {
                           auto [z, wz] = axis_nodes[static_cast<size_t>(i)]
                                                    [static_cast<size_t>(idx[static_cast<size_t>(i)])];
                           y[static_cast<size_t>(i)] = xs[i] - eps * z;
                           w *= wz * phi.profile(z, a[i]);
                       }
                       total += w * f.jet(y, MultiIndex::zero(dim));
                       int i = 0;
                       for (; i < dim; ++i) {
                           if (++idx[static_cast<size_t>(i)] <
                               static_cast<int>(axis_nodes[static_cast<size_t>(i)].size()))
                               break;
                           idx[static_cast<size_t>(i)] = 0;
                       }
                       if (i == dim) break;
                   }
                   return Cplx(total * std::pow(eps, -a.order()), 0.0);
               },
               "iota(" + u.name + ")");
}

}  // namespace

Net embed(const DistributionSpec& u, const Mollifier& phi, const BoxDomain& domain,
          const EmbedOptions& opts) {
    switch (u.kind) {
        case DistributionSpec::Kind::DeltaDerivative:
            if (domain.dim() != 1) throw ShapeError("delta embeddings are 1-d");
            return embed_delta(u, phi, domain, opts);
        case DistributionSpec::Kind::Heaviside:
            if (domain.dim() != 1) throw ShapeError("heaviside embeddings are 1-d");
            return embed_heaviside(u, phi, domain, opts);
        case DistributionSpec::Kind::PVReciprocal:
            if (domain.dim() != 1) throw ShapeError("pv embeddings are 1-d");
            return embed_pv(u, phi, domain, opts);
        case DistributionSpec::Kind::LocallyIntegrable:
            if (domain.dim() != 1) throw ShapeError("locally integrable embeddings are 1-d");
            return embed_locally_integrable(u, phi, domain, opts);
        case DistributionSpec::Kind::SmoothFn:
            return embed_smooth_conv(u, phi, domain, opts);
    }
    throw ShapeError("unknown distribution kind");
}

/// Linear combination of embeddings, per derivative() expansions.
static Net embed_combination(const std::vector<std::pair<double, DistributionSpec>>& combo,
                             const Mollifier& phi, const BoxDomain& domain,
                             const EmbedOptions& opts) {
    Net acc = scale(Cplx(combo[0].first, 0.0), embed(combo[0].second, phi, domain, opts));
    for (size_t i = 1; i < combo.size(); ++i)
        acc = add(acc, scale(Cplx(combo[i].first, 0.0), embed(combo[i].second, phi, domain, opts)));
    return acc;
}

double pair_net(const Net& a, double eps, const TestFunction& psi, int quad_points) {
    if (a.domain().dim() != 1) throw CapabilityError("pairing is 1-d");
    if (quad_points < 4) throw ShapeError("pair_net: quad_points must be >= 4");
    CompactBox sup = psi.support();
    double lo = std::max(sup.lower(0), a.domain().lower(0));
    double hi = std::min(sup.upper(0), a.domain().upper(0));
    if (!(lo < hi)) return 0.0;

    auto f = [&](double x) {
        double p[1] = {x};
        return a.eval(eps, std::span<const double>(p, 1), MultiIndex::zero(1)).real() *
               psi.eval(x, 0);
    };

    // seed panels: uniform grid plus the net's feature edges at this eps
    std::vector<double> splits;
    const int uniform = std::max(8, quad_points);
    for (int i = 1; i < uniform; ++i) splits.push_back(lo + (hi - lo) * i / uniform);
    for (const auto& [c, rf] : a.features()) {
        for (double s : {c - rf * eps, c, c + rf * eps}) {
            if (s > lo && s < hi) splits.push_back(s);
        }
    }
    QuadResult q =
        integrate_adaptive(f, lo, hi, 1e-13, 1e-12, std::max(7, quad_points / 2), 44, splits);
    double scale_ref = std::max(1.0, std::abs(q.value));
    if (!q.converged || q.error_estimate > 1e-6 * scale_ref)
        throw IntegrationError("pairing quadrature disagreement above 1e-6");
    return q.value;
}

double distribution_action(const DistributionSpec& u, const TestFunction& psi) {
    switch (u.kind) {
        case DistributionSpec::Kind::DeltaDerivative: {
            double sign = (u.delta_order % 2 == 0) ? 1.0 : -1.0;
            return sign * psi.eval(u.shift, u.delta_order);
        }
        case DistributionSpec::Kind::Heaviside: {
            CompactBox sup = psi.support();
            double lo = std::max(u.shift, sup.lower(0));
            if (lo >= sup.upper(0)) return 0.0;
            return integrate_adaptive([&](double x) { return psi.eval(x, 0); }, lo, sup.upper(0),
                                      1e-14, 1e-13, 15, 40, {})
                .value;
        }
        case DistributionSpec::Kind::PVReciprocal: {
            CompactBox sup = psi.support();
            double ymax = std::max(std::abs(sup.lower(0)), std::abs(sup.upper(0)));
            auto f = [&](double y) {
                if (y < 1e-12) return 2.0 * psi.eval(0.0, 1);
                return (psi.eval(y, 0) - psi.eval(-y, 0)) / y;
            };
            return integrate_adaptive(f, 0.0, ymax, 1e-14, 1e-13, 15, 40, {}).value;
        }
        case DistributionSpec::Kind::LocallyIntegrable: {
            CompactBox sup = psi.support();
            std::vector<double> splits;
            for (double kk : u.li_kinks) {
                if (kk > sup.lower(0) && kk < sup.upper(0)) splits.push_back(kk);
            }
            return integrate_adaptive([&](double x) { return u.li_fn(x) * psi.eval(x, 0); },
                                      sup.lower(0), sup.upper(0), 1e-14, 1e-13, 15, 40, splits)
                .value;
        }
        case DistributionSpec::Kind::SmoothFn: {
            CompactBox sup = psi.support();
            return integrate_adaptive(
                       [&](double x) {
                           double p[1] = {x};
                           return u.fn.jet(std::span<const double>(p, 1), MultiIndex::zero(1)) *
                                  psi.eval(x, 0);
                       },
                       sup.lower(0), sup.upper(0), 1e-14, 1e-13, 15, 40, {})
                .value;
        }
    }
    throw ShapeError("unknown distribution kind");
}

double check_derivative_commutes(const DistributionSpec& u, const Mollifier& phi,
                                 const MultiIndex& alpha, const BoxDomain& domain,
                                 const CompactBox& K, int grid_per_axis,
                                 const EpsilonScale& scale, const EmbedOptions& opts) {
    if (alpha.dim() != 1 || domain.dim() != 1)
        throw CapabilityError("derivative commutation checks are 1-d");

    // expand D^alpha u inside the vocabulary
    std::vector<std::pair<double, DistributionSpec>> combo = {{1.0, u}};
    for (int step = 0; step < alpha.order(); ++step) {
        std::vector<std::pair<double, DistributionSpec>> next;
        for (const auto& [c, spec] : combo) {
            auto d = spec.derivative();
            if (!d) throw CapabilityError("derivative of " + spec.name + " is not expressible");
            for (const auto& [c2, spec2] : *d) next.emplace_back(c * c2, spec2);
        }
        combo = std::move(next);
    }

    Net lhs = derive(embed(u, phi, domain, opts), alpha);
    Net rhs = embed_combination(combo, phi, domain, opts);
    Net diff = sub(lhs, rhs);

    double worst = 0.0;
    for (double eps : scale.values())
        worst = std::max(worst, sup_on_box(diff, eps, K, MultiIndex::zero(1), grid_per_axis));
    return worst;
}

SchwartzWitnessReport schwartz_witness(const Mollifier& phi, const EpsilonScale& scale,
                                       int grid_per_axis, const BoxDomain& domain,
                                       const TestFunction& psi) {
    Net h = embed(DistributionSpec::heaviside(), phi, domain);
    Net w = sub(mul(h, h), h).with_label("iota(H)^2-iota(H)");

    SchwartzWitnessReport report;
    CompactBox K = CompactBox::interval(-1.0, 1.0);
    report.sup_order = estimate_order(w, K, MultiIndex({0}), scale, grid_per_axis);

    std::vector<std::pair<double, double>> pair_samples;
    for (double eps : scale.values())
        pair_samples.emplace_back(eps, std::abs(pair_net(w, eps, psi)));
    report.pairing_decay = fit_order(std::move(pair_samples));
    return report;
}

}  // namespace asym
