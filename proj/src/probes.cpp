#include "asym/probes.hpp"

#include <cmath>

#include "asym/distribution.hpp"

namespace asym {

namespace {

BoxDomain inner_box_domain(const BoxDomain& b, double margin) {
    std::vector<double> lo(b.lower()), hi(b.upper());
    for (int i = 0; i < b.dim(); ++i) {
        double span = hi[static_cast<size_t>(i)] - lo[static_cast<size_t>(i)];
        lo[static_cast<size_t>(i)] += margin * span;
        hi[static_cast<size_t>(i)] -= margin * span;
    }
    return BoxDomain::closed_box(lo, hi);
}

CompactBox inner_compact(const BoxDomain& b, double margin) {
    BoxDomain ib = inner_box_domain(b, margin);
    return CompactBox(ib.lower(), ib.upper());
}

const Mollifier& stress_mollifier() {
    static const Mollifier phi = Mollifier::make(0, 1.0);
    return phi;
}

MapNet constant_plot(const BoxDomain& param, const BoxDomain& source, int max_order) {
    std::vector<double> c = source.center();
    std::vector<Net> comps;
    for (int i = 0; i < source.dim(); ++i)
        comps.push_back(
            embed_smooth(smooth::constant(param.dim(), c[static_cast<size_t>(i)]), param,
                         max_order));
    return MapNet(param, source, std::move(comps), "const-plot");
}

MapNet affine_plot(const BoxDomain& param, const BoxDomain& source, int max_order) {
    std::vector<Net> comps;
    for (int i = 0; i < source.dim(); ++i) {
        double lo = source.lower(i), hi = source.upper(i);
        double a = (hi - lo) * 0.9;
        double b = lo + (hi - lo) * 0.05;
        comps.push_back(embed_smooth(smooth::affine(param.dim(), {a}, b), param, max_order));
    }
    return MapNet(param, source, std::move(comps), "affine-plot");
}

void certify(ProbeSet& set, const BoxDomain& target) {
    // the scale stays coarse enough for the certification grid to resolve
    // the delta-stress spike
    EpsilonScale scale(0.5, 0.75, 8);
    std::vector<CompactBox> target_boxes = {inner_compact(target, 0.1)};
    for (const Net& u : set.scalar_probes)
        set.scalar_evidence.push_back(classify(u, target_boxes, 1, scale, 1, 128));
    for (const MapNet& rho : set.plot_probes) {
        std::vector<VerdictEvidence> ev;
        for (const Net& c : rho.components()) {
            ModeratenessVerdict v = classify(c, set.plot_boxes, 1, scale, 1, 32);
            for (auto& e : v.evidence) {
                e.probe = rho.label();
                ev.push_back(std::move(e));
            }
        }
        set.plot_evidence.push_back(aggregate_verdict(std::move(ev), 1, {}));
    }
}

}  // namespace

ProbeSet ProbeSet::defaults(const BoxDomain& source, const BoxDomain& target,
                            int max_deriv_order) {
    ProbeSet set;
    const int dY = target.dim();
    for (int i = 0; i < dY; ++i) {
        set.scalar_probes.push_back(embed_smooth(smooth::coordinate(dY, i), target,
                                                 max_deriv_order)
                                        .with_label("proj" + std::to_string(i)));
        set.scalar_probes.push_back(embed_smooth(smooth::power_of(dY, i, 2), target,
                                                 max_deriv_order)
                                        .with_label("sq" + std::to_string(i)));
        set.scalar_probes.push_back(embed_smooth(smooth::power_of(dY, i, 3), target,
                                                 max_deriv_order)
                                        .with_label("cube" + std::to_string(i)));
        set.scalar_probes.push_back(embed_smooth(smooth::exp_of(dY, i), target, max_deriv_order)
                                        .with_label("exp" + std::to_string(i)));
    }
    if (dY >= 2) {
        set.scalar_probes.push_back(
            embed_smooth(smooth::mul(smooth::coordinate(dY, 0), smooth::coordinate(dY, 1)),
                         target, max_deriv_order)
                .with_label("y0y1"));
    }
    // delta-embedding stress probe along the first coordinate; the center
    // sits off the box midpoint so that maps through the center do not
    // oscillate in and out of the spike support
    {
        const Mollifier& phi = stress_mollifier();
        double c = target.lower(0) + 0.37 * (target.upper(0) - target.lower(0));
        Net stress(target, ScalarKind::Real, max_deriv_order,
                   [phi, c, dY](double eps, std::span<const double> y, const MultiIndex& a) {
                       for (int i = 1; i < dY; ++i) {
                           if (a[i] > 0) return Cplx(0.0, 0.0);
                       }
                       int k = a[0];
                       return Cplx(std::pow(eps, -1.0 - k) * phi.profile((y[0] - c) / eps, k),
                                   0.0);
                   },
                   "delta-stress");
        set.scalar_probes.push_back(stress.with_feature(c, phi.support_radius()));
    }

    BoxDomain param = BoxDomain::open_box({0.0}, {1.0});
    set.plot_boxes = {CompactBox::interval(0.1, 0.9)};
    set.plot_probes.push_back(constant_plot(param, source, max_deriv_order));
    set.plot_probes.push_back(affine_plot(param, source, max_deriv_order));

    certify(set, target);
    return set;
}

ProbeSet ProbeSet::linear(const BoxDomain& source, const BoxDomain& target, int max_deriv_order) {
    ProbeSet set;
    const int dY = target.dim();
    for (int i = 0; i < dY; ++i) {
        set.scalar_probes.push_back(embed_smooth(smooth::coordinate(dY, i), target,
                                                 max_deriv_order)
                                        .with_label("proj" + std::to_string(i)));
    }
    BoxDomain param = BoxDomain::open_box({0.0}, {1.0});
    set.plot_boxes = {CompactBox::interval(0.1, 0.9)};
    set.plot_probes.push_back(constant_plot(param, source, max_deriv_order));
    set.plot_probes.push_back(affine_plot(param, source, max_deriv_order));
    certify(set, target);
    return set;
}

namespace {

ModeratenessVerdict classify_composites(
    const std::function<Net(const Net& u)>& through, const ProbeSet& probes,
    const EpsilonScale& scale, int p_max, const MapClassifyOptions& opts) {
    std::vector<VerdictEvidence> evidence;
    for (const Net& u : probes.scalar_probes) {
        Net on_source = through(u);
        for (const MapNet& rho : probes.plot_probes) {
            Net composite = compose_scalar(on_source, rho);
            ModeratenessVerdict v = classify(composite, probes.plot_boxes, opts.max_alpha_order,
                                             scale, p_max, opts.grid_per_axis, opts.classify);
            for (auto& e : v.evidence) {
                e.probe = "u=" + u.label() + "|rho=" + rho.label();
                evidence.push_back(std::move(e));
            }
        }
    }
    return aggregate_verdict(std::move(evidence), p_max, opts.classify);
}

}  // namespace

ModeratenessVerdict is_moderate_map(const MapNet& f, const ProbeSet& probes,
                                    const EpsilonScale& scale, const MapClassifyOptions& opts) {
    for (const Net& u : probes.scalar_probes) {
        if (u.domain().dim() != f.target_dim())
            throw ShapeError("probe target dimension mismatch");
    }
    return classify_composites([&](const Net& u) { return compose_scalar(u, f); }, probes, scale,
                               1, opts);
}

ModeratenessVerdict equivalent(const MapNet& f, const MapNet& f2, const ProbeSet& probes,
                               const EpsilonScale& scale, int p_max,
                               const MapClassifyOptions& opts) {
    if (!f.source().same_box(f2.source()) || !f.target().same_box(f2.target()))
        throw ShapeError("equivalent: maps must share source and target");
    return classify_composites(
        [&](const Net& u) { return sub(compose_scalar(u, f2), compose_scalar(u, f)); }, probes,
        scale, p_max, opts);
}

}  // namespace asym
