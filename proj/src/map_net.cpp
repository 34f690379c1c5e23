#include "asym/map_net.hpp"

#include <cmath>

namespace asym {

MapNet::MapNet(BoxDomain source, BoxDomain target, std::vector<Net> components, std::string label)
    : source_(std::move(source)),
      target_(std::move(target)),
      components_(std::move(components)),
      label_(std::move(label)) {
    if (static_cast<int>(components_.size()) != target_.dim())
        throw ShapeError("map net: component count must equal target dimension");
    max_order_ = components_.empty() ? 8 : components_[0].max_deriv_order();
    for (const Net& c : components_) {
        if (!c.domain().same_box(source_)) throw ShapeError("map net: component domain mismatch");
        max_order_ = std::min(max_order_, c.max_deriv_order());
    }
}

MapNet MapNet::with_label(std::string label) const {
    MapNet m = *this;
    m.label_ = std::move(label);
    return m;
}

std::vector<double> MapNet::eval(double eps, std::span<const double> x) const {
    std::vector<double> y(components_.size());
    MultiIndex zero = MultiIndex::zero(source_dim());
    for (size_t i = 0; i < components_.size(); ++i)
        y[i] = components_[i].eval(eps, x, zero).real();
    return y;
}

double MapNet::eval_component(int i, double eps, std::span<const double> x,
                              const MultiIndex& alpha) const {
    return components_[static_cast<size_t>(i)].eval(eps, x, alpha).real();
}

MapNet MapNet::with_product_split(int split_dim) const {
    if (split_dim <= 0 || split_dim >= source_.dim())
        throw ShapeError("product split must leave both factors non-empty");
    MapNet m = *this;
    m.split_ = split_dim;
    return m;
}

MapNet MapNet::identity(const BoxDomain& box, int max_order) {
    std::vector<Net> comps;
    for (int i = 0; i < box.dim(); ++i)
        comps.push_back(embed_smooth(smooth::coordinate(box.dim(), i), box, max_order));
    return MapNet(box, box, std::move(comps), "id");
}

MapNet MapNet::embed_map(const SmoothMap& f, const BoxDomain& target, int max_order) {
    std::vector<Net> comps;
    for (const SmoothFunction& c : f.components)
        comps.push_back(embed_smooth(c, f.source, max_order));
    return MapNet(f.source, target, std::move(comps), "i(" + f.name + ")");
}

MapNet compose(const MapNet& g, const MapNet& f) {
    if (!f.target().same_box(g.source()))
        throw ShapeError("compose: middle domains must agree");
    std::vector<Net> comps;
    for (int i = 0; i < g.target_dim(); ++i) {
        comps.push_back(compose_scalar(g.component(i), f)
                            .with_label(g.label() + "[" + std::to_string(i) + "]o" + f.label()));
    }
    return MapNet(f.source(), g.target(), std::move(comps), g.label() + "o" + f.label());
}

Net compose_scalar(const Net& u, const MapNet& f) {
    if (u.domain().dim() != f.target_dim())
        throw ShapeError("compose_scalar: scalar domain must match map target");
    const int max_order = std::min(u.max_deriv_order(), f.max_deriv_order());
    MapNet fcopy = f;
    Net ucopy = u;
    return Net(
        f.source(), u.kind(), max_order,
        [ucopy, fcopy](double eps, std::span<const double> x, const MultiIndex& alpha) {
            const int m = alpha.order();
            std::vector<double> y = fcopy.eval(eps, x);
            if (m == 0) return ucopy.eval(eps, y, MultiIndex::zero(ucopy.domain().dim()));
            const int din = fcopy.source_dim();
            std::vector<TaylorPoly> inner;
            inner.reserve(fcopy.components().size());
            for (const Net& c : fcopy.components()) {
                inner.push_back(TaylorPoly::from_jets(
                    din, m, [&](const MultiIndex& b) { return c.eval(eps, x, b); }));
            }
            TaylorPoly outer = net_jet(ucopy, eps, y, m);
            return taylor_compose(outer, inner).derivative(alpha);
        },
        u.label() + "o" + f.label());
}

void validate_image(const MapNet& f, double eps, int grid_per_axis, double tol) {
    const int dim = f.source_dim();
    const bool open = f.source().is_open();
    const long long per_axis = grid_per_axis + 1;
    long long total = 1;
    for (int i = 0; i < dim; ++i) total *= per_axis;
    std::vector<double> x(static_cast<size_t>(dim));
    for (long long it = 0; it < total; ++it) {
        long long rem = it;
        for (int i = 0; i < dim; ++i) {
            int idx = static_cast<int>(rem % per_axis);
            rem /= per_axis;
            // open boxes are sampled strictly inside
            double t = open ? (idx + 0.5) / static_cast<double>(grid_per_axis + 1)
                            : idx / static_cast<double>(grid_per_axis);
            x[static_cast<size_t>(i)] = f.source().lower(i) +
                                        (f.source().upper(i) - f.source().lower(i)) * t;
        }
        std::vector<double> y = f.eval(eps, x);
        for (int i = 0; i < f.target_dim(); ++i) {
            if (y[static_cast<size_t>(i)] < f.target().lower(i) - tol ||
                y[static_cast<size_t>(i)] > f.target().upper(i) + tol)
                throw ShapeError("map image escapes the target box");
        }
    }
}

MapNet curry_at(const MapNet& f, std::span<const double> x) {
    if (!f.product_split()) throw ShapeError("curry: source is not a declared product");
    const int sx = *f.product_split();
    const int sy = f.source_dim() - sx;
    if (static_cast<int>(x.size()) != sx) throw ShapeError("curry: point dimension mismatch");

    std::vector<double> xl(x.begin(), x.end());
    std::vector<double> ylo, yhi;
    for (int i = sx; i < f.source_dim(); ++i) {
        ylo.push_back(f.source().lower(i));
        yhi.push_back(f.source().upper(i));
    }
    BoxDomain ybox = f.source().is_open() ? BoxDomain::open_box(ylo, yhi)
                                          : BoxDomain::closed_box(ylo, yhi);

    std::vector<Net> comps;
    for (int i = 0; i < f.target_dim(); ++i) {
        Net c = f.component(i);
        comps.push_back(Net(
            ybox, c.kind(), c.max_deriv_order(),
            [c, xl, sx, sy](double eps, std::span<const double> y, const MultiIndex& ay) {
                std::vector<double> full(xl);
                full.insert(full.end(), y.begin(), y.end());
                std::vector<int> ext(static_cast<size_t>(sx), 0);
                for (int j = 0; j < sy; ++j) ext.push_back(ay[j]);
                return c.eval(eps, full, MultiIndex(std::move(ext)));
            },
            c.label() + "|x"));
    }
    return MapNet(ybox, f.target(), std::move(comps), f.label() + "|x");
}

MapNet uncurry(const MapFamily& family) {
    std::vector<double> lo = family.x_box.lower(), hi = family.x_box.upper();
    lo.insert(lo.end(), family.y_source.lower().begin(), family.y_source.lower().end());
    hi.insert(hi.end(), family.y_source.upper().begin(), family.y_source.upper().end());
    BoxDomain product = family.x_box.is_open() ? BoxDomain::open_box(lo, hi)
                                               : BoxDomain::closed_box(lo, hi);
    const int sx = family.x_dim;
    const int sy = family.y_source.dim();

    std::vector<Net> comps;
    for (int i = 0; i < family.target_dim; ++i) {
        comps.push_back(Net(
            product, ScalarKind::Real, family.max_order,
            [family, i, sx, sy](double eps, std::span<const double> xy, const MultiIndex& a) {
                std::vector<double> x(xy.begin(), xy.begin() + sx);
                std::vector<double> y(xy.begin() + sx, xy.end());
                std::vector<int> ax, ay;
                for (int j = 0; j < sx; ++j) ax.push_back(a[j]);
                for (int j = sx; j < sx + sy; ++j) ay.push_back(a[j]);
                return Cplx(family.jet(i, eps, x, MultiIndex(std::move(ax)), y,
                                       MultiIndex(std::move(ay))),
                            0.0);
            },
            "uncurry[" + std::to_string(i) + "]"));
    }
    return MapNet(product, family.target, std::move(comps), "uncurry").with_product_split(sx);
}

MapFamily slice_family(const MapNet& f) {
    if (!f.product_split()) throw ShapeError("slice_family: source is not a declared product");
    const int sx = *f.product_split();
    MapFamily fam;
    fam.x_dim = sx;
    std::vector<double> xlo, xhi, ylo, yhi;
    for (int i = 0; i < sx; ++i) {
        xlo.push_back(f.source().lower(i));
        xhi.push_back(f.source().upper(i));
    }
    for (int i = sx; i < f.source_dim(); ++i) {
        ylo.push_back(f.source().lower(i));
        yhi.push_back(f.source().upper(i));
    }
    fam.x_box = f.source().is_open() ? BoxDomain::open_box(xlo, xhi)
                                     : BoxDomain::closed_box(xlo, xhi);
    fam.y_source = f.source().is_open() ? BoxDomain::open_box(ylo, yhi)
                                        : BoxDomain::closed_box(ylo, yhi);
    fam.target = f.target();
    fam.target_dim = f.target_dim();
    fam.max_order = f.max_deriv_order();
    MapNet fcopy = f;
    fam.jet = [fcopy](int comp, double eps, std::span<const double> x, const MultiIndex& ax,
                      std::span<const double> y, const MultiIndex& ay) {
        std::vector<double> full(x.begin(), x.end());
        full.insert(full.end(), y.begin(), y.end());
        std::vector<int> a(ax.entries());
        a.insert(a.end(), ay.entries().begin(), ay.entries().end());
        return fcopy.eval_component(comp, eps, full, MultiIndex(std::move(a)));
    };
    return fam;
}

}  // namespace asym
