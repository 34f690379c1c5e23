#include "asym/smooth_function.hpp"

#include <cmath>

#include "asym/taylor.hpp"

namespace asym {
namespace smooth {

SmoothFunction constant(int dim, double c) {
    SmoothFunction f;
    f.dim = dim;
    f.name = "const(" + std::to_string(c) + ")";
    f.jet = [c](std::span<const double>, const MultiIndex& a) {
        return a.order() == 0 ? c : 0.0;
    };
    return f;
}

SmoothFunction coordinate(int dim, int axis) {
    SmoothFunction f;
    f.dim = dim;
    f.name = "x" + std::to_string(axis);
    f.jet = [axis](std::span<const double> x, const MultiIndex& a) {
        if (a.order() == 0) return x[static_cast<size_t>(axis)];
        if (a.order() == 1 && a[axis] == 1) return 1.0;
        return 0.0;
    };
    return f;
}

SmoothFunction affine(int dim, std::vector<double> w, double b) {
    SmoothFunction f;
    f.dim = dim;
    f.name = "affine";
    f.jet = [w = std::move(w), b](std::span<const double> x, const MultiIndex& a) {
        if (a.order() == 0) {
            double v = b;
            for (size_t i = 0; i < w.size(); ++i) v += w[i] * x[i];
            return v;
        }
        if (a.order() == 1) {
            for (int i = 0; i < a.dim(); ++i)
                if (a[i] == 1) return w[static_cast<size_t>(i)];
        }
        return 0.0;
    };
    return f;
}

SmoothFunction poly1(std::vector<double> coeffs, std::string name) {
    SmoothFunction f;
    f.dim = 1;
    f.name = name.empty() ? "poly1" : std::move(name);
    f.jet = [coeffs = std::move(coeffs)](std::span<const double> x, const MultiIndex& a) {
        const int k = a.order();  // dim 1: order == a[0]
        double v = 0.0;
        // d^k/dx^k sum c_j x^j = sum_{j>=k} c_j j!/(j-k)! x^{j-k}, evaluated by Horner
        for (int j = static_cast<int>(coeffs.size()) - 1; j >= k; --j) {
            double fall = 1.0;
            for (int i = 0; i < k; ++i) fall *= static_cast<double>(j - i);
            v = v * x[0] + coeffs[static_cast<size_t>(j)] * fall;
        }
        return v;
    };
    return f;
}

namespace {

SmoothFunction trig_like(int dim, int axis, double a, double b, int phase_quarter, bool is_exp,
                         std::string name) {
    SmoothFunction f;
    f.dim = dim;
    f.name = std::move(name);
    f.jet = [axis, a, b, phase_quarter, is_exp](std::span<const double> x, const MultiIndex& al) {
        for (int i = 0; i < al.dim(); ++i) {
            if (i != axis && al[i] > 0) return 0.0;
        }
        const int k = al.dim() == 0 ? 0 : al[axis];
        const double t = a * x[static_cast<size_t>(axis)] + b;
        const double amp = std::pow(a, k);
        if (is_exp) return amp * std::exp(t);
        // D^k sin(t) = sin(t + k pi/2); phase_quarter 0 for sin, 1 for cos
        return amp * std::sin(t + (k + phase_quarter) * M_PI / 2.0);
    };
    return f;
}

}  // namespace

SmoothFunction sin_of(int dim, int axis, double a, double b) {
    return trig_like(dim, axis, a, b, 0, false, "sin");
}

SmoothFunction cos_of(int dim, int axis, double a, double b) {
    return trig_like(dim, axis, a, b, 1, false, "cos");
}

SmoothFunction exp_of(int dim, int axis, double a, double b) {
    return trig_like(dim, axis, a, b, 0, true, "exp");
}

SmoothFunction power_of(int dim, int axis, int k) {
    SmoothFunction f;
    f.dim = dim;
    f.name = "x" + std::to_string(axis) + "^" + std::to_string(k);
    f.jet = [axis, k](std::span<const double> x, const MultiIndex& al) {
        for (int i = 0; i < al.dim(); ++i) {
            if (i != axis && al[i] > 0) return 0.0;
        }
        const int d = al[axis];
        if (d > k) return 0.0;
        double fall = 1.0;
        for (int i = 0; i < d; ++i) fall *= static_cast<double>(k - i);
        return fall * std::pow(x[static_cast<size_t>(axis)], k - d);
    };
    return f;
}

SmoothFunction add(const SmoothFunction& f, const SmoothFunction& g) {
    if (f.dim != g.dim) throw ShapeError("smooth add: dimension mismatch");
    SmoothFunction h;
    h.dim = f.dim;
    h.name = f.name + "+" + g.name;
    h.jet = [f, g](std::span<const double> x, const MultiIndex& a) {
        return f.jet(x, a) + g.jet(x, a);
    };
    return h;
}

SmoothFunction mul(const SmoothFunction& f, const SmoothFunction& g) {
    if (f.dim != g.dim) throw ShapeError("smooth mul: dimension mismatch");
    SmoothFunction h;
    h.dim = f.dim;
    h.name = f.name + "*" + g.name;
    h.jet = [f, g](std::span<const double> x, const MultiIndex& a) {
        double v = 0.0;
        for (const MultiIndex& b : sub_indices(a)) {
            std::vector<int> re(a.entries());
            for (int i = 0; i < a.dim(); ++i) re[static_cast<size_t>(i)] -= b[i];
            v += multi_binomial(a, b) * f.jet(x, b) * g.jet(x, MultiIndex(std::move(re)));
        }
        return v;
    };
    return h;
}

SmoothFunction scale(double c, const SmoothFunction& f) {
    SmoothFunction h;
    h.dim = f.dim;
    h.name = std::to_string(c) + "*" + f.name;
    h.jet = [c, f](std::span<const double> x, const MultiIndex& a) { return c * f.jet(x, a); };
    return h;
}

}  // namespace smooth

std::vector<double> SmoothMap::operator()(std::span<const double> x) const {
    std::vector<double> y(components.size());
    for (size_t i = 0; i < components.size(); ++i)
        y[i] = components[i].jet(x, MultiIndex::zero(dim_in()));
    return y;
}

SmoothMap SmoothMap::identity(const BoxDomain& box) {
    SmoothMap m;
    m.source = box;
    m.dim_out = box.dim();
    m.name = "id";
    for (int i = 0; i < box.dim(); ++i) m.components.push_back(smooth::coordinate(box.dim(), i));
    return m;
}

SmoothMap SmoothMap::from_components(BoxDomain source, std::vector<SmoothFunction> comps,
                                     std::string name) {
    SmoothMap m;
    m.source = std::move(source);
    m.dim_out = static_cast<int>(comps.size());
    m.components = std::move(comps);
    m.name = std::move(name);
    for (const auto& c : m.components) {
        if (c.dim != m.source.dim()) throw ShapeError("smooth map component dimension mismatch");
    }
    return m;
}

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
    if (outer.dim_in() != inner.dim_out) throw ShapeError("smooth compose: arity mismatch");
    SmoothMap m;
    m.source = inner.source;
    m.dim_out = outer.dim_out;
    m.name = outer.name + "o" + inner.name;
    for (int c = 0; c < outer.dim_out; ++c) {
        SmoothFunction comp;
        comp.dim = inner.dim_in();
        comp.name = outer.components[static_cast<size_t>(c)].name + "o" + inner.name;
        comp.jet = [outer_c = outer.components[static_cast<size_t>(c)], inner](
                       std::span<const double> x, const MultiIndex& a) {
            const int m_ord = a.order();
            const int din = inner.dim_in();
            if (m_ord == 0) {
                std::vector<double> y = inner(x);
                return outer_c.jet(y, MultiIndex::zero(outer_c.dim));
            }
            std::vector<TaylorPoly> inner_jets;
            inner_jets.reserve(inner.components.size());
            for (const auto& ic : inner.components) {
                inner_jets.push_back(TaylorPoly::from_jets(
                    din, m_ord, [&](const MultiIndex& b) { return Cplx(ic.jet(x, b), 0.0); }));
            }
            std::vector<double> y(inner.components.size());
            for (size_t i = 0; i < y.size(); ++i) y[i] = inner_jets[i].value().real();
            TaylorPoly outer_jet = TaylorPoly::from_jets(
                outer_c.dim, m_ord,
                [&](const MultiIndex& b) { return Cplx(outer_c.jet(y, b), 0.0); });
            return taylor_compose(outer_jet, inner_jets).derivative(a).real();
        };
        m.components.push_back(std::move(comp));
    }
    return m;
}

}  // namespace asym
