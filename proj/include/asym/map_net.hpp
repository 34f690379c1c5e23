#pragma once

#include <optional>

#include "asym/net.hpp"

namespace asym {

/// An epsilon-net of smooth maps between boxes: one scalar Net per target
/// coordinate, sharing the source domain. Immutable; evaluators pure.
class MapNet {
public:
    MapNet(BoxDomain source, BoxDomain target, std::vector<Net> components,
           std::string label = "map");

    const BoxDomain& source() const { return source_; }
    const BoxDomain& target() const { return target_; }
    int source_dim() const { return source_.dim(); }
    int target_dim() const { return target_.dim(); }
    const std::vector<Net>& components() const { return components_; }
    const Net& component(int i) const { return components_[static_cast<size_t>(i)]; }
    int max_deriv_order() const { return max_order_; }
    const std::string& label() const { return label_; }
    MapNet with_label(std::string label) const;

    std::vector<double> eval(double eps, std::span<const double> x) const;
    double eval_component(int i, double eps, std::span<const double> x,
                          const MultiIndex& alpha) const;

    /// Product-source bookkeeping for currying: source = X x Y with X the
    /// first split_dim coordinates.
    std::optional<int> product_split() const { return split_; }
    MapNet with_product_split(int split_dim) const;

    static MapNet identity(const BoxDomain& box, int max_order = 8);
    static MapNet embed_map(const SmoothMap& f, const BoxDomain& target, int max_order = 8);

private:
    BoxDomain source_, target_;
    std::vector<Net> components_;
    int max_order_;
    std::optional<int> split_;
    std::string label_;
};

/// Levelwise composition (g_eps o f_eps) with chain rule by jet propagation.
MapNet compose(const MapNet& g, const MapNet& f);

/// u o f for a scalar net u on the target of f.
Net compose_scalar(const Net& u, const MapNet& f);

/// Images land in the target box: checked on a sample grid at one eps.
/// Tolerance is measured beyond the closed faces.
void validate_image(const MapNet& f, double eps, int grid_per_axis, double tol = 1e-9);

/// Slice at fixed x in the X factor: jets in the Y directions retained.
MapNet curry_at(const MapNet& f, std::span<const double> x);

/// A smooth family of maps indexed by x-jets (the gamma correspondence).
struct MapFamily {
    int x_dim = 0;
    BoxDomain x_box = BoxDomain::point();
    /// component jets: (component, eps, x, alpha_x, y, alpha_y)
    std::function<double(int comp, double eps, std::span<const double> x,
                         const MultiIndex& alpha_x, std::span<const double> y,
                         const MultiIndex& alpha_y)>
        jet;
    BoxDomain y_source = BoxDomain::point();
    BoxDomain target = BoxDomain::point();
    int target_dim = 0;
    int max_order = 8;
};

/// Merge a jet-smooth family back into a map net on the product.
MapNet uncurry(const MapFamily& family);

/// The family obtained by slicing an existing product-source map net;
/// uncurry(slice_family(f)) equals f on evaluations.
MapFamily slice_family(const MapNet& f);

}  // namespace asym
