#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "asym/mollifier.hpp"
#include "asym/net.hpp"
#include "asym/order_estimation.hpp"

namespace asym {

/// A smooth compactly supported test function with jets: (polynomial) x bump
/// scaled to a center/width, the pairing partner for association checks.
class TestFunction {
public:
    static TestFunction bump(double center, double width, double height = 1.0);
    /// (u + tilt) * bump(u) profile; asymmetric variant for rate tests.
    static TestFunction tilted_bump(double center, double width, double tilt);
    static TestFunction zero(double center, double width);

    double eval(double x, int k = 0) const;
    double center() const { return center_; }
    double width() const { return width_; }
    CompactBox support() const { return CompactBox::interval(center_ - width_, center_ + width_); }
    SmoothFunction as_smooth() const;

private:
    TestFunction(DensePoly p, double center, double width, double height);
    std::shared_ptr<const BumpKernel> kernel_;
    DensePoly pcoef_;
    double center_, width_, height_;
};

/// The closed vocabulary of embeddable distributions.
struct DistributionSpec {
    enum class Kind { DeltaDerivative, Heaviside, PVReciprocal, LocallyIntegrable, SmoothFn };

    Kind kind = Kind::SmoothFn;
    int delta_order = 0;
    double shift = 0.0;
    SmoothFunction fn;                                  // SmoothFn payload
    std::function<double(double)> li_fn;                // LocallyIntegrable payload
    std::vector<double> li_kinks;
    std::string name;
    /// One distributional-derivative step for LocallyIntegrable payloads,
    /// when expressible (|x|' = sign, sign' = 2 delta).
    std::shared_ptr<const std::vector<std::pair<double, DistributionSpec>>> li_derivative;

    static DistributionSpec delta(int order = 0, double shift = 0.0);
    static DistributionSpec heaviside(double shift = 0.0);
    static DistributionSpec pv_reciprocal();
    static DistributionSpec abs_x();
    static DistributionSpec sign_x();
    static DistributionSpec locally_integrable(std::function<double(double)> f,
                                               std::vector<double> kinks, std::string name);
    static DistributionSpec smooth(SmoothFunction f);

    /// D(u) as a linear combination in the vocabulary; nullopt when not
    /// expressible (pv 1/x).
    std::optional<std::vector<std::pair<double, DistributionSpec>>> derivative() const;
};

struct EmbedOptions {
    int max_deriv_order = 6;
    double quad_rel_tol = 1e-12;
    double quad_abs_tol = 1e-13;
    int tensor_nodes = 16;   // per-axis GL nodes for dim >= 2 smooth embeddings
    int tensor_panels = 3;   // composite panels per axis
};

/// iota_U realized as u * phi_eps. Singular kinds are 1-d; smooth payloads
/// tensorize over n-d boxes. Convolution windows are clamped to the domain
/// closure near the boundary.
Net embed(const DistributionSpec& u, const Mollifier& phi, const BoxDomain& domain,
          const EmbedOptions& opts = {});

/// <f_eps, psi> by panel-seeded adaptive Gauss-Legendre over psi's support.
/// Raises IntegrationError when the two-level estimate disagrees by more
/// than 1e-6 relative.
double pair_net(const Net& a, double eps, const TestFunction& psi, int quad_points = 15);

/// The classical action <u, psi>, the pairing reference.
double distribution_action(const DistributionSpec& u, const TestFunction& psi);

/// sup over grid x scale of |derive(embed(u), alpha) - embed(D^alpha u)|.
double check_derivative_commutes(const DistributionSpec& u, const Mollifier& phi,
                                 const MultiIndex& alpha, const BoxDomain& domain,
                                 const CompactBox& K, int grid_per_axis,
                                 const EpsilonScale& scale, const EmbedOptions& opts = {});

struct SchwartzWitnessReport {
    OrderEstimate sup_order;      // of (iota(H)^2 - iota(H)): stays O(1)
    OrderEstimate pairing_decay;  // of its pairings: decays like eps
};

/// The product-non-preservation witness behind the Schwartz impossibility
/// phenomenon: w_eps = (H*phi_eps)^2 - (H*phi_eps) is not negligible in sup
/// norm yet is associated with 0.
SchwartzWitnessReport schwartz_witness(const Mollifier& phi, const EpsilonScale& scale,
                                       int grid_per_axis, const BoxDomain& domain,
                                       const TestFunction& psi);

}  // namespace asym
