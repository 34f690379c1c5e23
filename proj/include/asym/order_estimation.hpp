#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "asym/net.hpp"

namespace asym {

/// The geometric epsilon sample scale eps_k = eps0 * ratio^k, k < count.
struct EpsilonScale {
    double eps0 = 0.5;
    double ratio = 0.5;
    int count = 12;

    EpsilonScale() = default;
    EpsilonScale(double e0, double r, int c);

    std::vector<double> values() const;
    /// The spec-level default: two decades of eps in 12 samples.
    static EpsilonScale defaults() { return EpsilonScale(0.5, 0.5, 12); }
};

/// Default sup grid per axis: 64 subdivisions up to dim 2, 16 for dim 3+.
int default_grid(int dim);

enum class EstimateMarker { Ok, ExactZero, EventuallyZero, Overflow };

/// Measured asymptotic exponent of sup-norms: sup_K |D^a f_eps| ~ C * eps^{-exponent}.
/// Negative exponents mean decay (the p of negligibility shows up as -p).
struct OrderEstimate {
    double exponent = 0.0;   // -inf for exact zero, +inf for overflow
    double fit_quality = 0.0;
    double slope_se = 0.0;   // standard error of the fitted exponent
    int tail_start = 0;      // leading samples dropped by the stabilized fit
    /// The fit is usable for an integer verdict: a clean power law
    /// (fit_quality >= 0.98), a statistically tight slope, or a power law
    /// with bounded coefficient oscillation (residuals within a fixed
    /// window). Unstable estimates make the verdict Indeterminate.
    bool stable = false;
    EstimateMarker marker = EstimateMarker::Ok;
    std::vector<std::pair<double, double>> samples;  // (eps, sup)

    bool is_exact_zero() const { return marker == EstimateMarker::ExactZero; }
};

/// Tail-stabilized log-log fit of externally produced (eps, magnitude)
/// samples; the backbone of estimate_order, reused for pairing decays.
OrderEstimate fit_order(std::vector<std::pair<double, double>> samples);

OrderEstimate estimate_order(const Net& a, const CompactBox& K, const MultiIndex& alpha,
                             const EpsilonScale& scale, int grid_per_axis);

struct VerdictEvidence {
    CompactBox box;
    MultiIndex alpha;
    OrderEstimate estimate;
    std::string probe;  // empty for plain nets; names the probe for map verdicts
};

struct ClassifyOptions {
    double margin = 0.25;         // integer verdicts absorb this much regression noise
    /// Last-half slope exceeding the full-scale fit by more than this marks
    /// super-polynomial growth. Power laws with oscillating coefficients
    /// show jumps up to ~2.5 at desk scales while exp(1/eps) shows >= 8, so
    /// the cut sits between.
    double superpoly_jump = 4.0;
};

struct ModeratenessVerdict {
    enum class Kind { Moderate, Negligible, NotModerate, Indeterminate };
    Kind kind = Kind::Indeterminate;
    int m_or_p = 0;  // Moderate: m; Negligible: verified_to_p
    std::vector<VerdictEvidence> evidence;

    bool passed() const { return kind == Kind::Moderate || kind == Kind::Negligible; }
};

const char* to_string(ModeratenessVerdict::Kind kind);

/// Runs estimate_order for every (K, alpha) with |alpha| <= max_alpha_order and
/// aggregates per the empirical moderate/negligible rules.
ModeratenessVerdict classify(const Net& a, std::span<const CompactBox> boxes, int max_alpha_order,
                             const EpsilonScale& scale, int p_max, int grid_per_axis,
                             const ClassifyOptions& opts = {});

/// Aggregation used by both net- and map-level classification.
ModeratenessVerdict aggregate_verdict(std::vector<VerdictEvidence> evidence, int p_max,
                                      const ClassifyOptions& opts);

nlohmann::json to_json(const OrderEstimate& est);
nlohmann::json to_json(const VerdictEvidence& ev);
nlohmann::json to_json(const ModeratenessVerdict& v);

}  // namespace asym
