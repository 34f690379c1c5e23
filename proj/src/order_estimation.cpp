#include "asym/order_estimation.hpp"

#include <algorithm>
#include <cmath>

#include "asym/linear_fit.hpp"

namespace asym {

EpsilonScale::EpsilonScale(double e0, double r, int c) : eps0(e0), ratio(r), count(c) {
    if (!(eps0 > 0.0 && eps0 <= 1.0)) throw ShapeError("EpsilonScale: eps0 must be in (0,1]");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ShapeError("EpsilonScale: ratio must be in (0,1)");
    if (count < 4) throw ShapeError("EpsilonScale: count must be >= 4");
}

std::vector<double> EpsilonScale::values() const {
    std::vector<double> v(static_cast<size_t>(count));
    double e = eps0;
    for (int k = 0; k < count; ++k) {
        v[static_cast<size_t>(k)] = e;
        e *= ratio;
    }
    return v;
}

int default_grid(int dim) { return dim <= 2 ? 64 : 16; }

namespace {

// fit stability thresholds (see OrderEstimate::stable)
constexpr double kFitThreshold = 0.98;
constexpr double kSlopeSeThreshold = 0.15;
constexpr double kResidWindow = 1.5;  // log units around the fitted line
constexpr double kMinSpan = 2.0;      // required log(1/eps) span for the window rule

struct TailFit {
    LineFit line;
    double max_pos_resid = 0.0;  // upward deviation from the fitted line
    double span = 0.0;
};

TailFit fit_tail(const std::vector<std::pair<double, double>>& samples, size_t from) {
    std::vector<double> xs, ys;
    for (size_t i = from; i < samples.size(); ++i) {
        xs.push_back(-std::log(samples[i].first));
        ys.push_back(std::log(std::max(samples[i].second, 1e-300)));
    }
    TailFit t;
    t.line = fit_line(xs, ys);
    for (size_t i = 0; i < xs.size(); ++i) {
        // only upward excursions matter: verdicts bound the sup envelope
        // from above, and supports drifting out of sample make deep dips
        double r = ys[i] - (t.line.slope * xs[i] + t.line.intercept);
        t.max_pos_resid = std::max(t.max_pos_resid, r);
    }
    t.span = xs.front() >= xs.back() ? xs.front() - xs.back() : xs.back() - xs.front();
    return t;
}

bool tail_is_stable(const TailFit& t) {
    if (t.line.r2 >= kFitThreshold) return true;
    if (t.line.slope_se <= kSlopeSeThreshold) return true;
    if (t.max_pos_resid <= kResidWindow && t.span >= kMinSpan) return true;
    return false;
}

}  // namespace

OrderEstimate fit_order(std::vector<std::pair<double, double>> samples) {
    OrderEstimate est;
    est.samples = std::move(samples);
    if (est.samples.size() < 2) throw ShapeError("fit_order: need >= 2 samples");

    bool all_zero = true, any_nonfinite = false;
    for (const auto& [eps, s] : est.samples) {
        if (s != 0.0) all_zero = false;
        if (!std::isfinite(s)) any_nonfinite = true;
    }
    if (all_zero) {
        est.exponent = -std::numeric_limits<double>::infinity();
        est.fit_quality = 1.0;
        est.stable = true;
        est.marker = EstimateMarker::ExactZero;
        return est;
    }
    if (any_nonfinite) {
        est.exponent = std::numeric_limits<double>::infinity();
        est.fit_quality = 0.0;
        est.marker = EstimateMarker::Overflow;
        return est;
    }
    // a nonzero head followed by an all-zero tail: the sampled sup vanished
    // below some eps (e.g. a compactly supported spike centered off the
    // sampled set) -- stronger decay than any power
    {
        size_t first_zero = est.samples.size();
        for (size_t i = 0; i < est.samples.size(); ++i) {
            if (est.samples[i].second == 0.0) {
                first_zero = i;
                break;
            }
        }
        if (first_zero + 2 <= est.samples.size()) {
            bool suffix_zero = true;
            for (size_t i = first_zero; i < est.samples.size(); ++i) {
                if (est.samples[i].second != 0.0) suffix_zero = false;
            }
            if (suffix_zero) {
                est.exponent = -std::numeric_limits<double>::infinity();
                est.fit_quality = 1.0;
                est.stable = true;
                est.marker = EstimateMarker::EventuallyZero;
                return est;
            }
        }
    }

    const size_t max_drop = est.samples.size() / 2;
    double best_r2 = -1.0;
    for (size_t drop = 0; drop <= max_drop && est.samples.size() - drop >= 3; ++drop) {
        TailFit t = fit_tail(est.samples, drop);
        if (t.line.r2 > best_r2) {
            best_r2 = t.line.r2;
            est.exponent = t.line.slope;
            est.fit_quality = t.line.r2;
            est.slope_se = t.line.slope_se;
            est.tail_start = static_cast<int>(drop);
        }
        if (tail_is_stable(t)) {
            est.exponent = t.line.slope;
            est.fit_quality = t.line.r2;
            est.slope_se = t.line.slope_se;
            est.tail_start = static_cast<int>(drop);
            est.stable = true;
            break;
        }
    }
    return est;
}

OrderEstimate estimate_order(const Net& a, const CompactBox& K, const MultiIndex& alpha,
                             const EpsilonScale& scale, int grid_per_axis) {
    std::vector<std::pair<double, double>> samples;
    for (double eps : scale.values())
        samples.emplace_back(eps, sup_on_box(a, eps, K, alpha, grid_per_axis));
    return fit_order(std::move(samples));
}



const char* to_string(ModeratenessVerdict::Kind kind) {
    switch (kind) {
        case ModeratenessVerdict::Kind::Moderate: return "Moderate";
        case ModeratenessVerdict::Kind::Negligible: return "Negligible";
        case ModeratenessVerdict::Kind::NotModerate: return "NotModerate";
        case ModeratenessVerdict::Kind::Indeterminate: return "Indeterminate";
    }
    return "Unknown";
}

namespace {

/// Growth acceleration test: the last-half slope exceeding the raw full-scale
/// slope by more than the jump, while itself indicating growth, marks
/// super-polynomial behaviour (exp(1/eps) as opposed to eps^{-m}).
bool superpolynomial(const OrderEstimate& est, double jump) {
    if (est.marker != EstimateMarker::Ok) return false;
    if (est.samples.size() < 4) return false;
    bool any_zero = std::any_of(est.samples.begin(), est.samples.end(),
                                [](const auto& p) { return p.second == 0.0; });
    if (any_zero) return false;
    LineFit full = fit_tail(est.samples, 0).line;
    LineFit half = fit_tail(est.samples, est.samples.size() / 2).line;
    return half.slope - full.slope > jump && half.slope > 1.0;
}

}  // namespace

ModeratenessVerdict aggregate_verdict(std::vector<VerdictEvidence> evidence, int p_max,
                                      const ClassifyOptions& opts) {
    ModeratenessVerdict v;
    v.evidence = std::move(evidence);

    bool overflow = false, superpoly = false, bad_fit = false;
    double max_exp = -std::numeric_limits<double>::infinity();
    bool all_negligible = true;
    for (const auto& ev : v.evidence) {
        const OrderEstimate& est = ev.estimate;
        switch (est.marker) {
            case EstimateMarker::Overflow:
                overflow = true;
                all_negligible = false;
                break;
            case EstimateMarker::ExactZero:
            case EstimateMarker::EventuallyZero:
                break;
            case EstimateMarker::Ok:
                if (superpolynomial(est, opts.superpoly_jump)) superpoly = true;
                if (!est.stable) bad_fit = true;
                max_exp = std::max(max_exp, est.exponent);
                if (!(est.exponent <= -static_cast<double>(p_max) + opts.margin))
                    all_negligible = false;
                break;
        }
    }

    if (overflow || superpoly) {
        v.kind = ModeratenessVerdict::Kind::NotModerate;
        return v;
    }
    if (bad_fit) {
        v.kind = ModeratenessVerdict::Kind::Indeterminate;
        return v;
    }
    if (all_negligible) {
        v.kind = ModeratenessVerdict::Kind::Negligible;
        v.m_or_p = p_max;
        return v;
    }
    v.kind = ModeratenessVerdict::Kind::Moderate;
    if (std::isfinite(max_exp)) {
        // smallest integer m with measured exponent <= m + margin
        v.m_or_p = std::max(0, static_cast<int>(std::ceil(max_exp - opts.margin)));
    } else {
        v.m_or_p = 0;
    }
    return v;
}

ModeratenessVerdict classify(const Net& a, std::span<const CompactBox> boxes, int max_alpha_order,
                             const EpsilonScale& scale, int p_max, int grid_per_axis,
                             const ClassifyOptions& opts) {
    if (p_max < 1) throw ShapeError("classify: p_max must be >= 1");
    if (boxes.empty()) throw ShapeError("classify: need at least one box");
    std::vector<VerdictEvidence> evidence;
    for (const CompactBox& K : boxes) {
        for (const MultiIndex& alpha : multi_indices_up_to(a.domain().dim(), max_alpha_order)) {
            VerdictEvidence ev{K, alpha, estimate_order(a, K, alpha, scale, grid_per_axis), ""};
            evidence.push_back(std::move(ev));
        }
    }
    return aggregate_verdict(std::move(evidence), p_max, opts);
}

namespace {

nlohmann::json json_num(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

nlohmann::json to_json(const OrderEstimate& est) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [eps, sup] : est.samples)
        samples.push_back({eps, json_num(sup)});
    nlohmann::json j{{"exponent", json_num(est.exponent)},
                     {"fit", est.fit_quality},
                     {"samples", samples}};
    if (est.marker == EstimateMarker::ExactZero) j["marker"] = "exact-zero";
    if (est.marker == EstimateMarker::EventuallyZero) j["marker"] = "eventually-zero";
    if (est.marker == EstimateMarker::Overflow) j["marker"] = "overflow";
    return j;
}

nlohmann::json to_json(const VerdictEvidence& ev) {
    nlohmann::json j = to_json(ev.estimate);
    j["box"] = {{"lower", ev.box.lower()}, {"upper", ev.box.upper()}};
    j["alpha"] = ev.alpha.entries();
    if (!ev.probe.empty()) j["probe"] = ev.probe;
    return j;
}

nlohmann::json to_json(const ModeratenessVerdict& v) {
    nlohmann::json evidence = nlohmann::json::array();
    for (const auto& ev : v.evidence) evidence.push_back(to_json(ev));
    return nlohmann::json{{"kind", to_string(v.kind)},
                          {"m_or_p", v.m_or_p},
                          {"evidence", evidence}};
}

}  // namespace asym
