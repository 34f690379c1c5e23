#pragma once

#include "asym/map_net.hpp"
#include "asym/mollifier.hpp"
#include "asym/order_estimation.hpp"

namespace asym {

/// Finite probe basis standing in for the paper-level quantifiers "for all
/// moderate scalar nets u" and "for all moderate plots rho". Every member
/// carries its own moderateness evidence; verdicts against a probe set are
/// "not falsified by these probes", upgradable by adding probes.
struct ProbeSet {
    std::vector<Net> scalar_probes;                      // nets on the target
    std::vector<MapNet> plot_probes;                     // parameter box -> source
    std::vector<ModeratenessVerdict> scalar_evidence;    // pre-certification
    std::vector<ModeratenessVerdict> plot_evidence;
    std::vector<CompactBox> plot_boxes;                  // where composites get classified

    /// Coordinate projections, powers to degree 3, exp of each coordinate,
    /// a delta-embedding stress probe on the first coordinate, plus constant
    /// and affine plot probes through the source box.
    static ProbeSet defaults(const BoxDomain& source, const BoxDomain& target,
                             int max_deriv_order = 6);
    /// Projections and affine plots only (the linear sub-basis).
    static ProbeSet linear(const BoxDomain& source, const BoxDomain& target,
                           int max_deriv_order = 6);
};

/// Map-level classification must resolve delta-stress spikes on the plot
/// grid: keep grid spacing below the smallest eps of the scale. The
/// companion scale for these defaults is map_scale().
struct MapClassifyOptions {
    int max_alpha_order = 2;
    int grid_per_axis = 256;
    ClassifyOptions classify;
};

/// Scale tuned for map verdicts: coarse enough for 256-point plot grids to
/// resolve eps-width probe features (eps_min ~ 0.028 against spacing 0.003).
inline EpsilonScale map_scale() { return EpsilonScale(0.5, 0.75, 10); }

/// Map-level moderateness: classify (u o f o rho) for every probe pair.
/// Moderate iff all composites pass; evidence names the probes.
ModeratenessVerdict is_moderate_map(const MapNet& f, const ProbeSet& probes,
                                    const EpsilonScale& scale,
                                    const MapClassifyOptions& opts = {});

/// Probe-based equivalence: classify ((u o f2 - u o f) o rho) for
/// negligibility at p_max. Kind Negligible means "equivalent at order p_max
/// on this probe basis".
ModeratenessVerdict equivalent(const MapNet& f, const MapNet& f2, const ProbeSet& probes,
                               const EpsilonScale& scale, int p_max,
                               const MapClassifyOptions& opts = {});

}  // namespace asym
