#pragma once

#include <functional>
#include <iosfwd>
#include <map>

#include "asym/map_net.hpp"
#include "asym/mollifier.hpp"
#include "asym/order_estimation.hpp"
#include "asym/retraction.hpp"

namespace asym {

/// A plain continuous map on a closed cube (no jets); the raw material for
/// mollification.
struct ContinuousMap {
    int dim_in = 1;
    int dim_out = 1;
    std::function<std::vector<double>(std::span<const double>)> fn;
};

/// The piecewise-smooth central-projection retraction as a ContinuousMap.
ContinuousMap retraction_map(int n);

struct MollifyOptions {
    int max_deriv_order = 4;
    int nodes = 12;   // GL nodes per panel per axis
    int panels = 2;   // composite panels per axis
};

/// Mollify a continuous cube map into a map net: extend by nearest-point
/// projection (coordinate clamping), convolve each component with the
/// tensorized mollifier, differentiate the kernel for jets. The result is
/// moderate: |D^a R_eps| <= C eps^{-|a|}.
MapNet mollify_map(const ContinuousMap& r, const Mollifier& phi,
                   const MollifyOptions& opts = {});

/// h_eps(u,t) = (1-t) R(u) + t u on cube x I (t last). Endpoints are exact:
/// t=1 is the identity, t=0 is R.
MapNet retracting_homotopy(const MapNet& R);

/// A map on L^n given per face; faces parametrized over I^n per
/// l_face_point. Shared edges must agree within the tolerance used by
/// extend_from_L.
struct LMapNet {
    int n = 0;
    BoxDomain target = BoxDomain::point();
    std::vector<std::pair<LFace, MapNet>> faces;

    const MapNet& face(const LFace& f) const;
};

struct ExtendOptions {
    double face_match_tol = 1e-8;
    int edge_grid = 8;
};

/// Extension of an L^n map over the whole cube by precomposition with the
/// mollified retraction: evaluates g at the nearest-face projection of
/// R_eps(u), jets by the chain rule through the locally affine projection.
MapNet extend_from_L(const LMapNet& g, const MapNet& R, const ExtendOptions& opts = {});

// ---------------------------------------------------------------------------
// finite cell complexes

/// A point of a complex: a base vertex (cell = -1, coords = vertex index
/// slot unused), a base box point (cell = -1 with coords), or a point in a
/// cell's chart cube.
struct ComplexPoint {
    int cell = -1;                // -1 = base
    int base_vertex = -1;         // >= 0 when the base is a vertex set
    std::vector<double> coords;   // chart coords (cell cube or base box)

    static ComplexPoint vertex(int v) { return ComplexPoint{-1, v, {}}; }
    static ComplexPoint in_cell(int cell, std::vector<double> coords) {
        return ComplexPoint{cell, -1, std::move(coords)};
    }
};

/// Finite skeletal description: a base (finite vertex set or a box) plus an
/// ordered list of cells with attaching data. Cells of dimension 0 attach
/// freely; 1-cells attach both endpoints to the earlier skeleton. (The
/// extension machinery itself is dimension-generic; attaching-map jets for
/// higher cells are not wired up.)
class CellComplex {
public:
    struct Cell {
        std::string name;
        int dim = 1;
        std::vector<ComplexPoint> endpoints;  // 2 for dim 1, 0 for dim 0
    };

    static CellComplex with_vertex_base(std::vector<std::string> vertex_names);
    static CellComplex with_box_base(BoxDomain box);

    int add_cell(std::string name, int dim, std::vector<ComplexPoint> endpoints);

    int base_vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    const std::optional<BoxDomain>& base_box() const { return base_box_; }
    const std::vector<Cell>& cells() const { return cells_; }
    int vertex_index(const std::string& name) const;
    /// Chart dimension at a point (0 at vertices, cell dim inside cells).
    int chart_dim(const ComplexPoint& p) const;

private:
    std::vector<std::string> vertex_names_;
    std::optional<BoxDomain> base_box_;
    std::vector<Cell> cells_;
};

/// Line-oriented text format:
///   base <name>
///   cell <name> <dim> [<endpoint> <endpoint>]
/// with endpoints either base vertex names or cell@s references.
CellComplex parse_complex(std::istream& in);
CellComplex load_complex(const std::string& path);

/// A map net X -> target box over a complex: component jets per chart.
struct ComplexMapNet {
    const CellComplex* complex = nullptr;
    BoxDomain target = BoxDomain::point();
    int max_deriv_order = 4;
    /// (component, eps, point, alpha over the point's chart coords)
    std::function<double(int comp, double eps, const ComplexPoint&, const MultiIndex&)> eval;

    int target_dim() const { return target.dim(); }
    std::vector<double> values(double eps, const ComplexPoint& p) const;
};

/// A homotopy X x I -> target: chart jets extended by a t-derivative order.
struct ComplexHomotopyNet {
    const CellComplex* complex = nullptr;
    BoxDomain target = BoxDomain::point();
    int max_deriv_order = 4;
    /// (component, eps, point, t, alpha over chart coords, dt order)
    std::function<double(int comp, double eps, const ComplexPoint&, double t,
                         const MultiIndex& alpha, int dt)>
        eval;

    ComplexMapNet at_time(double t) const;
};

struct HepOptions {
    double endpoint_tol = 1e-7;
    int mollifier_moments = 2;
    double mollifier_radius = 1.0;
    MollifyOptions mollify;
    ExtendOptions extend;
};

/// The homotopy extension step over a finite complex: per cell, pull the
/// partial homotopy and f back to L^{dim} data on the cell's cube x I,
/// extend with the mollified retraction, and dispatch evaluation to the
/// base or the owning cell. H restricted to the base is h on the nose;
/// cell-boundary traces match h up to the mollification order.
ComplexHomotopyNet extend_homotopy(const CellComplex& X, const ComplexMapNet& f,
                                   const ComplexHomotopyNet& h, const HepOptions& opts = {});

struct HepReport {
    /// Per chart: negligibility verdict of (u o H_0 - u o f) along the chart.
    std::vector<std::pair<std::string, ModeratenessVerdict>> h0_vs_f;
    /// Per 1-cell endpoint: decay estimate of the boundary trace deviation
    /// |K_cell(side, t) - h(attach, t)|.
    std::vector<std::pair<std::string, OrderEstimate>> boundary_traces;
    bool h_restriction_exact = true;  // H|A x I is h by construction

    int min_equivalence_order() const;
    bool passed(int required_order) const;
};

HepReport hep_report(const CellComplex& X, const ComplexMapNet& f, const ComplexHomotopyNet& h,
                     const ComplexHomotopyNet& H, const EpsilonScale& scale, int p_max = 1,
                     int grid = 32);

/// CSV rows: cell-or-base id, chart coords..., t, component values.
void export_homotopy_csv(std::ostream& out, const ComplexHomotopyNet& H, double eps,
                         int grid_per_cell, int t_steps);

}  // namespace asym
