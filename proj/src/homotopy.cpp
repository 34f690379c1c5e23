#include "asym/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "asym/asymptotic_number.hpp"
#include "asym/quadrature.hpp"

namespace asym {

ContinuousMap retraction_map(int n) {
    ContinuousMap m;
    m.dim_in = n + 1;
    m.dim_out = n + 1;
    m.fn = [n](std::span<const double> u) { return retract_to_L(n, u); };
    return m;
}

MapNet mollify_map(const ContinuousMap& r, const Mollifier& phi, const MollifyOptions& opts) {
    const int din = r.dim_in;
    const int dout = r.dim_out;
    BoxDomain source = BoxDomain::unit_cube(din);
    // kernels with vanishing moments are not nonnegative, so mollified
    // values can leave [0,1] slightly
    BoxDomain target = BoxDomain::closed_box(std::vector<double>(static_cast<size_t>(dout), -0.25),
                                             std::vector<double>(static_cast<size_t>(dout), 1.25));

    std::vector<Net> comps;
    for (int i = 0; i < dout; ++i) {
        comps.push_back(Net(
            source, ScalarKind::Real, opts.max_deriv_order,
            [r, phi, opts, i, din](double eps, std::span<const double> x, const MultiIndex& a) {
                const double rad = phi.support_radius();
                const GaussLegendre& gl = gauss_legendre(opts.nodes);
                // per-axis composite nodes in the rescaled variable z
                std::vector<double> zs, ws;
                for (int p = 0; p < opts.panels; ++p) {
                    double a0 = -rad + 2.0 * rad * p / opts.panels;
                    double b0 = -rad + 2.0 * rad * (p + 1) / opts.panels;
                    double mid = 0.5 * (a0 + b0), half = 0.5 * (b0 - a0);
                    for (size_t g = 0; g < gl.nodes.size(); ++g) {
                        zs.push_back(mid + half * gl.nodes[g]);
                        ws.push_back(half * gl.weights[g]);
                    }
                }
                const int per_axis = static_cast<int>(zs.size());
                std::vector<int> idx(static_cast<size_t>(din), 0);
                std::vector<double> y(static_cast<size_t>(din));
                double total = 0.0;
                while (true) {
                    double w = 1.0;
                    for (int j = 0; j < din; ++j) {
                        double z = zs[static_cast<size_t>(idx[static_cast<size_t>(j)])];
                        w *= ws[static_cast<size_t>(idx[static_cast<size_t>(j)])] *
                             phi.profile(z, a[j]);
                        // nearest-point extension onto the cube
                        y[static_cast<size_t>(j)] =
                            std::min(1.0, std::max(0.0, x[j] - eps * z));
                    }
                    if (w != 0.0) total += w * r.fn(y)[static_cast<size_t>(i)];
                    int j = 0;
                    for (; j < din; ++j) {
                        if (++idx[static_cast<size_t>(j)] < per_axis) break;
                        idx[static_cast<size_t>(j)] = 0;
                    }
                    if (j == din) break;
                }
                return Cplx(total * std::pow(eps, -a.order()), 0.0);
            },
            "mollify[" + std::to_string(i) + "]"));
    }
    return MapNet(source, target, std::move(comps), "mollified");
}

MapNet retracting_homotopy(const MapNet& R) {
    const int d = R.source_dim();
    if (R.target_dim() != d) throw ShapeError("retracting_homotopy: R must be an endomap");
    std::vector<double> lo(static_cast<size_t>(d) + 1, 0.0), hi(static_cast<size_t>(d) + 1, 1.0);
    BoxDomain source = BoxDomain::closed_box(lo, hi);

    std::vector<Net> comps;
    for (int i = 0; i < d; ++i) {
        comps.push_back(Net(
            source, ScalarKind::Real, R.max_deriv_order(),
            [R, i, d](double eps, std::span<const double> ut, const MultiIndex& a) {
                std::span<const double> u = ut.subspan(0, static_cast<size_t>(d));
                const double t = ut[static_cast<size_t>(d)];
                std::vector<int> au_entries;
                for (int j = 0; j < d; ++j) au_entries.push_back(a[j]);
                MultiIndex au(std::move(au_entries));
                const int k = a[d];
                // identity part t * u_i
                double id_part = 0.0;
                if (au.order() == 0) {
                    id_part = u[static_cast<size_t>(i)];
                } else if (au.order() == 1 && au[i] == 1) {
                    id_part = 1.0;
                }
                if (k == 0)
                    return Cplx((1.0 - t) * R.eval_component(i, eps, u, au) + t * id_part, 0.0);
                if (k == 1) return Cplx(-R.eval_component(i, eps, u, au) + id_part, 0.0);
                return Cplx(0.0, 0.0);
            },
            "h[" + std::to_string(i) + "]"));
    }
    return MapNet(source, R.target(), std::move(comps), "retracting-homotopy");
}

const MapNet& LMapNet::face(const LFace& f) const {
    for (const auto& [key, m] : faces) {
        if (key == f) return m;
    }
    throw ShapeError("LMapNet: face not present");
}

namespace {

/// Compare two face maps of g along their shared edge at a couple of eps.
void check_face_agreement(const LMapNet& g, const ExtendOptions& opts) {
    const int n = g.n;
    auto faces = l_faces(n);
    for (size_t a = 0; a < g.faces.size(); ++a) {
        for (size_t b = a + 1; b < g.faces.size(); ++b) {
            const LFace& fa = g.faces[a].first;
            const LFace& fb = g.faces[b].first;
            // shared set: fix both face constraints; the rest varies
            // (bottom & side share {x_i = s, t = 0}; side & side share
            // {x_i = s, x_j = s'} when i != j)
            if (!fa.bottom && !fb.bottom && fa.axis == fb.axis) continue;
            // enumerate the free coordinates of the edge
            std::vector<int> free_axes;
            for (int ax = 0; ax <= n; ++ax) {
                bool fixed = false;
                if (fa.bottom || fb.bottom) {
                    if (ax == n) fixed = true;  // t = 0
                }
                if (!fa.bottom && ax == fa.axis) fixed = true;
                if (!fb.bottom && ax == fb.axis) fixed = true;
                if (!fixed) free_axes.push_back(ax);
            }
            const int steps = std::max(1, opts.edge_grid);
            std::vector<int> idx(free_axes.size(), 0);
            while (true) {
                std::vector<double> q(static_cast<size_t>(n) + 1, 0.0);
                if (!fa.bottom) q[static_cast<size_t>(fa.axis)] = fa.side;
                if (!fb.bottom) q[static_cast<size_t>(fb.axis)] = fb.side;
                for (size_t fi = 0; fi < free_axes.size(); ++fi) {
                    q[static_cast<size_t>(free_axes[fi])] =
                        static_cast<double>(idx[fi]) / steps;
                }
                std::vector<double> ca = l_face_coords(n, fa, q);
                std::vector<double> cb = l_face_coords(n, fb, q);
                for (double eps : {0.5, 0.1}) {
                    std::vector<double> va = g.faces[a].second.eval(eps, ca);
                    std::vector<double> vb = g.faces[b].second.eval(eps, cb);
                    for (size_t c = 0; c < va.size(); ++c) {
                        if (std::abs(va[c] - vb[c]) > opts.face_match_tol)
                            throw ConsistencyError("L-map faces disagree on a shared edge");
                    }
                }
                size_t fi = 0;
                for (; fi < idx.size(); ++fi) {
                    if (++idx[fi] <= steps) break;
                    idx[fi] = 0;
                }
                if (fi == idx.size()) break;
                if (idx.empty()) break;
            }
        }
    }
}

}  // namespace

MapNet extend_from_L(const LMapNet& g, const MapNet& R, const ExtendOptions& opts) {
    const int n = g.n;
    const int N = n + 1;
    if (R.source_dim() != N || R.target_dim() != N)
        throw ShapeError("extend_from_L: retraction dimension mismatch");
    if (g.faces.size() != l_faces(n).size())
        throw ShapeError("extend_from_L: face data incomplete");
    check_face_agreement(g, opts);

    const int dout = g.target.dim();
    int max_order = R.max_deriv_order();
    for (const auto& [key, m] : g.faces) max_order = std::min(max_order, m.max_deriv_order());

    LMapNet gcopy = g;
    MapNet Rcopy = R;
    std::vector<Net> comps;
    for (int i = 0; i < dout; ++i) {
        comps.push_back(Net(
            R.source(), ScalarKind::Real, max_order,
            [gcopy, Rcopy, i, n, N](double eps, std::span<const double> u, const MultiIndex& a) {
                const int m = a.order();
                // jets of the mollified retraction at u
                std::vector<double> z0 = Rcopy.eval(eps, u);
                LFace face = nearest_l_face(n, z0);
                // face-chart axes in cube coordinates, per l_face_point
                std::vector<int> chart_axes;
                if (face.bottom) {
                    for (int j = 0; j < n; ++j) chart_axes.push_back(j);
                } else {
                    for (int j = 0; j < n; ++j) {
                        if (j != face.axis) chart_axes.push_back(j);
                    }
                    chart_axes.push_back(n);
                }
                const MapNet& face_map = gcopy.face(face);

                if (m == 0) {
                    std::vector<double> psi(chart_axes.size());
                    for (size_t c = 0; c < chart_axes.size(); ++c) {
                        psi[c] = std::min(
                            1.0, std::max(0.0, z0[static_cast<size_t>(chart_axes[c])]));
                    }
                    return Cplx(face_map.eval_component(i, eps, psi,
                                                        MultiIndex::zero(n)),
                                0.0);
                }

                // inner jets: selected retraction components, clamped where
                // the projection saturates (locally constant there)
                std::vector<TaylorPoly> inner;
                std::vector<double> psi(chart_axes.size());
                for (size_t c = 0; c < chart_axes.size(); ++c) {
                    int axis = chart_axes[c];
                    double v = z0[static_cast<size_t>(axis)];
                    if (v <= 0.0 || v >= 1.0) {
                        psi[c] = std::min(1.0, std::max(0.0, v));
                        inner.push_back(
                            TaylorPoly::constant(N, m, Cplx(psi[c], 0.0)));
                    } else {
                        psi[c] = v;
                        inner.push_back(TaylorPoly::from_jets(N, m, [&](const MultiIndex& b) {
                            return Cplx(Rcopy.eval_component(axis, eps, u, b), 0.0);
                        }));
                    }
                }
                TaylorPoly outer = TaylorPoly::from_jets(n, m, [&](const MultiIndex& b) {
                    return Cplx(face_map.eval_component(i, eps, psi, b), 0.0);
                });
                return taylor_compose(outer, inner).derivative(a);
            },
            "extend[" + std::to_string(i) + "]"));
    }
    return MapNet(R.source(), g.target, std::move(comps), "extend_from_L");
}

// ---------------------------------------------------------------------------
// cell complexes

CellComplex CellComplex::with_vertex_base(std::vector<std::string> vertex_names) {
    CellComplex x;
    x.vertex_names_ = std::move(vertex_names);
    return x;
}

CellComplex CellComplex::with_box_base(BoxDomain box) {
    CellComplex x;
    x.base_box_ = std::move(box);
    return x;
}

int CellComplex::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertex_names_.size(); ++i) {
        if (vertex_names_[i] == name) return static_cast<int>(i);
    }
    return -1;
}

int CellComplex::chart_dim(const ComplexPoint& p) const {
    if (p.cell >= 0) return cells_[static_cast<size_t>(p.cell)].dim;
    if (base_box_) return base_box_->dim();
    return 0;
}

int CellComplex::add_cell(std::string name, int dim, std::vector<ComplexPoint> endpoints) {
    if (dim < 0) throw ShapeError("cell dimension must be >= 0");
    if (dim > 1)
        throw CapabilityError("cells of dimension >= 2 need attaching-map jets (not wired up)");
    if (dim == 0 && !endpoints.empty()) throw ShapeError("0-cells attach freely");
    if (dim == 1 && endpoints.size() != 2)
        throw ShapeError("1-cells attach both endpoints");
    const int current = static_cast<int>(cells_.size());
    for (const ComplexPoint& e : endpoints) {
        if (e.cell >= 0) {
            if (e.cell >= current)
                throw ConsistencyError("attaching map lands outside the earlier skeleton");
            const Cell& target = cells_[static_cast<size_t>(e.cell)];
            if (static_cast<int>(e.coords.size()) != target.dim)
                throw ConsistencyError("attaching point has wrong chart dimension");
            for (double c : e.coords) {
                if (c < 0.0 || c > 1.0)
                    throw ConsistencyError("attaching point outside the cell cube");
            }
        } else if (base_box_) {
            if (!base_box_->contains(e.coords))
                throw ConsistencyError("attaching point outside the base box");
        } else {
            if (e.base_vertex < 0 || e.base_vertex >= base_vertex_count())
                throw ConsistencyError("attaching map lands outside the base vertex set");
        }
    }
    cells_.push_back(Cell{std::move(name), dim, std::move(endpoints)});
    return current;
}

CellComplex parse_complex(std::istream& in) {
    std::vector<std::string> vertices;
    struct PendingCell {
        std::string name;
        int dim;
        std::vector<std::string> endpoint_tokens;
    };
    std::vector<PendingCell> pending;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "base") {
            std::string name;
            if (!(ls >> name)) throw ParseError("line " + std::to_string(lineno) + ": base needs a name");
            vertices.push_back(name);
        } else if (kw == "cell") {
            PendingCell c;
            if (!(ls >> c.name >> c.dim))
                throw ParseError("line " + std::to_string(lineno) + ": cell needs a name and dimension");
            std::string tok;
            while (ls >> tok) c.endpoint_tokens.push_back(tok);
            pending.push_back(std::move(c));
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
        }
    }

    CellComplex x = CellComplex::with_vertex_base(std::move(vertices));
    for (const PendingCell& c : pending) {
        std::vector<ComplexPoint> endpoints;
        for (const std::string& tok : c.endpoint_tokens) {
            size_t at = tok.find('@');
            if (at == std::string::npos) {
                int v = x.vertex_index(tok);
                if (v < 0) throw ParseError("unknown base vertex '" + tok + "'");
                endpoints.push_back(ComplexPoint::vertex(v));
            } else {
                std::string cname = tok.substr(0, at);
                double s = std::stod(tok.substr(at + 1));
                int ci = -1;
                for (size_t k = 0; k < x.cells().size(); ++k) {
                    if (x.cells()[k].name == cname) ci = static_cast<int>(k);
                }
                if (ci < 0) throw ParseError("unknown cell '" + cname + "' in endpoint");
                endpoints.push_back(ComplexPoint::in_cell(ci, {s}));
            }
        }
        x.add_cell(c.name, c.dim, std::move(endpoints));
    }
    return x;
}

CellComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open complex file: " + path);
    return parse_complex(in);
}

std::vector<double> ComplexMapNet::values(double eps, const ComplexPoint& p) const {
    std::vector<double> v(static_cast<size_t>(target_dim()));
    MultiIndex zero = MultiIndex::zero(complex->chart_dim(p));
    for (int c = 0; c < target_dim(); ++c) v[static_cast<size_t>(c)] = eval(c, eps, p, zero);
    return v;
}

ComplexMapNet ComplexHomotopyNet::at_time(double t) const {
    ComplexMapNet m;
    m.complex = complex;
    m.target = target;
    m.max_deriv_order = max_deriv_order;
    auto self_eval = eval;
    m.eval = [self_eval, t](int comp, double eps, const ComplexPoint& p, const MultiIndex& a) {
        return self_eval(comp, eps, p, t, a, 0);
    };
    return m;
}

// ---------------------------------------------------------------------------
// homotopy extension over a finite complex

ComplexHomotopyNet extend_homotopy(const CellComplex& X, const ComplexMapNet& f,
                                   const ComplexHomotopyNet& h, const HepOptions& opts) {
    if (f.complex != &X || h.complex != &X)
        throw ShapeError("extend_homotopy: f and h must live on the given complex");
    if (!f.target.same_box(h.target)) throw ShapeError("extend_homotopy: target mismatch");

    // precondition: h(., 0) = f on the base
    {
        std::vector<ComplexPoint> base_samples;
        for (int v = 0; v < X.base_vertex_count(); ++v)
            base_samples.push_back(ComplexPoint::vertex(v));
        if (X.base_box()) {
            const BoxDomain& b = *X.base_box();
            base_samples.push_back(ComplexPoint{-1, -1, b.center()});
        }
        for (const ComplexPoint& p : base_samples) {
            MultiIndex zero = MultiIndex::zero(X.chart_dim(p));
            for (double eps : {0.5, 0.1}) {
                for (int c = 0; c < f.target_dim(); ++c) {
                    double dv = std::abs(h.eval(c, eps, p, 0.0, zero, 0) - f.eval(c, eps, p, zero));
                    if (dv > opts.endpoint_tol)
                        throw ConsistencyError(
                            "homotopy endpoint mismatch at t=0 (|h_0 - f| = " +
                            std::to_string(dv) + ")");
                }
            }
        }
    }

    Mollifier phi = Mollifier::make(opts.mollifier_moments, opts.mollifier_radius);

    // the per-cell extensions, built in order; evaluation dispatches here
    auto cell_K = std::make_shared<std::vector<std::shared_ptr<MapNet>>>();

    // partial-homotopy evaluation against the skeleton built so far
    auto partial_eval = [&X, h, cell_K, f](int comp, double eps, const ComplexPoint& p, double t,
                                           int dt) -> double {
        if (p.cell < 0) {
            return h.eval(comp, eps, p, t, MultiIndex::zero(X.chart_dim(p)), dt);
        }
        const auto& K = (*cell_K)[static_cast<size_t>(p.cell)];
        if (!K) {  // 0-cell: constant in t
            if (dt > 0) return 0.0;
            return f.eval(comp, eps, p, MultiIndex::zero(0));
        }
        std::vector<double> cube(p.coords);
        cube.push_back(t);
        std::vector<int> a(p.coords.size(), 0);
        a.push_back(dt);
        return K->eval_component(comp, eps, cube, MultiIndex(std::move(a)));
    };

    std::shared_ptr<MapNet> R1;  // mollified retraction for 1-cells, built on demand

    for (size_t beta = 0; beta < X.cells().size(); ++beta) {
        const CellComplex::Cell& cell = X.cells()[beta];
        if (cell.dim == 0) {
            cell_K->push_back(nullptr);
            continue;
        }
        if (!R1) {
            R1 = std::make_shared<MapNet>(
                mollify_map(retraction_map(1), phi, opts.mollify));
        }

        BoxDomain chart = BoxDomain::unit_cube(1);
        // bottom: f along the cell chart
        std::vector<Net> bottom_comps;
        for (int c = 0; c < f.target_dim(); ++c) {
            bottom_comps.push_back(Net(
                chart, ScalarKind::Real, f.max_deriv_order,
                [f, c, beta](double eps, std::span<const double> s, const MultiIndex& a) {
                    return Cplx(
                        f.eval(c, eps,
                               ComplexPoint::in_cell(static_cast<int>(beta), {s[0]}), a),
                        0.0);
                },
                "bottom[" + std::to_string(c) + "]"));
        }
        MapNet bottom(chart, f.target, std::move(bottom_comps), "bottom");

        auto side_map = [&](int which) {
            ComplexPoint endpoint = cell.endpoints[static_cast<size_t>(which)];
            std::vector<Net> comps;
            for (int c = 0; c < f.target_dim(); ++c) {
                comps.push_back(Net(
                    chart, ScalarKind::Real, h.max_deriv_order,
                    [partial_eval, endpoint, c](double eps, std::span<const double> tt,
                                                const MultiIndex& a) {
                        return Cplx(partial_eval(c, eps, endpoint, tt[0], a[0]), 0.0);
                    },
                    "side[" + std::to_string(c) + "]"));
            }
            return MapNet(chart, f.target, std::move(comps), "side");
        };

        LMapNet g;
        g.n = 1;
        g.target = f.target;
        g.faces.emplace_back(LFace{true, 0, 0}, bottom);
        g.faces.emplace_back(LFace{false, 0, 0}, side_map(0));
        g.faces.emplace_back(LFace{false, 0, 1}, side_map(1));

        cell_K->push_back(std::make_shared<MapNet>(extend_from_L(g, *R1, opts.extend)));
    }

    ComplexHomotopyNet H;
    H.complex = &X;
    H.target = f.target;
    H.max_deriv_order = std::min(f.max_deriv_order, h.max_deriv_order);
    H.eval = [&X, h, f, cell_K](int comp, double eps, const ComplexPoint& p, double t,
                                const MultiIndex& a, int dt) -> double {
        if (p.cell < 0) {
            return h.eval(comp, eps, p, t, a, dt);
        }
        const auto& K = (*cell_K)[static_cast<size_t>(p.cell)];
        if (!K) {
            if (dt > 0 || a.order() > 0) return 0.0;
            return f.eval(comp, eps, p, a);
        }
        std::vector<double> cube(p.coords);
        cube.push_back(t);
        std::vector<int> al(a.entries());
        al.push_back(dt);
        return K->eval_component(comp, eps, cube, MultiIndex(std::move(al)));
    };
    return H;
}

HepReport hep_report(const CellComplex& X, const ComplexMapNet& f, const ComplexHomotopyNet& h,
                     const ComplexHomotopyNet& H, const EpsilonScale& scale, int p_max,
                     int grid) {
    HepReport report;
    BoxDomain chart = BoxDomain::unit_cube(1);
    std::vector<CompactBox> chart_boxes = {CompactBox::interval(0.0, 1.0)};

    // H_0 vs f per chart (component differences are the linear probes)
    for (int v = 0; v < X.base_vertex_count(); ++v) {
        std::vector<VerdictEvidence> ev;
        for (int c = 0; c < f.target_dim(); ++c) {
            std::vector<std::pair<double, double>> samples;
            for (double eps : scale.values()) {
                ComplexPoint p = ComplexPoint::vertex(v);
                double d = std::abs(H.eval(c, eps, p, 0.0, MultiIndex::zero(0), 0) -
                                    f.eval(c, eps, p, MultiIndex::zero(0)));
                samples.emplace_back(eps, d);
            }
            VerdictEvidence e{CompactBox::point(), MultiIndex::zero(0), fit_order(samples),
                              "vertex:" + X.vertex_names()[static_cast<size_t>(v)] +
                                  ":c" + std::to_string(c)};
            ev.push_back(std::move(e));
        }
        report.h0_vs_f.emplace_back("vertex:" + X.vertex_names()[static_cast<size_t>(v)],
                                    aggregate_verdict(std::move(ev), p_max, {}));
    }
    for (size_t beta = 0; beta < X.cells().size(); ++beta) {
        if (X.cells()[beta].dim != 1) continue;
        std::vector<VerdictEvidence> ev;
        for (int c = 0; c < f.target_dim(); ++c) {
            Net diff(chart, ScalarKind::Real, 1,
                     [&H, &f, beta, c](double eps, std::span<const double> s,
                                       const MultiIndex& a) {
                         ComplexPoint p =
                             ComplexPoint::in_cell(static_cast<int>(beta), {s[0]});
                         return Cplx(H.eval(c, eps, p, 0.0, a, 0) - f.eval(c, eps, p, a), 0.0);
                     },
                     "H0-f");
            ModeratenessVerdict v = classify(diff, chart_boxes, 1, scale, p_max, grid);
            for (auto& e : v.evidence) {
                e.probe = X.cells()[beta].name + ":c" + std::to_string(c);
                ev.push_back(std::move(e));
            }
        }
        report.h0_vs_f.emplace_back("cell:" + X.cells()[beta].name,
                                    aggregate_verdict(std::move(ev), p_max, {}));
    }

    // boundary traces of 1-cells against the partial homotopy
    for (size_t beta = 0; beta < X.cells().size(); ++beta) {
        const CellComplex::Cell& cell = X.cells()[beta];
        if (cell.dim != 1) continue;
        for (int side = 0; side <= 1; ++side) {
            const ComplexPoint& attach = cell.endpoints[static_cast<size_t>(side)];
            std::vector<std::pair<double, double>> samples;
            for (double eps : scale.values()) {
                double sup = 0.0;
                for (int ti = 0; ti <= grid; ++ti) {
                    double t = static_cast<double>(ti) / grid;
                    ComplexPoint p = ComplexPoint::in_cell(static_cast<int>(beta),
                                                           {static_cast<double>(side)});
                    MultiIndex zero_attach = MultiIndex::zero(X.chart_dim(attach));
                    for (int c = 0; c < f.target_dim(); ++c) {
                        double trace = H.eval(c, eps, p, t, MultiIndex::zero(1), 0);
                        double ref = (attach.cell < 0)
                                         ? h.eval(c, eps, attach, t, zero_attach, 0)
                                         : H.eval(c, eps, attach, t, zero_attach, 0);
                        sup = std::max(sup, std::abs(trace - ref));
                    }
                }
                samples.emplace_back(eps, sup);
            }
            report.boundary_traces.emplace_back(
                cell.name + (side == 0 ? ":0" : ":1"), fit_order(samples));
        }
    }
    return report;
}

int HepReport::min_equivalence_order() const {
    int order = std::numeric_limits<int>::max();
    for (const auto& [name, v] : h0_vs_f) {
        if (v.kind != ModeratenessVerdict::Kind::Negligible) return 0;
        order = std::min(order, v.m_or_p);
    }
    return order == std::numeric_limits<int>::max() ? 0 : order;
}

bool HepReport::passed(int required_order) const {
    if (min_equivalence_order() < required_order) return false;
    for (const auto& [name, est] : boundary_traces) {
        if (est.marker == EstimateMarker::Ok && !(est.exponent <= -0.8)) return false;
        if (est.marker == EstimateMarker::Overflow) return false;
    }
    return true;
}

void export_homotopy_csv(std::ostream& out, const ComplexHomotopyNet& H, double eps,
                         int grid_per_cell, int t_steps) {
    const CellComplex& X = *H.complex;
    int max_chart = X.base_box() ? X.base_box()->dim() : 0;
    for (const auto& cell : X.cells()) max_chart = std::max(max_chart, cell.dim);

    out << "id";
    for (int i = 0; i < max_chart; ++i) out << ",x" << i;
    out << ",t";
    for (int c = 0; c < H.target.dim(); ++c) out << ",y" << c;
    out << "\n";

    auto write_row = [&](const std::string& id, const ComplexPoint& p, double t) {
        out << id;
        for (int i = 0; i < max_chart; ++i) {
            out << ",";
            if (i < static_cast<int>(p.coords.size()))
                out << format_double_shortest(p.coords[static_cast<size_t>(i)]);
        }
        out << "," << format_double_shortest(t);
        MultiIndex zero = MultiIndex::zero(X.chart_dim(p));
        for (int c = 0; c < H.target.dim(); ++c)
            out << "," << format_double_shortest(H.eval(c, eps, p, t, zero, 0));
        out << "\n";
    };

    for (int ti = 0; ti <= t_steps; ++ti) {
        double t = static_cast<double>(ti) / t_steps;
        for (int v = 0; v < X.base_vertex_count(); ++v)
            write_row(X.vertex_names()[static_cast<size_t>(v)], ComplexPoint::vertex(v), t);
        for (size_t beta = 0; beta < X.cells().size(); ++beta) {
            const auto& cell = X.cells()[beta];
            if (cell.dim == 0) {
                write_row(cell.name, ComplexPoint::in_cell(static_cast<int>(beta), {}), t);
            } else {
                for (int si = 0; si <= grid_per_cell; ++si) {
                    double s = static_cast<double>(si) / grid_per_cell;
                    write_row(cell.name,
                              ComplexPoint::in_cell(static_cast<int>(beta), {s}), t);
                }
            }
        }
    }
}

}  // namespace asym
