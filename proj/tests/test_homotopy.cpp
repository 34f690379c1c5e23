#include <doctest.h>

#include <cmath>
#include <sstream>

#include "asym/homotopy.hpp"
#include "asym/probes.hpp"

using namespace asym;

namespace {

/// Independent oracle: intersect the ray from p = (1/2,...,1/2,2) through u
/// with every bounding hyperplane, keep hits on L inside the cube, take the
/// smallest parameter >= 1.
std::vector<double> oracle_retract(int n, std::span<const double> u) {
    const int N = n + 1;
    std::vector<double> p(static_cast<size_t>(N), 0.5);
    p[static_cast<size_t>(n)] = 2.0;
    if (on_L(n, u)) return std::vector<double>(u.begin(), u.end());
    double best_s = 1e18;
    std::vector<double> best;
    for (int axis = 0; axis < N; ++axis) {
        for (int side = 0; side <= 1; ++side) {
            if (axis == n && side == 1) continue;  // the top face is not in L
            double denom = u[static_cast<size_t>(axis)] - p[static_cast<size_t>(axis)];
            if (denom == 0.0) continue;
            double s = (static_cast<double>(side) - p[static_cast<size_t>(axis)]) / denom;
            if (s < 1.0 - 1e-12) continue;
            std::vector<double> q(static_cast<size_t>(N));
            bool ok = true;
            for (int j = 0; j < N; ++j) {
                q[static_cast<size_t>(j)] =
                    p[static_cast<size_t>(j)] +
                    s * (u[static_cast<size_t>(j)] - p[static_cast<size_t>(j)]);
                if (q[static_cast<size_t>(j)] < -1e-9 || q[static_cast<size_t>(j)] > 1.0 + 1e-9)
                    ok = false;
            }
            if (!ok) continue;
            q[static_cast<size_t>(axis)] = static_cast<double>(side);
            if (s < best_s) {
                best_s = s;
                best = q;
            }
        }
    }
    REQUIRE(!best.empty());
    return best;
}

ComplexMapNet make_f(const CellComplex& X, const BoxDomain& target,
                     std::function<std::vector<double>(const ComplexPoint&, int deriv)> jets) {
    ComplexMapNet f;
    f.complex = &X;
    f.target = target;
    f.max_deriv_order = 4;
    f.eval = [jets](int comp, double eps, const ComplexPoint& p, const MultiIndex& a) {
        (void)eps;
        return jets(p, a.order())[static_cast<size_t>(comp)];
    };
    return f;
}

}  // namespace

TEST_CASE("retraction fixes L exactly and lands on L") {
    for (int n : {1, 2}) {
        for (const LFace& face : l_faces(n)) {
            std::vector<double> coords(static_cast<size_t>(n), 0.3);
            std::vector<double> u = l_face_point(n, face, coords);
            std::vector<double> r = retract_to_L(n, u);
            CHECK(r == u);
        }
        // interior points always land on L, with the face coordinate exact
        std::vector<double> u(static_cast<size_t>(n) + 1, 0.4);
        u[static_cast<size_t>(n)] = 0.7;
        std::vector<double> r = retract_to_L(n, u);
        CHECK(on_L(n, r));
    }
}

TEST_CASE("retraction spec points in the square") {
    std::vector<double> u1 = {0.5, 1.0};
    std::vector<double> r1 = retract_to_L(1, u1);
    CHECK(r1[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r1[1] == 0.0);

    std::vector<double> u2 = {0.75, 1.0};
    std::vector<double> r2 = retract_to_L(1, u2);
    CHECK(r2[0] == 1.0);
    CHECK(r2[1] == 0.0);
}

TEST_CASE("retraction is idempotent bit for bit on grids") {
    // 2-d: 64^2, 3-d: 32^3 (closed cube grids including corners)
    for (auto [n, g] : {std::pair<int, int>{1, 64}, std::pair<int, int>{2, 32}}) {
        const int N = n + 1;
        long long total = 1;
        for (int i = 0; i < N; ++i) total *= (g + 1);
        for (long long it = 0; it < total; ++it) {
            long long rem = it;
            std::vector<double> u(static_cast<size_t>(N));
            for (int i = 0; i < N; ++i) {
                u[static_cast<size_t>(i)] = static_cast<double>(rem % (g + 1)) / g;
                rem /= (g + 1);
            }
            std::vector<double> r = retract_to_L(n, u);
            REQUIRE(on_L(n, r));
            std::vector<double> rr = retract_to_L(n, r);
            REQUIRE(rr == r);
        }
    }
}

TEST_CASE("retraction agrees with the independent ray solver") {
    for (int n : {1, 2}) {
        const int N = n + 1;
        const int g = 13;  // odd grid avoids tie points of the decomposition
        long long total = 1;
        for (int i = 0; i < N; ++i) total *= (g + 1);
        for (long long it = 0; it < total; ++it) {
            long long rem = it;
            std::vector<double> u(static_cast<size_t>(N));
            for (int i = 0; i < N; ++i) {
                u[static_cast<size_t>(i)] = static_cast<double>(rem % (g + 1)) / g;
                rem /= (g + 1);
            }
            std::vector<double> mine = retract_to_L(n, u);
            std::vector<double> ref = oracle_retract(n, u);
            for (int i = 0; i < N; ++i) {
                CHECK(mine[static_cast<size_t>(i)] ==
                      doctest::Approx(ref[static_cast<size_t>(i)]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("mollified retraction: identity deviation on L decays, derivatives stay moderate") {
    Mollifier phi = Mollifier::make(2, 1.0);
    MapNet R = mollify_map(retraction_map(1), phi);

    EpsilonScale scale(0.5, 0.7, 8);
    std::vector<std::pair<double, double>> samples;
    for (double eps : scale.values()) {
        double sup = 0.0;
        for (const LFace& face : l_faces(1)) {
            for (int i = 0; i <= 16; ++i) {
                std::vector<double> coords = {static_cast<double>(i) / 16.0};
                std::vector<double> u = l_face_point(1, face, coords);
                std::vector<double> v = R.eval(eps, u);
                for (int c = 0; c < 2; ++c)
                    sup = std::max(sup,
                                   std::abs(v[static_cast<size_t>(c)] - u[static_cast<size_t>(c)]));
            }
        }
        samples.emplace_back(eps, sup);
    }
    OrderEstimate dev = fit_order(samples);
    CHECK(dev.exponent <= -0.8);

    // derivative growth: exponent <= |alpha| + 0.2
    CompactBox cube({0.0, 0.0}, {1.0, 1.0});
    for (const MultiIndex& a : {MultiIndex({1, 0}), MultiIndex({0, 1}), MultiIndex({2, 0})}) {
        for (int c = 0; c < 2; ++c) {
            OrderEstimate est = estimate_order(R.component(c), cube, a, scale, 12);
            CHECK(est.exponent <= a.order() + 0.2);
        }
    }
}

TEST_CASE("mollifying a smooth map reproduces it to the moment order") {
    Mollifier phi = Mollifier::make(2, 1.0);
    ContinuousMap smooth_map;
    smooth_map.dim_in = 2;
    smooth_map.dim_out = 2;
    smooth_map.fn = [](std::span<const double> x) {
        return std::vector<double>{0.5 * (x[0] + x[1]), x[0] * x[1]};
    };
    MapNet M = mollify_map(smooth_map, phi);
    EpsilonScale scale(0.25, 0.7, 8);
    std::vector<std::pair<double, double>> samples;
    for (double eps : scale.values()) {
        double sup = 0.0;
        for (double x = 0.3; x <= 0.7; x += 0.1) {
            for (double y = 0.3; y <= 0.7; y += 0.1) {
                std::vector<double> u = {x, y};
                std::vector<double> v = M.eval(eps, u);
                std::vector<double> ref = smooth_map.fn(u);
                for (int c = 0; c < 2; ++c)
                    sup = std::max(sup, std::abs(v[static_cast<size_t>(c)] -
                                                 ref[static_cast<size_t>(c)]));
            }
        }
        samples.emplace_back(eps, sup);
    }
    // interior points away from the clamped extension: O(eps^2) at least
    OrderEstimate est = fit_order(samples);
    CHECK(est.exponent <= -1.5);
}

TEST_CASE("retracting homotopy has exact endpoints and stays moderate") {
    Mollifier phi = Mollifier::make(2, 1.0);
    MapNet R = mollify_map(retraction_map(1), phi);
    MapNet h = retracting_homotopy(R);
    REQUIRE(h.source_dim() == 3);

    for (double eps : {0.5, 0.03125}) {
        for (double x = 0.0; x <= 1.0; x += 0.25) {
            for (double t = 0.0; t <= 1.0; t += 0.25) {
                std::vector<double> top = {x, t, 1.0};
                std::vector<double> v1 = h.eval(eps, top);
                CHECK(v1[0] == x);  // t=1 is the identity, exactly
                CHECK(v1[1] == t);
                std::vector<double> bottom = {x, t, 0.0};
                std::vector<double> v0 = h.eval(eps, bottom);
                std::vector<double> u2 = {x, t};
                std::vector<double> rv = R.eval(eps, u2);
                CHECK(v0[0] == rv[0]);  // t=0 is R, exactly
                CHECK(v0[1] == rv[1]);
            }
        }
    }

    // light moderateness run: R passes, so h passes
    ProbeSet probes = ProbeSet::linear(h.source(), h.target());
    MapClassifyOptions light;
    light.max_alpha_order = 1;
    light.grid_per_axis = 64;
    EpsilonScale scale(0.5, 0.75, 6);
    CHECK(is_moderate_map(R, ProbeSet::linear(R.source(), R.target()), scale, light).passed());
    CHECK(is_moderate_map(h, probes, scale, light).passed());
}

TEST_CASE("extend_from_L: constants extend exactly, smooth data extends at order 1") {
    Mollifier phi = Mollifier::make(2, 1.0);
    MapNet R = mollify_map(retraction_map(1), phi);
    BoxDomain target = BoxDomain::closed_box({-2.0, -2.0}, {2.0, 2.0});
    BoxDomain chart = BoxDomain::unit_cube(1);

    auto const_face = [&](double a, double b) {
        std::vector<Net> comps = {embed_smooth(smooth::constant(1, a), chart, 4),
                                  embed_smooth(smooth::constant(1, b), chart, 4)};
        return MapNet(chart, target, std::move(comps), "const");
    };

    LMapNet gc;
    gc.n = 1;
    gc.target = target;
    gc.faces.emplace_back(LFace{true, 0, 0}, const_face(0.7, -0.3));
    gc.faces.emplace_back(LFace{false, 0, 0}, const_face(0.7, -0.3));
    gc.faces.emplace_back(LFace{false, 0, 1}, const_face(0.7, -0.3));
    MapNet Kc = extend_from_L(gc, R);
    for (double eps : {0.5, 0.0625}) {
        std::vector<double> u = {0.37, 0.81};
        std::vector<double> v = Kc.eval(eps, u);
        CHECK(v[0] == 0.7);
        CHECK(v[1] == -0.3);
    }

    // restriction of the global smooth map G(x,t) = (x + t/2, x*t)
    SmoothFunction G0 = smooth::affine(2, {1.0, 0.5}, 0.0);
    SmoothFunction G1 = smooth::mul(smooth::coordinate(2, 0), smooth::coordinate(2, 1));
    auto face_map = [&](const LFace& face) {
        std::vector<Net> comps;
        for (const SmoothFunction& Gc : {G0, G1}) {
            comps.push_back(Net(
                chart, ScalarKind::Real, 4,
                [Gc, face](double, std::span<const double> s, const MultiIndex& a) {
                    // chain through the affine face embedding
                    std::vector<double> q = l_face_point(1, face, s);
                    if (a.order() == 0) return Cplx(Gc.jet(q, MultiIndex::zero(2)), 0.0);
                    // face chart direction: the embedding moves one cube axis
                    int axis = face.bottom ? 0 : 1;
                    std::vector<int> e(2, 0);
                    e[static_cast<size_t>(axis)] = a.order();
                    return Cplx(Gc.jet(q, MultiIndex(std::move(e))), 0.0);
                },
                "G-face"));
        }
        return MapNet(chart, target, std::move(comps), "G-face");
    };
    LMapNet gs;
    gs.n = 1;
    gs.target = target;
    for (const LFace& face : l_faces(1)) gs.faces.emplace_back(face, face_map(face));
    MapNet Ks = extend_from_L(gs, R);

    EpsilonScale scale(0.5, 0.7, 8);
    std::vector<std::pair<double, double>> dev_global, dev_onL;
    for (double eps : scale.values()) {
        double supg = 0.0;
        for (double x = 0.0; x <= 1.0; x += 0.2) {
            for (double t = 0.0; t <= 1.0; t += 0.2) {
                std::vector<double> u = {x, t};
                std::vector<double> v = Ks.eval(eps, u);
                std::vector<double> r = retract_to_L(1, u);
                double g0 = G0.jet(r, MultiIndex::zero(2));
                double g1 = G1.jet(r, MultiIndex::zero(2));
                supg = std::max({supg, std::abs(v[0] - g0), std::abs(v[1] - g1)});
            }
        }
        dev_global.emplace_back(eps, supg);
        double supl = 0.0;
        for (const LFace& face : l_faces(1)) {
            for (int i = 0; i <= 10; ++i) {
                std::vector<double> coords = {static_cast<double>(i) / 10.0};
                std::vector<double> u = l_face_point(1, face, coords);
                std::vector<double> v = Ks.eval(eps, u);
                supl = std::max({supl, std::abs(v[0] - G0.jet(u, MultiIndex::zero(2))),
                                 std::abs(v[1] - G1.jet(u, MultiIndex::zero(2)))});
            }
        }
        dev_onL.emplace_back(eps, supl);
    }
    CHECK(fit_order(dev_global).exponent <= -0.8);
    CHECK(fit_order(dev_onL).exponent <= -0.8);

    // face mismatch is rejected
    LMapNet bad = gs;
    bad.faces[0].second = const_face(9.0, 9.0);
    CHECK_THROWS_AS(extend_from_L(bad, R), ConsistencyError);
}

TEST_CASE("cell complex construction and parsing") {
    std::istringstream in(
        "# interval demo\n"
        "base v0\n"
        "base v1\n"
        "cell e0 1 v0 v1\n");
    CellComplex X = parse_complex(in);
    CHECK(X.base_vertex_count() == 2);
    REQUIRE(X.cells().size() == 1);
    CHECK(X.cells()[0].dim == 1);
    CHECK(X.cells()[0].endpoints[0].base_vertex == 0);
    CHECK(X.cells()[0].endpoints[1].base_vertex == 1);

    CellComplex bad = CellComplex::with_vertex_base({"a"});
    CHECK_THROWS_AS(bad.add_cell("c", 1, {ComplexPoint::vertex(0), ComplexPoint::vertex(3)}),
                    ConsistencyError);
    CHECK_THROWS_AS(bad.add_cell("c", 2, {}), CapabilityError);

    std::istringstream in2(
        "base v0\n"
        "cell e0 1 v0 v0\n"
        "cell e1 1 e0@0.5 v0\n");
    CellComplex X2 = parse_complex(in2);
    CHECK(X2.cells()[1].endpoints[0].cell == 0);
    CHECK(X2.cells()[1].endpoints[0].coords[0] == 0.5);
}

namespace {

struct IntervalDemo {
    CellComplex X;
    BoxDomain target;
    IntervalDemo()
        : X(CellComplex::with_vertex_base({"v0", "v1"})),
          target(BoxDomain::closed_box({-2.0, -2.0}, {2.0, 2.0})) {
        X.add_cell("e0", 1, {ComplexPoint::vertex(0), ComplexPoint::vertex(1)});
    }

    ComplexMapNet f() const {
        return make_f(X, target, [](const ComplexPoint& p, int deriv) -> std::vector<double> {
            if (p.cell < 0) {
                if (deriv > 0) return {0.0, 0.0};
                return p.base_vertex == 0 ? std::vector<double>{0.0, 0.0}
                                          : std::vector<double>{1.0, 0.0};
            }
            double s = p.coords[0];
            switch (deriv) {
                case 0: return {s, s * (1.0 - s)};
                case 1: return {1.0, 1.0 - 2.0 * s};
                case 2: return {0.0, -2.0};
                default: return {0.0, 0.0};
            }
        });
    }

    ComplexHomotopyNet h() const {
        ComplexHomotopyNet hh;
        hh.complex = &X;
        hh.target = target;
        hh.max_deriv_order = 4;
        hh.eval = [](int comp, double, const ComplexPoint& p, double t, const MultiIndex&,
                     int dt) -> double {
            // h(v, t) = f(v) + t * (0.3, -0.2)
            double base = (comp == 0) ? (p.base_vertex == 0 ? 0.0 : 1.0) : 0.0;
            double vel = (comp == 0) ? 0.3 : -0.2;
            if (dt == 0) return base + t * vel;
            if (dt == 1) return vel;
            return 0.0;
        };
        return hh;
    }
};

}  // namespace

TEST_CASE("extend_homotopy: base-only complex returns h on the nose") {
    CellComplex X = CellComplex::with_vertex_base({"a", "b"});
    BoxDomain target = BoxDomain::closed_box({-2.0}, {2.0});
    ComplexMapNet f = make_f(X, target, [](const ComplexPoint& p, int deriv) {
        return std::vector<double>{deriv == 0 ? (p.base_vertex == 0 ? -1.0 : 1.0) : 0.0};
    });
    ComplexHomotopyNet h;
    h.complex = &X;
    h.target = target;
    h.max_deriv_order = 4;
    h.eval = [](int, double, const ComplexPoint& p, double t, const MultiIndex&, int dt) {
        double base = p.base_vertex == 0 ? -1.0 : 1.0;
        if (dt == 0) return base * (1.0 - t);
        if (dt == 1) return -base;
        return 0.0;
    };
    ComplexHomotopyNet H = extend_homotopy(X, f, h);
    for (double t : {0.0, 0.4, 1.0}) {
        for (int v = 0; v < 2; ++v) {
            ComplexPoint p = ComplexPoint::vertex(v);
            CHECK(H.eval(0, 0.25, p, t, MultiIndex::zero(0), 0) ==
                  h.eval(0, 0.25, p, t, MultiIndex::zero(0), 0));
        }
    }
}

TEST_CASE("extend_homotopy: constant data extends constantly") {
    CellComplex X = CellComplex::with_vertex_base({"v"});
    X.add_cell("e", 1, {ComplexPoint::vertex(0), ComplexPoint::vertex(0)});
    BoxDomain target = BoxDomain::closed_box({-2.0}, {2.0});
    ComplexMapNet f = make_f(X, target, [](const ComplexPoint&, int deriv) {
        return std::vector<double>{deriv == 0 ? 0.5 : 0.0};
    });
    ComplexHomotopyNet h;
    h.complex = &X;
    h.target = target;
    h.max_deriv_order = 4;
    h.eval = [](int, double, const ComplexPoint&, double, const MultiIndex&, int dt) {
        return dt == 0 ? 0.5 : 0.0;
    };
    ComplexHomotopyNet H = extend_homotopy(X, f, h);
    for (double eps : {0.5, 0.0625}) {
        for (double s : {0.0, 0.3, 1.0}) {
            for (double t : {0.0, 0.7, 1.0}) {
                ComplexPoint p = ComplexPoint::in_cell(0, {s});
                CHECK(H.eval(0, eps, p, t, MultiIndex::zero(1), 0) ==
                      doctest::Approx(0.5).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("extend_homotopy: interval demo satisfies the extension properties") {
    IntervalDemo demo;
    ComplexMapNet f = demo.f();
    ComplexHomotopyNet h = demo.h();
    ComplexHomotopyNet H = extend_homotopy(demo.X, f, h);

    // H restricted to the base is h exactly (dispatch)
    for (double t : {0.0, 0.5, 1.0}) {
        ComplexPoint v0 = ComplexPoint::vertex(0);
        CHECK(H.eval(0, 0.25, v0, t, MultiIndex::zero(0), 0) ==
              h.eval(0, 0.25, v0, t, MultiIndex::zero(0), 0));
    }

    HepReport report = hep_report(demo.X, f, h, H, EpsilonScale(0.5, 0.7, 8), 1, 24);
    CHECK(report.h_restriction_exact);
    CHECK(report.min_equivalence_order() >= 1);
    for (const auto& [name, est] : report.boundary_traces) {
        CHECK(est.exponent <= -0.8);
    }
    CHECK(report.passed(1));
}

TEST_CASE("extend_homotopy: endpoint mismatch names t=0") {
    IntervalDemo demo;
    ComplexMapNet f = demo.f();
    ComplexHomotopyNet bad = demo.h();
    auto inner = bad.eval;
    bad.eval = [inner](int comp, double eps, const ComplexPoint& p, double t,
                       const MultiIndex& a, int dt) {
        return inner(comp, eps, p, t, a, dt) + (dt == 0 ? 0.1 : 0.0);
    };
    try {
        extend_homotopy(demo.X, f, bad);
        FAIL("expected ConsistencyError");
    } catch (const ConsistencyError& e) {
        CHECK(std::string(e.what()).find("t=0") != std::string::npos);
    }
}

TEST_CASE("extend_homotopy: circle demo (one vertex, one 1-cell)") {
    CellComplex X = CellComplex::with_vertex_base({"v0"});
    X.add_cell("e0", 1, {ComplexPoint::vertex(0), ComplexPoint::vertex(0)});
    BoxDomain target = BoxDomain::closed_box({-1.5, -1.5}, {1.5, 1.5});

    ComplexMapNet f = make_f(X, target, [](const ComplexPoint& p, int deriv) -> std::vector<double> {
        if (p.cell < 0) {
            return deriv == 0 ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 0.0};
        }
        double w = 2.0 * M_PI;
        double s = p.coords[0];
        double amp = std::pow(w, deriv);
        return {amp * std::cos(w * s + deriv * M_PI / 2.0),
                amp * std::sin(w * s + deriv * M_PI / 2.0)};
    });

    ComplexHomotopyNet h;
    h.complex = &X;
    h.target = target;
    h.max_deriv_order = 4;
    h.eval = [](int comp, double, const ComplexPoint&, double t, const MultiIndex&,
                int dt) -> double {
        const double th = M_PI / 3.0;
        double amp = std::pow(th, dt);
        if (comp == 0) return amp * std::cos(th * t + dt * M_PI / 2.0);
        return amp * std::sin(th * t + dt * M_PI / 2.0);
    };

    ComplexHomotopyNet H = extend_homotopy(X, f, h);
    HepReport report = hep_report(X, f, h, H, EpsilonScale(0.5, 0.7, 8), 1, 24);
    CHECK(report.min_equivalence_order() >= 1);
    for (const auto& [name, est] : report.boundary_traces) {
        CHECK(est.exponent <= -0.8);
    }
}

TEST_CASE("cell order independence for disjoint cells") {
    BoxDomain target = BoxDomain::closed_box({-2.0}, {2.0});
    auto build = [&](bool swapped) {
        auto X = std::make_shared<CellComplex>(CellComplex::with_vertex_base({"a", "b"}));
        if (!swapped) {
            X->add_cell("ca", 1, {ComplexPoint::vertex(0), ComplexPoint::vertex(0)});
            X->add_cell("cb", 1, {ComplexPoint::vertex(1), ComplexPoint::vertex(1)});
        } else {
            X->add_cell("cb", 1, {ComplexPoint::vertex(1), ComplexPoint::vertex(1)});
            X->add_cell("ca", 1, {ComplexPoint::vertex(0), ComplexPoint::vertex(0)});
        }
        return X;
    };
    auto fh = [&](const CellComplex& X) {
        ComplexMapNet f = make_f(X, target, [&X](const ComplexPoint& p, int deriv) {
            double base;
            if (p.cell < 0) {
                base = p.base_vertex == 0 ? -1.0 : 1.0;
                return std::vector<double>{deriv == 0 ? base : 0.0};
            }
            base = X.cells()[static_cast<size_t>(p.cell)].name == "ca" ? -1.0 : 1.0;
            double s = p.coords[0];
            switch (deriv) {
                case 0: return std::vector<double>{base + 0.2 * std::sin(M_PI * s)};
                case 1: return std::vector<double>{0.2 * M_PI * std::cos(M_PI * s)};
                default:
                    return std::vector<double>{0.2 * std::pow(M_PI, deriv) *
                                               std::sin(M_PI * s + deriv * M_PI / 2.0)};
            }
        });
        ComplexHomotopyNet h;
        h.complex = &X;
        h.target = target;
        h.max_deriv_order = 4;
        h.eval = [](int, double, const ComplexPoint& p, double t, const MultiIndex&, int dt) {
            double base = p.base_vertex == 0 ? -1.0 : 1.0;
            if (dt == 0) return base + 0.5 * t * t;
            if (dt == 1) return t;
            if (dt == 2) return 1.0;
            return 0.0;
        };
        return std::make_pair(f, h);
    };
    auto X1 = build(false);
    auto X2 = build(true);
    auto [f1, h1] = fh(*X1);
    auto [f2, h2] = fh(*X2);
    ComplexHomotopyNet H1 = extend_homotopy(*X1, f1, h1);
    ComplexHomotopyNet H2 = extend_homotopy(*X2, f2, h2);

    // compare by cell NAME (indices swapped)
    auto cell_index = [](const CellComplex& X, const std::string& name) {
        for (size_t i = 0; i < X.cells().size(); ++i) {
            if (X.cells()[i].name == name) return static_cast<int>(i);
        }
        return -1;
    };
    for (const std::string& name : {"ca", "cb"}) {
        int i1 = cell_index(*X1, name), i2 = cell_index(*X2, name);
        for (double eps : {0.5, 0.125}) {
            for (double s = 0.0; s <= 1.0; s += 0.25) {
                for (double t = 0.0; t <= 1.0; t += 0.25) {
                    double a = H1.eval(0, eps, ComplexPoint::in_cell(i1, {s}), t,
                                       MultiIndex::zero(1), 0);
                    double b = H2.eval(0, eps, ComplexPoint::in_cell(i2, {s}), t,
                                       MultiIndex::zero(1), 0);
                    CHECK(std::abs(a - b) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("homotopy CSV export shape") {
    IntervalDemo demo;
    ComplexMapNet f = demo.f();
    ComplexHomotopyNet h = demo.h();
    ComplexHomotopyNet H = extend_homotopy(demo.X, f, h);
    std::ostringstream out;
    export_homotopy_csv(out, H, 0.25, 4, 2);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "id,x0,t,y0,y1");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3 * (2 + 5));  // 3 time steps x (2 vertices + 5 cell samples)
}
