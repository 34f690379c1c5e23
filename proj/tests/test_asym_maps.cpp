#include <doctest.h>

#include <cmath>

#include "asym/probes.hpp"

using namespace asym;

namespace {

const BoxDomain kUnit = BoxDomain::open_box({0.0}, {1.0});
const BoxDomain kPadded = BoxDomain::open_box({-0.4}, {1.4});

/// x + eps sin(x/eps): moderate with bounded first derivative.
Net wiggle_component(const BoxDomain& dom) {
    return Net(dom, ScalarKind::Real, 6,
               [](double eps, std::span<const double> x, const MultiIndex& a) {
                   const int k = a[0];
                   if (k == 0) return Cplx(x[0] + eps * std::sin(x[0] / eps), 0.0);
                   double osc = std::pow(eps, 1.0 - k) * std::sin(x[0] / eps + k * M_PI / 2.0);
                   return Cplx((k == 1 ? 1.0 : 0.0) + osc, 0.0);
               },
               "x+eps*sin(x/eps)");
}

MapNet wiggle_map() { return MapNet(kUnit, kPadded, {wiggle_component(kUnit)}, "wiggle"); }

}  // namespace

TEST_CASE("compose with the identity is the identity on evaluations") {
    MapNet f = wiggle_map();
    MapNet idm = MapNet::identity(kPadded);
    MapNet c = compose(idm, f);
    for (double eps : {0.5, 0.125}) {
        for (double x = 0.1; x < 1.0; x += 0.2) {
            double p[1] = {x};
            std::span<const double> xs(p, 1);
            for (int k = 0; k <= 2; ++k) {
                CHECK(c.eval_component(0, eps, xs, MultiIndex({k})) ==
                      doctest::Approx(f.eval_component(0, eps, xs, MultiIndex({k})))
                          .epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("compose applies the chain rule: (x+1)^2 at x=1") {
    BoxDomain mid = BoxDomain::open_box({0.5}, {3.0});
    BoxDomain out = BoxDomain::open_box({0.0}, {10.0});
    BoxDomain wide = BoxDomain::open_box({-2.0}, {2.0});
    MapNet inner = MapNet::embed_map(
        SmoothMap::from_components(wide, {smooth::poly1({1, 1}, "x+1")}, "shift"), mid);
    MapNet outer = MapNet::embed_map(
        SmoothMap::from_components(mid, {smooth::poly1({0, 0, 1}, "y^2")}, "square"), out);
    MapNet c = compose(outer, inner);
    double p[1] = {1.0};
    std::span<const double> xs(p, 1);
    CHECK(c.eval_component(0, 0.5, xs, MultiIndex({1})) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(c.eval_component(0, 0.5, xs, MultiIndex({0})) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("composition is associative on evaluations") {
    BoxDomain b1 = BoxDomain::open_box({-0.1}, {1.2});
    BoxDomain b2 = BoxDomain::open_box({-0.3}, {1.8});
    BoxDomain b3 = BoxDomain::open_box({-3.0}, {3.0});
    MapNet f = MapNet::embed_map(
        SmoothMap::from_components(kUnit, {smooth::poly1({0.1, 0.8, 0.1}, "f")}, "f"), b1);
    MapNet g = MapNet::embed_map(
        SmoothMap::from_components(b1, {smooth::poly1({0.0, 1.0, 0.3}, "g")}, "g"), b2);
    MapNet h = MapNet::embed_map(
        SmoothMap::from_components(b2, {smooth::sin_of(1, 0, 1.3, 0.2)}, "h"), b3);
    MapNet lhs = compose(h, compose(g, f));
    MapNet rhs = compose(compose(h, g), f);
    for (double x = 0.05; x < 1.0; x += 0.18) {
        double p[1] = {x};
        std::span<const double> xs(p, 1);
        for (int k = 0; k <= 2; ++k) {
            double a = lhs.eval_component(0, 0.25, xs, MultiIndex({k}));
            double b = rhs.eval_component(0, 0.25, xs, MultiIndex({k}));
            CHECK(a == doctest::Approx(b).epsilon(1e-10));
        }
    }
}

TEST_CASE("is_moderate_map: smooth embeds and bounded oscillation pass") {
    ProbeSet probes = ProbeSet::defaults(kUnit, kPadded);
    for (const auto& v : probes.scalar_evidence) CHECK(v.passed());
    for (const auto& v : probes.plot_evidence) CHECK(v.passed());

    MapNet smooth_map = MapNet::embed_map(
        SmoothMap::from_components(kUnit, {smooth::poly1({0.1, 0.5, 0.2}, "q")}, "q"), kPadded);
    ModeratenessVerdict v1 = is_moderate_map(smooth_map, probes, map_scale());
    CHECK(v1.kind == ModeratenessVerdict::Kind::Moderate);

    ModeratenessVerdict v2 = is_moderate_map(wiggle_map(), probes, map_scale());
    CHECK(v2.kind == ModeratenessVerdict::Kind::Moderate);
    // evidence rows carry their probe names
    bool named = false;
    for (const auto& e : v2.evidence) {
        if (!e.probe.empty()) named = true;
    }
    CHECK(named);
}

TEST_CASE("is_moderate_map flags exp(1/eps) growth") {
    BoxDomain huge = BoxDomain::open_box({-1e300}, {1e300});
    Net blowup(kUnit, ScalarKind::Real, 6,
               [](double eps, std::span<const double> x, const MultiIndex& a) {
                   double v = std::exp(1.0 / eps);
                   if (a.order() == 0) return Cplx(x[0] == 0.0 ? 0.0 : v * x[0], 0.0);
                   if (a.order() == 1) return Cplx(v, 0.0);
                   return Cplx(0.0, 0.0);
               },
               "exp(1/eps)*x");
    MapNet f(kUnit, huge, {blowup}, "blowup");
    ProbeSet probes = ProbeSet::linear(kUnit, huge);
    ModeratenessVerdict v = is_moderate_map(f, probes, map_scale());
    CHECK(v.kind == ModeratenessVerdict::Kind::NotModerate);
}

TEST_CASE("equivalence: reflexive, perturbation order, constant gap") {
    MapNet idm(kUnit, kPadded, {embed_smooth(smooth::coordinate(1, 0), kUnit, 6)}, "id");
    ProbeSet linear = ProbeSet::linear(kUnit, kPadded);

    ModeratenessVerdict self = equivalent(idm, idm, linear, map_scale(), 9);
    CHECK(self.kind == ModeratenessVerdict::Kind::Negligible);
    CHECK(self.m_or_p == 9);

    // id + eps^3 * smooth bumplike perturbation
    const int p = 3;
    Net pert(kUnit, ScalarKind::Real, 6,
             [p](double eps, std::span<const double> x, const MultiIndex& a) {
                 double amp = std::pow(eps, p);
                 double base = std::sin(M_PI * x[0]);
                 int k = a[0];
                 double d = std::pow(M_PI, k) * std::sin(M_PI * x[0] + k * M_PI / 2.0);
                 double id_part = (k == 0) ? x[0] : (k == 1 ? 1.0 : 0.0);
                 (void)base;
                 return Cplx(id_part + amp * d, 0.0);
             },
             "id+eps^p*bump");
    MapNet fp(kUnit, kPadded, {pert}, "id+eps^3b");
    ModeratenessVerdict v3 = equivalent(idm, fp, linear, map_scale(), 3);
    CHECK(v3.kind == ModeratenessVerdict::Kind::Negligible);
    ModeratenessVerdict v4 = equivalent(idm, fp, linear, map_scale(), 4);
    CHECK(v4.kind != ModeratenessVerdict::Kind::Negligible);

    MapNet shifted(kUnit, kPadded,
                   {embed_smooth(smooth::poly1({0.1, 1.0}, "x+0.1"), kUnit, 6)}, "id+0.1");
    ModeratenessVerdict v5 = equivalent(idm, shifted, linear, map_scale(), 1);
    CHECK(v5.kind == ModeratenessVerdict::Kind::Moderate);  // gap has exponent 0
}

TEST_CASE("equivalence is transitive at the certified order on a built-in triple") {
    ProbeSet linear = ProbeSet::linear(kUnit, kPadded);
    auto perturbed = [&](double amp) {
        Net n(kUnit, ScalarKind::Real, 6,
              [amp](double eps, std::span<const double> x, const MultiIndex& a) {
                  int k = a[0];
                  double id_part = (k == 0) ? x[0] : (k == 1 ? 1.0 : 0.0);
                  double d = std::pow(M_PI, k) * std::sin(M_PI * x[0] + k * M_PI / 2.0);
                  return Cplx(id_part + amp * std::pow(eps, 3.0) * d, 0.0);
              },
              "pert");
        return MapNet(kUnit, kPadded, {n}, "pert");
    };
    MapNet a = perturbed(0.0), b = perturbed(1.0), c = perturbed(2.0);
    CHECK(equivalent(a, b, linear, map_scale(), 3).kind ==
          ModeratenessVerdict::Kind::Negligible);
    CHECK(equivalent(b, c, linear, map_scale(), 3).kind ==
          ModeratenessVerdict::Kind::Negligible);
    CHECK(equivalent(a, c, linear, map_scale(), 3).kind ==
          ModeratenessVerdict::Kind::Negligible);
}

TEST_CASE("composites of moderate maps re-certify moderate") {
    ProbeSet probes = ProbeSet::defaults(kUnit, kPadded);
    MapNet f = wiggle_map();
    // g maps the padded box into itself, gently
    MapNet g = MapNet::embed_map(
        SmoothMap::from_components(kPadded, {smooth::poly1({0.2, 0.6, 0.05}, "g")}, "g"),
        kPadded);
    MapNet gf = compose(g, f);
    ModeratenessVerdict v = is_moderate_map(gf, probes, map_scale());
    CHECK(v.kind == ModeratenessVerdict::Kind::Moderate);
}

TEST_CASE("validate_image accepts contained images and rejects escapes") {
    MapNet ok = wiggle_map();
    validate_image(ok, 0.25, 16);
    MapNet bad(kUnit, BoxDomain::open_box({0.0}, {0.5}), {wiggle_component(kUnit)}, "escape");
    CHECK_THROWS_AS(validate_image(bad, 0.25, 16), ShapeError);
}

TEST_CASE("curry slices and the x*y example") {
    BoxDomain xy = BoxDomain::open_box({0.0, 0.0}, {3.0, 1.0});
    BoxDomain out = BoxDomain::open_box({-0.5}, {3.5});
    MapNet f =
        MapNet::embed_map(
            SmoothMap::from_components(
                xy, {smooth::mul(smooth::coordinate(2, 0), smooth::coordinate(2, 1))}, "x*y"),
            out)
            .with_product_split(1);
    double x0[1] = {2.0};
    MapNet slice = curry_at(f, std::span<const double>(x0, 1));
    CHECK(slice.source_dim() == 1);
    for (double y = 0.1; y < 1.0; y += 0.2) {
        double p[1] = {y};
        std::span<const double> ys(p, 1);
        CHECK(slice.eval_component(0, 0.5, ys, MultiIndex({0})) ==
              doctest::Approx(2.0 * y).epsilon(1e-13));
        CHECK(slice.eval_component(0, 0.5, ys, MultiIndex({1})) ==
              doctest::Approx(2.0).epsilon(1e-13));
    }
}

TEST_CASE("uncurry round-trips slice_family on evaluations") {
    BoxDomain xy = BoxDomain::open_box({0.0, 0.0}, {1.0, 1.0});
    BoxDomain out = BoxDomain::open_box({-1.6}, {1.6});
    Net comp(xy, ScalarKind::Real, 4,
             [](double eps, std::span<const double> p, const MultiIndex& a) {
                 // x*y + eps sin(x/eps) y^2 with closed-form jets
                 const double x = p[0], y = p[1];
                 const int kx = a[0], ky = a[1];
                 double xy_part = 0.0;
                 if (kx <= 1 && ky <= 1) {
                     xy_part = (kx == 0 ? x : 1.0) * (ky == 0 ? y : 1.0);
                 }
                 double osc = std::pow(eps, 1.0 - kx) * std::sin(x / eps + kx * M_PI / 2.0);
                 double ypow = 0.0;
                 if (ky == 0) ypow = y * y;
                 if (ky == 1) ypow = 2.0 * y;
                 if (ky == 2) ypow = 2.0;
                 return Cplx(xy_part + osc * ypow, 0.0);
             },
             "moderate-xy");
    MapNet f = MapNet(xy, out, {comp}, "fxy").with_product_split(1);

    MapNet back = uncurry(slice_family(f));
    for (double eps : {0.5, 0.0625}) {
        for (double x = 0.1; x < 1.0; x += 0.3) {
            for (double y = 0.1; y < 1.0; y += 0.3) {
                double p[2] = {x, y};
                std::span<const double> ps(p, 2);
                for (const MultiIndex& a :
                     {MultiIndex({0, 0}), MultiIndex({1, 0}), MultiIndex({0, 2})}) {
                    CHECK(back.eval_component(0, eps, ps, a) ==
                          doctest::Approx(f.eval_component(0, eps, ps, a)).epsilon(1e-12));
                }
            }
        }
    }

    // sampled curried slices certify Moderate
    ProbeSet yprobes = ProbeSet::defaults(BoxDomain::open_box({0.0}, {1.0}), out);
    for (double x0 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        double pt[1] = {x0};
        MapNet slice = curry_at(f, std::span<const double>(pt, 1));
        ModeratenessVerdict v = is_moderate_map(slice, yprobes, map_scale());
        CHECK(v.kind == ModeratenessVerdict::Kind::Moderate);
    }

    // the reconstruction is probe-equivalent to the original (exactly here)
    ProbeSet probes = ProbeSet::linear(xy, out);
    ModeratenessVerdict v = equivalent(f, back, probes, map_scale(), 2);
    CHECK(v.kind == ModeratenessVerdict::Kind::Negligible);
    CHECK(v.m_or_p == 2);
}

TEST_CASE("shape errors") {
    MapNet f = wiggle_map();
    CHECK_THROWS_AS(compose(f, f), ShapeError);  // padded target vs unit source
    CHECK_THROWS_AS(curry_at(f, std::span<const double>{}), ShapeError);
    CHECK_THROWS_AS(f.with_product_split(1), ShapeError);  // 1-d source cannot split
}
