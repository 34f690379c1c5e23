#include <doctest.h>

#include <cmath>
#include <random>

#include "asym/field_expr.hpp"
#include "asym/order_estimation.hpp"
#include "asym/puiseux.hpp"

using namespace asym;

namespace {

AsymptoticNumber num(const char* text) { return parse_asymptotic_number(text); }

/// Term-level equality up to the shared error order, with relative
/// coefficient tolerance absorbing float rounding.
bool eq_shared(const AsymptoticNumber& a, const AsymptoticNumber& b, double tol = 1e-9) {
    ErrOrder q = min_order(a.error_order(), b.error_order());
    AsymptoticNumber d = sub(a.truncated(q), b.truncated(q));
    double scale = std::max({a.max_abs_coeff(), b.max_abs_coeff(), 1.0});
    return d.max_abs_coeff() <= tol * scale;
}

std::vector<AsymptoticNumber::Term> make_random_terms(std::mt19937_64& rng, int max_terms) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<long long> numer(-6, 12);
    std::uniform_int_distribution<long long> denom(1, 6);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::vector<AsymptoticNumber::Term> ts;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        double c = coeff(rng);
        if (c == 0.0) c = 1.0;
        ts.push_back({Rat(numer(rng), denom(rng)), Cplx(c, 0.0)});
    }
    return ts;
}

AsymptoticNumber random_number(std::mt19937_64& rng, ScalarKind kind) {
    auto ts = make_random_terms(rng, 4);
    if (kind == ScalarKind::Complex) {
        std::uniform_real_distribution<double> coeff(-2.0, 2.0);
        for (auto& t : ts) t.coeff += Cplx(0.0, coeff(rng));
    }
    std::uniform_int_distribution<int> has_budget(0, 3);
    ErrOrder q;
    if (has_budget(rng) > 0) {
        Rat last = ts.empty() ? Rat(0) : Rat(0);
        for (const auto& t : ts) last = std::max(last, t.exponent);
        std::uniform_int_distribution<long long> gap(1, 4);
        q = last + Rat(gap(rng));
    }
    return AsymptoticNumber::from_terms(kind, std::move(ts), q);
}

}  // namespace

TEST_CASE("ring basics on rho") {
    AsymptoticNumber rho = AsymptoticNumber::rho();
    AsymptoticNumber z = add(rho, neg(rho));
    CHECK(!z.has_terms());
    CHECK(z.is_exact_zero());

    AsymptoticNumber z2 = add(rho.truncated(ErrOrder(Rat(5))), neg(rho.truncated(ErrOrder(Rat(3)))));
    CHECK(!z2.has_terms());
    REQUIRE(z2.error_order().has_value());
    CHECK(*z2.error_order() == Rat(3));

    AsymptoticNumber sq = mul(rho, rho);
    REQUIRE(sq.terms().size() == 1);
    CHECK(sq.terms()[0].exponent == Rat(2));
    CHECK(sq.terms()[0].coeff == Cplx(1.0, 0.0));
}

TEST_CASE("(1+rho)(1-rho+rho^2+O(rho^3)) = 1 + O(rho^3)") {
    AsymptoticNumber a = num("1 + 1*r^1");
    AsymptoticNumber b = num("1 - 1*r^1 + 1*r^2 + O(r^3)");
    AsymptoticNumber p = mul(a, b);
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].exponent == Rat(0));
    CHECK(p.terms()[0].coeff.real() == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(p.error_order().has_value());
    CHECK(*p.error_order() == Rat(3));
}

TEST_CASE("inverse: unit, monomial, geometric series") {
    AsymptoticNumber one = AsymptoticNumber::constant(1.0);
    AsymptoticNumber i1 = inverse(one, Rat(4));
    CHECK(eq_shared(i1, one));

    AsymptoticNumber ir = inverse(AsymptoticNumber::rho(), Rat(4));
    REQUIRE(ir.terms().size() == 1);
    CHECK(ir.terms()[0].exponent == Rat(-1));
    CHECK(!ir.error_order().has_value());

    AsymptoticNumber a = num("1 + 1*r^1");
    AsymptoticNumber b = inverse(a, Rat(3));
    CHECK(to_string(b) == "1 - 1*r^1 + 1*r^2 + O(r^3)");
    AsymptoticNumber p = mul(a, b);
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].exponent == Rat(0));
    REQUIRE(p.error_order().has_value());
    CHECK(*p.error_order() >= Rat(3));

    CHECK_THROWS_AS(inverse(AsymptoticNumber::zero(), Rat(2)), DivisionByZeroError);
    CHECK_THROWS_AS(inverse(AsymptoticNumber::o_term(Rat(3)), Rat(2)), DivisionByZeroError);
}

TEST_CASE("compare: infinitesimal order structure") {
    AsymptoticNumber rho = AsymptoticNumber::rho();
    AsymptoticNumber zero = AsymptoticNumber::zero();
    CHECK(compare(rho, zero) == Ordering::Greater);
    for (double c : {1e-6, 1.0, 1e6}) {
        CHECK(compare(rho, AsymptoticNumber::constant(c)) == Ordering::Less);
        CHECK(compare(AsymptoticNumber::constant(c), zero) == Ordering::Greater);
    }
    CHECK(compare(num("1 + 1*r^1"), AsymptoticNumber::constant(1.0)) == Ordering::Greater);
    CHECK(compare(num("1 + O(r^2)"), num("1 + O(r^3)")) == Ordering::EqualWithinTruncation);
}

TEST_CASE("sqrt: monomials and binomial series") {
    AsymptoticNumber r2 = mul(AsymptoticNumber::rho(), AsymptoticNumber::rho());
    AsymptoticNumber s = sqrt(r2, Rat(5));
    REQUIRE(s.terms().size() == 1);
    CHECK(s.terms()[0].exponent == Rat(1));
    CHECK(s.terms()[0].coeff.real() == doctest::Approx(1.0));

    AsymptoticNumber b = sqrt(num("1 + 1*r^1"), Rat(3));
    CHECK(b.coeff_at(Rat(0)).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.coeff_at(Rat(1)).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(b.coeff_at(Rat(2)).real() == doctest::Approx(-0.125).epsilon(1e-12));
    CHECK(eq_shared(mul(b, b), num("1 + 1*r^1")));

    AsymptoticNumber half = sqrt(AsymptoticNumber::rho(), Rat(4));
    REQUIRE(half.terms().size() == 1);
    CHECK(half.terms()[0].exponent == Rat(1, 2));
    CHECK(eq_shared(mul(half, half), AsymptoticNumber::rho()));

    CHECK_THROWS_AS(sqrt(num("-1 + 1*r^1"), Rat(3)), NotASquareError);
}

TEST_CASE("standard part") {
    CHECK(standard_part(num("1 + 1*r^1")).value == doctest::Approx(1.0));
    CHECK(!standard_part(num("1 + 1*r^1")).is_infinite);
    CHECK(standard_part(AsymptoticNumber::rho()).value == 0.0);
    CHECK(standard_part(num("1*r^-1")).is_infinite);
}

TEST_CASE("field axioms on random samples") {
    for (ScalarKind kind : {ScalarKind::Real, ScalarKind::Complex}) {
        std::mt19937_64 rng(kind == ScalarKind::Real ? 1234 : 4321);
        for (int trial = 0; trial < 1000; ++trial) {
            AsymptoticNumber a = random_number(rng, kind);
            AsymptoticNumber b = random_number(rng, kind);
            AsymptoticNumber c = random_number(rng, kind);
            CHECK(eq_shared(add(add(a, b), c), add(a, add(b, c))));
            CHECK(eq_shared(add(a, b), add(b, a)));
            CHECK(eq_shared(mul(a, b), mul(b, a)));
            CHECK(eq_shared(mul(mul(a, b), c), mul(a, mul(b, c))));
            CHECK(eq_shared(mul(a, add(b, c)), add(mul(a, b), mul(a, c))));
        }
    }
}

TEST_CASE("mul by inverse gives 1 up to the truncation order") {
    std::mt19937_64 rng(777);
    int tested = 0;
    while (tested < 200) {
        AsymptoticNumber a = random_number(rng, ScalarKind::Real);
        if (!a.has_terms()) continue;
        ++tested;
        Rat v = a.terms().front().exponent;
        Rat va = v < Rat(0) ? -v : v;
        AsymptoticNumber b = inverse(a, Rat(6) + va + va);
        AsymptoticNumber p = mul(a, b);
        AsymptoticNumber d = sub(p, AsymptoticNumber::constant(1.0));
        double scale = std::max(1.0, a.max_abs_coeff()) * std::max(1.0, b.max_abs_coeff());
        CHECK(d.cleaned(1e-9 * scale).has_terms() == false);
        // valuation(b) = -valuation(a)
        REQUIRE(b.has_terms());
        CHECK(b.terms().front().exponent == -a.terms().front().exponent);
    }
}

TEST_CASE("order axioms: Greater survives translation and positive scaling") {
    std::mt19937_64 rng(99);
    int done = 0;
    while (done < 300) {
        AsymptoticNumber a = random_number(rng, ScalarKind::Real);
        AsymptoticNumber b = random_number(rng, ScalarKind::Real);
        AsymptoticNumber d = sub(a, b);
        if (!d.has_terms()) continue;
        ++done;
        // exact translation keeps the leading difference coefficient
        auto cts = make_random_terms(rng, 3);
        AsymptoticNumber c = AsymptoticNumber::from_terms(ScalarKind::Real, cts, {});
        Ordering before = compare(a, b);
        Ordering after = compare(add(a, c), add(b, c));
        if (after != Ordering::EqualWithinTruncation) CHECK(before == after);
        // multiplying by a positive-leading exact number keeps the sign
        AsymptoticNumber pos = add(AsymptoticNumber::constant(2.0), AsymptoticNumber::rho());
        CHECK(compare(mul(a, pos), mul(b, pos)) == before);
    }
}

TEST_CASE("complex kind decomposes componentwise") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 300; ++trial) {
        AsymptoticNumber a = random_number(rng, ScalarKind::Real);
        AsymptoticNumber b = random_number(rng, ScalarKind::Real);
        AsymptoticNumber c = random_number(rng, ScalarKind::Real);
        AsymptoticNumber d = random_number(rng, ScalarKind::Real);
        AsymptoticNumber i = AsymptoticNumber::constant(Cplx(0.0, 1.0));
        AsymptoticNumber z1 =
            add(a.as_kind(ScalarKind::Complex), mul(i, b.as_kind(ScalarKind::Complex)));
        AsymptoticNumber z2 =
            add(c.as_kind(ScalarKind::Complex), mul(i, d.as_kind(ScalarKind::Complex)));
        AsymptoticNumber lhs = mul(z1, z2);
        AsymptoticNumber re = sub(mul(a, c), mul(b, d));
        AsymptoticNumber im = add(mul(a, d), mul(b, c));
        CHECK(eq_shared(lhs.real_part(), re.truncated(lhs.error_order())));
        CHECK(eq_shared(lhs.imag_part(), im.truncated(lhs.error_order())));
    }
}

TEST_CASE("roots: x^2 - rho") {
    Polynomial p = Polynomial::from_coeffs(
        {neg(AsymptoticNumber::rho()), AsymptoticNumber::zero(), AsymptoticNumber::constant(1.0)});
    auto rs = roots(p, Rat(2));
    REQUIRE(rs.size() == 2);
    bool found_pos = false, found_neg = false;
    for (const auto& r : rs) {
        REQUIRE(r.has_terms());
        CHECK(r.terms().front().exponent == Rat(1, 2));
        double c = r.terms().front().coeff.real();
        if (c > 0.9) found_pos = true;
        if (c < -0.9) found_neg = true;
        AsymptoticNumber res = eval_poly(p, r).cleaned(1e-9);
        ErrOrder v = res.valuation();
        CHECK((!v || *v >= Rat(2)));
    }
    CHECK(found_pos);
    CHECK(found_neg);
}

TEST_CASE("roots: constant coefficients x^2 - 1") {
    Polynomial p = Polynomial::from_coeffs({AsymptoticNumber::constant(-1.0),
                                            AsymptoticNumber::zero(),
                                            AsymptoticNumber::constant(1.0)});
    auto rs = roots(p, Rat(2));
    REQUIRE(rs.size() == 2);
    std::vector<double> vals;
    for (const auto& r : rs) {
        REQUIRE(r.terms().size() == 1);
        CHECK(r.terms().front().exponent == Rat(0));
        vals.push_back(r.terms().front().coeff.real());
    }
    std::sort(vals.begin(), vals.end());
    CHECK(vals[0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(vals[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("roots: double root (x - rho)^2") {
    Polynomial p = Polynomial::from_coeffs(
        {mul(AsymptoticNumber::rho(), AsymptoticNumber::rho()),
         mul(Cplx(-2.0, 0.0), AsymptoticNumber::rho()), AsymptoticNumber::constant(1.0)});
    auto rs = roots(p, Rat(3));
    REQUIRE(rs.size() == 2);
    for (const auto& r : rs) {
        REQUIRE(r.terms().size() == 1);
        CHECK(r.terms().front().exponent == Rat(1));
        CHECK(r.terms().front().coeff.real() == doctest::Approx(1.0).epsilon(1e-7));
        CHECK(std::abs(r.terms().front().coeff.imag()) < 1e-10);
    }
}

TEST_CASE("roots: reconstructed from random factor pairs") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coeff(0.5, 2.0);
    std::uniform_int_distribution<int> expo(0, 2);
    for (int trial = 0; trial < 40; ++trial) {
        AsymptoticNumber r1 = add(
            AsymptoticNumber::monomial(Cplx(coeff(rng), 0.0), Rat(expo(rng)), ScalarKind::Complex),
            AsymptoticNumber::monomial(Cplx(coeff(rng), 0.0), Rat(3), ScalarKind::Complex));
        AsymptoticNumber r2 = neg(add(
            AsymptoticNumber::monomial(Cplx(coeff(rng), 0.0), Rat(expo(rng)), ScalarKind::Complex),
            AsymptoticNumber::monomial(Cplx(coeff(rng), 0.0), Rat(2), ScalarKind::Complex)));
        // P = (x - r1)(x - r2)
        Polynomial p = Polynomial::from_coeffs(
            {mul(r1, r2), neg(add(r1, r2)), AsymptoticNumber::constant(1.0).as_kind(ScalarKind::Complex)});
        const Rat target(5);
        auto rs = roots(p, target);
        REQUIRE(rs.size() == 2);
        for (const auto& r : rs) {
            AsymptoticNumber res = eval_poly(p, r).cleaned(1e-8 * std::max(1.0, p.coeffs[0].max_abs_coeff()));
            ErrOrder v = res.valuation();
            CHECK((!v || *v >= target));
        }
    }
}

TEST_CASE("roots: insufficient precision names the blocking exponent") {
    Polynomial p = Polynomial::from_coeffs(
        {AsymptoticNumber::from_terms(ScalarKind::Real, {{Rat(1), Cplx(1.0, 0.0)}}, ErrOrder(Rat(2))),
         AsymptoticNumber::zero(), AsymptoticNumber::constant(1.0)});
    try {
        roots(p, Rat(5));
        FAIL("expected PrecisionError");
    } catch (const PrecisionError& e) {
        CHECK(e.blocking_exponent() == "2");
    }
}

TEST_CASE("to_scalar_net feeds the classifier") {
    CompactBox pt = CompactBox::point();
    std::vector<CompactBox> boxes = {pt};
    EpsilonScale scale = EpsilonScale::defaults();

    Net nrho = to_scalar_net(AsymptoticNumber::rho());
    OrderEstimate est = estimate_order(nrho, pt, MultiIndex::zero(0), scale, 2);
    CHECK(est.exponent == doctest::Approx(-1.0).epsilon(0.01));
    ModeratenessVerdict v = classify(nrho, boxes, 0, scale, 1, 2);
    CHECK(v.kind == ModeratenessVerdict::Kind::Negligible);  // decays like eps

    Net nrho_inv = to_scalar_net(inverse(AsymptoticNumber::rho(), Rat(4)));
    ModeratenessVerdict v2 = classify(nrho_inv, boxes, 0, scale, 1, 2);
    CHECK(v2.kind == ModeratenessVerdict::Kind::Moderate);
    CHECK(v2.m_or_p == 1);

    Net nzero = to_scalar_net(AsymptoticNumber::zero());
    OrderEstimate ez = estimate_order(nzero, pt, MultiIndex::zero(0), scale, 2);
    CHECK(ez.marker == EstimateMarker::ExactZero);
}

TEST_CASE("printer and parser round-trip") {
    CHECK(to_string(num("1 - 1*r^1 + 1*r^2 + O(r^3)")) == "1 - 1*r^1 + 1*r^2 + O(r^3)");
    CHECK(to_string(num("0 + O(r^{1/2})")) == "0 + O(r^{1/2})");
    CHECK(to_string(AsymptoticNumber::zero()) == "0");
    CHECK(to_string(num("1*r^{1/2}")) == "1*r^{1/2}");
    CHECK(to_string(num("(1+2i)*r^{-1/2} + 3")) == "(1+2i)*r^{-1/2} + 3");

    std::mt19937_64 rng(31415);
    for (int trial = 0; trial < 500; ++trial) {
        ScalarKind kind = (trial % 2 == 0) ? ScalarKind::Real : ScalarKind::Complex;
        AsymptoticNumber a = random_number(rng, kind);
        AsymptoticNumber back = parse_asymptotic_number(to_string(a));
        REQUIRE(back.terms().size() == a.terms().size());
        for (size_t i = 0; i < a.terms().size(); ++i) {
            CHECK(back.terms()[i].exponent == a.terms()[i].exponent);
            CHECK(back.terms()[i].coeff == a.terms()[i].coeff);
        }
        CHECK(back.error_order() == a.error_order());
    }
}

TEST_CASE("monotone budget arithmetic examples") {
    // field '1*r^1 * 1*r^1' -> 1*r^2 (exact monomials)
    AsymptoticNumber p = num("1*r^1 * 1*r^1");
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].exponent == Rat(2));
    CHECK(!p.error_order().has_value());

    AsymptoticNumber q = num("inv(1 + 1*r^1, 3)");
    CHECK(to_string(q) == "1 - 1*r^1 + 1*r^2 + O(r^3)");
}
