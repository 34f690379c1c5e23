#include "asym/asymptotic_number.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace asym {

void AsymptoticNumber::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    std::vector<Term> merged;
    for (const Term& t : terms_) {
        if (!merged.empty() && merged.back().exponent == t.exponent) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    terms_.clear();
    for (const Term& t : merged) {
        if (t.coeff == Cplx(0.0, 0.0)) continue;
        if (error_order_ && t.exponent >= *error_order_) continue;
        terms_.push_back(t);
    }
    if (kind_ == ScalarKind::Real) {
        for (const Term& t : terms_) {
            if (t.coeff.imag() != 0.0)
                throw ShapeError("real-kind asymptotic number with complex coefficient");
        }
    }
}

AsymptoticNumber AsymptoticNumber::zero(ScalarKind kind) {
    AsymptoticNumber a;
    a.kind_ = kind;
    return a;
}

AsymptoticNumber AsymptoticNumber::o_term(const Rat& q, ScalarKind kind) {
    AsymptoticNumber a;
    a.kind_ = kind;
    a.error_order_ = q;
    return a;
}

AsymptoticNumber AsymptoticNumber::constant(double c) {
    return monomial(Cplx(c, 0.0), Rat(0), ScalarKind::Real);
}

AsymptoticNumber AsymptoticNumber::constant(Cplx c) {
    return monomial(c, Rat(0), c.imag() == 0.0 ? ScalarKind::Real : ScalarKind::Complex);
}

AsymptoticNumber AsymptoticNumber::monomial(Cplx c, const Rat& q, ScalarKind kind) {
    AsymptoticNumber a;
    a.kind_ = kind;
    if (c != Cplx(0.0, 0.0)) a.terms_.push_back({q, c});
    a.normalize();
    return a;
}

AsymptoticNumber AsymptoticNumber::rho() { return monomial(Cplx(1.0, 0.0), Rat(1)); }

AsymptoticNumber AsymptoticNumber::from_terms(ScalarKind kind, std::vector<Term> terms,
                                              ErrOrder error_order) {
    AsymptoticNumber a;
    a.kind_ = kind;
    a.terms_ = std::move(terms);
    a.error_order_ = std::move(error_order);
    a.normalize();
    return a;
}

ErrOrder AsymptoticNumber::valuation() const {
    if (!terms_.empty()) return terms_.front().exponent;
    return error_order_;
}

Cplx AsymptoticNumber::leading_coeff() const {
    return terms_.empty() ? Cplx(0.0, 0.0) : terms_.front().coeff;
}

Cplx AsymptoticNumber::coeff_at(const Rat& q) const {
    for (const Term& t : terms_) {
        if (t.exponent == q) return t.coeff;
    }
    return Cplx(0.0, 0.0);
}

AsymptoticNumber AsymptoticNumber::as_kind(ScalarKind kind) const {
    AsymptoticNumber a = *this;
    a.kind_ = kind;
    a.normalize();
    return a;
}

AsymptoticNumber AsymptoticNumber::real_part() const {
    std::vector<Term> ts;
    for (const Term& t : terms_) ts.push_back({t.exponent, Cplx(t.coeff.real(), 0.0)});
    return from_terms(ScalarKind::Real, std::move(ts), error_order_);
}

AsymptoticNumber AsymptoticNumber::imag_part() const {
    std::vector<Term> ts;
    for (const Term& t : terms_) ts.push_back({t.exponent, Cplx(t.coeff.imag(), 0.0)});
    return from_terms(ScalarKind::Real, std::move(ts), error_order_);
}

AsymptoticNumber AsymptoticNumber::truncated(const ErrOrder& q) const {
    return from_terms(kind_, terms_, min_order(error_order_, q));
}

AsymptoticNumber AsymptoticNumber::cleaned(double floor) const {
    std::vector<Term> ts;
    for (const Term& t : terms_) {
        if (std::abs(t.coeff) > floor) ts.push_back(t);
    }
    return from_terms(kind_, std::move(ts), error_order_);
}

double AsymptoticNumber::max_abs_coeff() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
}

namespace {

ScalarKind join_kinds(const AsymptoticNumber& a, const AsymptoticNumber& b) {
    if (a.kind() != b.kind()) throw ShapeError("asymptotic number kind mismatch");
    return a.kind();
}

}  // namespace

AsymptoticNumber add(const AsymptoticNumber& a, const AsymptoticNumber& b) {
    ScalarKind kind = join_kinds(a, b);
    std::vector<AsymptoticNumber::Term> ts = a.terms();
    ts.insert(ts.end(), b.terms().begin(), b.terms().end());
    return AsymptoticNumber::from_terms(kind, std::move(ts),
                                        min_order(a.error_order(), b.error_order()));
}

AsymptoticNumber neg(const AsymptoticNumber& a) {
    std::vector<AsymptoticNumber::Term> ts;
    for (const auto& t : a.terms()) ts.push_back({t.exponent, -t.coeff});
    return AsymptoticNumber::from_terms(a.kind(), std::move(ts), a.error_order());
}

AsymptoticNumber sub(const AsymptoticNumber& a, const AsymptoticNumber& b) {
    return add(a, neg(b));
}

AsymptoticNumber mul(const AsymptoticNumber& a, const AsymptoticNumber& b) {
    ScalarKind kind = join_kinds(a, b);
    // exact zero absorbs everything
    if (a.is_exact_zero() || b.is_exact_zero()) return AsymptoticNumber::zero(kind);

    // exact zeros were handled above, so both valuations are finite here
    ErrOrder q;
    if (a.error_order()) q = ErrOrder(*a.error_order() + *b.valuation());
    if (b.error_order()) q = min_order(q, ErrOrder(*b.error_order() + *a.valuation()));

    std::vector<AsymptoticNumber::Term> ts;
    ts.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            ts.push_back({ta.exponent + tb.exponent, ta.coeff * tb.coeff});
        }
    }
    return AsymptoticNumber::from_terms(kind, std::move(ts), q);
}

AsymptoticNumber mul(Cplx c, const AsymptoticNumber& a) {
    std::vector<AsymptoticNumber::Term> ts;
    for (const auto& t : a.terms()) ts.push_back({t.exponent, c * t.coeff});
    ScalarKind kind = (c.imag() != 0.0) ? ScalarKind::Complex : a.kind();
    return AsymptoticNumber::from_terms(kind, std::move(ts), a.error_order());
}

AsymptoticNumber pow_int(const AsymptoticNumber& a, int n) {
    if (n < 0) throw ShapeError("pow_int: negative power (use inverse)");
    AsymptoticNumber r = AsymptoticNumber::constant(1.0).as_kind(a.kind());
    for (int i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

AsymptoticNumber inverse(const AsymptoticNumber& a, const Rat& target_order) {
    if (!a.has_terms()) {
        throw DivisionByZeroError(
            a.is_exact_zero() ? "inverse of exact zero"
                              : "inverse of a pure O(rho^" + format_order(a.error_order()) +
                                    ") class: no invertible information");
    }
    const Rat v = a.terms().front().exponent;
    const Cplx c0 = a.terms().front().coeff;

    // exact monomials invert exactly
    if (a.terms().size() == 1 && !a.error_order())
        return AsymptoticNumber::monomial(Cplx(1.0, 0.0) / c0, -v, a.kind());

    ErrOrder budget_bound;
    if (a.error_order()) budget_bound = *a.error_order() - v - v;
    ErrOrder qb = min_order(ErrOrder(target_order), budget_bound);
    if (*qb <= -v)
        throw PrecisionError("inverse: no representable terms at the requested order",
                             format_rational(*qb));

    // relative tail u with valuation > 0, truncated at the needed relative order
    const Rat rel = *qb + v;
    std::vector<AsymptoticNumber::Term> uts;
    for (size_t i = 1; i < a.terms().size(); ++i)
        uts.push_back({a.terms()[i].exponent - v, a.terms()[i].coeff / c0});
    AsymptoticNumber u = AsymptoticNumber::from_terms(a.kind(), std::move(uts), ErrOrder(rel));

    AsymptoticNumber acc = AsymptoticNumber::constant(1.0).as_kind(a.kind()).truncated(ErrOrder(rel));
    AsymptoticNumber upow = acc;
    AsymptoticNumber mu = neg(u);
    while (true) {
        upow = mul(upow, mu).truncated(ErrOrder(rel));
        if (!upow.has_terms()) break;
        acc = add(acc, upow);
    }

    std::vector<AsymptoticNumber::Term> rts;
    for (const auto& t : acc.terms()) rts.push_back({t.exponent - v, t.coeff / c0});
    return AsymptoticNumber::from_terms(a.kind(), std::move(rts), qb);
}

AsymptoticNumber sqrt(const AsymptoticNumber& a, const Rat& target_order) {
    if (a.kind() != ScalarKind::Real) throw ShapeError("sqrt is defined for real kind");
    if (!a.has_terms()) {
        if (a.is_exact_zero()) return a;
        return AsymptoticNumber::o_term(*a.error_order() / 2, a.kind());
    }
    const Rat v = a.terms().front().exponent;
    const double c0 = a.terms().front().coeff.real();
    if (c0 < 0.0) throw NotASquareError("sqrt: negative leading coefficient");

    if (a.terms().size() == 1 && !a.error_order())
        return AsymptoticNumber::monomial(Cplx(std::sqrt(c0), 0.0), v / 2, a.kind());

    ErrOrder budget_bound;
    if (a.error_order()) budget_bound = *a.error_order() - v / 2;
    ErrOrder qb = min_order(ErrOrder(target_order), budget_bound);

    const Rat rel = *qb - v / 2;
    std::vector<AsymptoticNumber::Term> uts;
    for (size_t i = 1; i < a.terms().size(); ++i)
        uts.push_back({a.terms()[i].exponent - v, a.terms()[i].coeff / c0});
    AsymptoticNumber u = AsymptoticNumber::from_terms(a.kind(), std::move(uts), ErrOrder(rel));

    // (1+u)^{1/2} by the binomial series
    AsymptoticNumber acc = AsymptoticNumber::constant(1.0).truncated(ErrOrder(rel));
    AsymptoticNumber upow = acc;
    double coeff = 1.0;
    for (int k = 0;; ++k) {
        upow = mul(upow, u).truncated(ErrOrder(rel));
        coeff *= (0.5 - k) / (k + 1);
        if (!upow.has_terms()) break;
        acc = add(acc, mul(Cplx(coeff, 0.0), upow));
    }

    const double s0 = std::sqrt(c0);
    std::vector<AsymptoticNumber::Term> rts;
    for (const auto& t : acc.terms()) rts.push_back({t.exponent + v / 2, s0 * t.coeff});
    return AsymptoticNumber::from_terms(a.kind(), std::move(rts), qb);
}

Ordering compare(const AsymptoticNumber& a, const AsymptoticNumber& b) {
    if (a.kind() != ScalarKind::Real || b.kind() != ScalarKind::Real)
        throw ShapeError("compare is defined for real kind");
    AsymptoticNumber d = sub(a, b);
    if (!d.has_terms()) return Ordering::EqualWithinTruncation;
    return d.leading_coeff().real() > 0.0 ? Ordering::Greater : Ordering::Less;
}

StandardPart standard_part(const AsymptoticNumber& a) {
    StandardPart sp;
    for (const auto& t : a.terms()) {
        if (t.exponent < Rat(0)) {
            sp.is_infinite = true;
            return sp;
        }
        if (t.exponent == Rat(0)) {
            sp.value = t.coeff.real();
            return sp;
        }
    }
    return sp;
}

Net to_scalar_net(const AsymptoticNumber& a) {
    std::vector<std::pair<double, Cplx>> table;
    for (const auto& t : a.terms()) table.emplace_back(to_double(t.exponent), t.coeff);
    return Net(BoxDomain::point(), a.kind(), 0,
               [table](double eps, std::span<const double>, const MultiIndex&) {
                   Cplx v(0.0, 0.0);
                   for (const auto& [q, c] : table) v += c * std::pow(eps, q);
                   return v;
               },
               "number(" + to_string(a) + ")");
}

std::string format_double_shortest(double v) {
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

std::string format_complex_coeff(Cplx c) {
    if (c.imag() == 0.0) return format_double_shortest(c.real());
    std::string s = "(" + format_double_shortest(c.real());
    s += (c.imag() < 0.0) ? "-" : "+";
    s += format_double_shortest(std::abs(c.imag()));
    s += "i)";
    return s;
}

namespace {

std::string format_power(const Rat& q) {
    if (q.denominator() == 1) return "r^" + std::to_string(q.numerator());
    return "r^{" + format_rational(q) + "}";
}

}  // namespace

std::string to_string(const AsymptoticNumber& a) {
    std::string s;
    if (a.terms().empty()) {
        s = "0";
    } else {
        bool first = true;
        for (const auto& t : a.terms()) {
            Cplx c = t.coeff;
            std::string sign;
            if (first) {
                if (c.imag() == 0.0 && c.real() < 0.0) {
                    sign = "-";
                    c = -c;
                }
            } else {
                if (c.imag() == 0.0 && c.real() < 0.0) {
                    sign = " - ";
                    c = -c;
                } else {
                    sign = " + ";
                }
            }
            std::string body = format_complex_coeff(c);
            if (t.exponent != Rat(0)) body += "*" + format_power(t.exponent);
            s += sign + body;
            first = false;
        }
    }
    if (a.error_order()) {
        s += " + O(" + format_power(*a.error_order()) + ")";
    }
    return s;
}

}  // namespace asym
