#pragma once

#include <complex>
#include <vector>

#include "asym/net.hpp"
#include "asym/rational.hpp"

namespace asym {

/// Division of a number carrying no terms (exact zero, or a bare O(rho^Q)
/// truncation with no invertible information).
class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

/// sqrt of a real-kind number with negative leading coefficient.
class NotASquareError : public Error {
public:
    using Error::Error;
};

/// A computable fragment of the asymptotic-number fields: finite truncated
/// power series in the canonical infinitesimal rho with exact rational
/// exponents, machine-float coefficients and an explicit O(rho^Q) budget.
/// error_order == nullopt means the number is exact (no truncation).
class AsymptoticNumber {
public:
    struct Term {
        Rat exponent;
        Cplx coeff;
    };

    AsymptoticNumber() : kind_(ScalarKind::Real) {}

    static AsymptoticNumber zero(ScalarKind kind = ScalarKind::Real);
    /// The pure truncation class O(rho^Q): no terms, finite budget.
    static AsymptoticNumber o_term(const Rat& q, ScalarKind kind = ScalarKind::Real);
    static AsymptoticNumber constant(double c);
    static AsymptoticNumber constant(Cplx c);
    /// c * rho^q
    static AsymptoticNumber monomial(Cplx c, const Rat& q, ScalarKind kind = ScalarKind::Real);
    /// The canonical infinitesimal rho (the class of the net eps -> eps).
    static AsymptoticNumber rho();
    static AsymptoticNumber from_terms(ScalarKind kind, std::vector<Term> terms,
                                       ErrOrder error_order);

    ScalarKind kind() const { return kind_; }
    const std::vector<Term>& terms() const { return terms_; }
    const ErrOrder& error_order() const { return error_order_; }
    bool has_terms() const { return !terms_.empty(); }
    bool is_exact_zero() const { return terms_.empty() && !error_order_; }

    /// Least exponent; for a zero-term number the budget Q (nullopt = +inf,
    /// the exact zero).
    ErrOrder valuation() const;
    Cplx leading_coeff() const;
    Cplx coeff_at(const Rat& q) const;  // 0 if absent

    AsymptoticNumber as_kind(ScalarKind kind) const;
    AsymptoticNumber real_part() const;
    AsymptoticNumber imag_part() const;
    AsymptoticNumber truncated(const ErrOrder& q) const;
    /// Drops terms with |coeff| <= floor (noise cleanup; used by root finding).
    AsymptoticNumber cleaned(double floor) const;
    double max_abs_coeff() const;

private:
    ScalarKind kind_;
    std::vector<Term> terms_;
    ErrOrder error_order_;

    void normalize();
};

AsymptoticNumber add(const AsymptoticNumber& a, const AsymptoticNumber& b);
AsymptoticNumber sub(const AsymptoticNumber& a, const AsymptoticNumber& b);
AsymptoticNumber neg(const AsymptoticNumber& a);
AsymptoticNumber mul(const AsymptoticNumber& a, const AsymptoticNumber& b);
AsymptoticNumber mul(Cplx c, const AsymptoticNumber& a);
AsymptoticNumber pow_int(const AsymptoticNumber& a, int n);

/// Leading-term inversion times a truncated geometric series;
/// valuation(result) = -valuation(a), error order min(target, budget bound).
AsymptoticNumber inverse(const AsymptoticNumber& a, const Rat& target_order);

/// Real-closedness witness: leading coefficient must be positive.
AsymptoticNumber sqrt(const AsymptoticNumber& a, const Rat& target_order);

enum class Ordering { Less, EqualWithinTruncation, Greater };
Ordering compare(const AsymptoticNumber& a, const AsymptoticNumber& b);

struct StandardPart {
    bool is_infinite = false;
    double value = 0.0;
};
StandardPart standard_part(const AsymptoticNumber& a);

/// The number seen as a net of constants on R^0.
Net to_scalar_net(const AsymptoticNumber& a);

/// Canonical text form, e.g. "1 - 1*r^1 + 1*r^2 + O(r^3)"; fractional
/// exponents are braced ("r^{1/2}"). parse_asymptotic_number round-trips
/// this exactly.
std::string to_string(const AsymptoticNumber& a);
std::string format_double_shortest(double v);
std::string format_complex_coeff(Cplx c);

}  // namespace asym
