#pragma once

#include <vector>

#include "asym/asymptotic_number.hpp"

namespace asym {

/// Polynomial over the asymptotic-number fragment, coefficients by ascending
/// power of x. The leading coefficient must carry terms (be invertible).
struct Polynomial {
    std::vector<AsymptoticNumber> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    static Polynomial from_coeffs(std::vector<AsymptoticNumber> coeffs);
};

AsymptoticNumber eval_poly(const Polynomial& p, const AsymptoticNumber& x);

/// Newton-Puiseux: all degree-many roots (with multiplicity) as truncated
/// Puiseux series. The Newton polygon selects candidate leading exponents;
/// the residual univariate polynomial per segment is solved by standard
/// complex root finding at machine precision; branches recurse on the
/// shifted polynomial until target_order is reached. Coefficient budgets
/// below what the polygon needs raise PrecisionError naming the blocking
/// exponent.
std::vector<AsymptoticNumber> roots(const Polynomial& p, const Rat& target_order);

/// Roots of a complex polynomial with constant coefficients (ascending),
/// clustered so multiple roots come back as repeated centroids.
std::vector<Cplx> complex_poly_roots(const std::vector<Cplx>& coeffs);

}  // namespace asym
