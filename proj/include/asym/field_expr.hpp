#pragma once

#include <string_view>
#include <vector>

#include "asym/asymptotic_number.hpp"
#include "asym/rational.hpp"

namespace asym {

/// Result of parsing a field expression: either a plain value (poly of
/// degree 0) or a roots(...) request carrying a polynomial in x.
struct FieldParse {
    bool is_roots = false;
    std::vector<AsymptoticNumber> poly;  // ascending powers of x
    Rat roots_target = Rat(0);
};

/// Grammar: sums/products of double literals, `r`, `x`, powers `^n` and
/// `^{p/q}` (fractional powers on monomials), `O(r^q)` budget atoms,
/// `inv(expr, Q)`, `sqrt(expr, Q)`, `roots(poly-expr, Q)` and complex
/// literals `(a+bi)`. The canonical printer output parses back exactly.
FieldParse parse_field_expression(std::string_view text);

/// Expression restricted to a degree-0 value (no x, no roots).
AsymptoticNumber parse_asymptotic_number(std::string_view text);

}  // namespace asym
