#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>

namespace asym {

/// Exact rational arithmetic for series exponents (Newton polygons need
/// exact slopes; coefficient noise never leaks into exponents).
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// "3", "-2" or "1/2" style; matches the CLI number syntax.
std::string format_rational(const Rat& r);

/// Optional rational used as a truncation order, nullopt meaning "exact"
/// (no O-term). min treats nullopt as +infinity.
using ErrOrder = std::optional<Rat>;

inline ErrOrder min_order(const ErrOrder& a, const ErrOrder& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}

inline bool order_le(const Rat& q, const ErrOrder& bound) {
    return !bound || q <= *bound;
}

std::string format_order(const ErrOrder& q);  // "inf" or rational

}  // namespace asym
