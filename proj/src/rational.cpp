#include "asym/rational.hpp"

namespace asym {

std::string format_rational(const Rat& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

std::string format_order(const ErrOrder& q) {
    return q ? format_rational(*q) : std::string("inf");
}

}  // namespace asym
