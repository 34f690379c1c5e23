#pragma once

#include <vector>

#include "asym/errors.hpp"

namespace asym {

/// A derivative multi-index: n non-negative integers, |alpha| = sum of entries.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);

    static MultiIndex zero(int dim);
    static MultiIndex unit(int dim, int axis);

    int dim() const { return static_cast<int>(entries_.size()); }
    int order() const;
    int operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
    const std::vector<int>& entries() const { return entries_; }

    MultiIndex plus(const MultiIndex& other) const;
    /// Componentwise beta <= alpha.
    bool leq(const MultiIndex& other) const;
    bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }

    std::string str() const;

private:
    std::vector<int> entries_;
};

/// prod_i C(a_i, b_i); requires b.leq(a).
double multi_binomial(const MultiIndex& a, const MultiIndex& b);
/// prod_i a_i!
double multi_factorial(const MultiIndex& a);

/// All multi-indices of the given dimension with order <= max_order, graded
/// lexicographic (order 0 first, then order 1, ...). Deterministic.
std::vector<MultiIndex> multi_indices_up_to(int dim, int max_order);

/// All beta with beta <= alpha componentwise (includes 0 and alpha).
std::vector<MultiIndex> sub_indices(const MultiIndex& alpha);

}  // namespace asym
