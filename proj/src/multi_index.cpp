#include "asym/multi_index.hpp"

#include <numeric>
#include <string>

namespace asym {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_) {
        if (e < 0) throw ShapeError("multi-index entries must be non-negative");
    }
}

MultiIndex MultiIndex::zero(int dim) { return MultiIndex(std::vector<int>(static_cast<size_t>(dim), 0)); }

MultiIndex MultiIndex::unit(int dim, int axis) {
    std::vector<int> e(static_cast<size_t>(dim), 0);
    e[static_cast<size_t>(axis)] = 1;
    return MultiIndex(std::move(e));
}

int MultiIndex::order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
    if (dim() != other.dim()) throw ShapeError("multi-index dimension mismatch");
    std::vector<int> e(entries_);
    for (size_t i = 0; i < e.size(); ++i) e[i] += other.entries_[i];
    return MultiIndex(std::move(e));
}

bool MultiIndex::leq(const MultiIndex& other) const {
    if (dim() != other.dim()) throw ShapeError("multi-index dimension mismatch");
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] > other.entries_[i]) return false;
    }
    return true;
}

std::string MultiIndex::str() const {
    std::string s = "(";
    for (int i = 0; i < dim(); ++i) {
        if (i) s += ",";
        s += std::to_string(entries_[static_cast<size_t>(i)]);
    }
    return s + ")";
}

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace

double multi_binomial(const MultiIndex& a, const MultiIndex& b) {
    double r = 1.0;
    for (int i = 0; i < a.dim(); ++i) r *= binom(a[i], b[i]);
    return r;
}

double multi_factorial(const MultiIndex& a) {
    double r = 1.0;
    for (int i = 0; i < a.dim(); ++i) {
        for (int k = 2; k <= a[i]; ++k) r *= static_cast<double>(k);
    }
    return r;
}

namespace {

void enumerate_order(int dim, int remaining, int axis, std::vector<int>& cur,
                     std::vector<MultiIndex>& out) {
    if (axis == dim - 1) {
        cur[static_cast<size_t>(axis)] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur[static_cast<size_t>(axis)] = v;
        enumerate_order(dim, remaining - v, axis + 1, cur, out);
    }
}

}  // namespace

std::vector<MultiIndex> multi_indices_up_to(int dim, int max_order) {
    std::vector<MultiIndex> out;
    if (dim == 0) {
        out.push_back(MultiIndex::zero(0));
        return out;
    }
    std::vector<int> cur(static_cast<size_t>(dim), 0);
    for (int ord = 0; ord <= max_order; ++ord) enumerate_order(dim, ord, 0, cur, out);
    return out;
}

std::vector<MultiIndex> sub_indices(const MultiIndex& alpha) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<size_t>(alpha.dim()), 0);
    while (true) {
        out.emplace_back(cur);
        int i = 0;
        for (; i < alpha.dim(); ++i) {
            if (cur[static_cast<size_t>(i)] < alpha[i]) {
                ++cur[static_cast<size_t>(i)];
                for (int j = 0; j < i; ++j) cur[static_cast<size_t>(j)] = 0;
                break;
            }
        }
        if (i == alpha.dim()) break;
    }
    return out;
}

}  // namespace asym
