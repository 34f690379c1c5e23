#include "asym/taylor.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

namespace asym {

struct TaylorPoly::Table {
    int dim, order;
    std::vector<MultiIndex> indices;               // graded lex
    std::unordered_map<long long, int> rank_of;    // packed key -> rank
    // rank pairs with |a|+|b| <= order -> rank of a+b, precomputed for times()
    std::vector<std::vector<int>> sum_rank;

    long long pack(const MultiIndex& a) const {
        long long key = 0;
        long long base = static_cast<long long>(order) + 1;
        for (int i = 0; i < dim; ++i) key = key * base + a[i];
        return key;
    }

    Table(int d, int m) : dim(d), order(m) {
        indices = multi_indices_up_to(d, m);
        rank_of.reserve(indices.size() * 2);
        for (size_t r = 0; r < indices.size(); ++r)
            rank_of.emplace(pack(indices[r]), static_cast<int>(r));
        sum_rank.assign(indices.size(), {});
        for (size_t i = 0; i < indices.size(); ++i) {
            sum_rank[i].assign(indices.size(), -1);
            for (size_t j = 0; j < indices.size(); ++j) {
                if (indices[i].order() + indices[j].order() <= order) {
                    MultiIndex s = indices[i].plus(indices[j]);
                    sum_rank[i][j] = rank_of.at(pack(s));
                }
            }
        }
    }
};

namespace {

std::shared_ptr<const TaylorPoly::Table> table_for(int dim, int order);

}  // namespace

TaylorPoly::TaylorPoly(int dim, int order)
    : dim_(dim), order_(order), table_(table_for(dim, order)) {
    coeffs_.assign(table_->indices.size(), Cplx(0.0, 0.0));
}

TaylorPoly TaylorPoly::constant(int dim, int order, Cplx value) {
    TaylorPoly p(dim, order);
    p.coeffs_[0] = value;
    return p;
}

TaylorPoly TaylorPoly::from_jets(int dim, int order,
                                 const std::function<Cplx(const MultiIndex&)>& jet) {
    TaylorPoly p(dim, order);
    for (size_t r = 0; r < p.table_->indices.size(); ++r) {
        const MultiIndex& a = p.table_->indices[r];
        p.coeffs_[r] = jet(a) / multi_factorial(a);
    }
    return p;
}

Cplx TaylorPoly::coeff(const MultiIndex& alpha) const {
    auto it = table_->rank_of.find(table_->pack(alpha));
    if (it == table_->rank_of.end()) throw ShapeError("multi-index outside Taylor truncation");
    return coeffs_[static_cast<size_t>(it->second)];
}

void TaylorPoly::set_coeff(const MultiIndex& alpha, Cplx value) {
    auto it = table_->rank_of.find(table_->pack(alpha));
    if (it == table_->rank_of.end()) throw ShapeError("multi-index outside Taylor truncation");
    coeffs_[static_cast<size_t>(it->second)] = value;
}

const MultiIndex& TaylorPoly::index_at_rank(int rank) const {
    return table_->indices[static_cast<size_t>(rank)];
}

Cplx TaylorPoly::derivative(const MultiIndex& alpha) const {
    return coeff(alpha) * multi_factorial(alpha);
}

TaylorPoly TaylorPoly::plus(const TaylorPoly& other) const {
    if (dim_ != other.dim_ || order_ != other.order_) throw ShapeError("Taylor shape mismatch");
    TaylorPoly r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += other.coeffs_[i];
    return r;
}

TaylorPoly TaylorPoly::minus(const TaylorPoly& other) const {
    if (dim_ != other.dim_ || order_ != other.order_) throw ShapeError("Taylor shape mismatch");
    TaylorPoly r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= other.coeffs_[i];
    return r;
}

TaylorPoly TaylorPoly::times(const TaylorPoly& other) const {
    if (dim_ != other.dim_ || order_ != other.order_) throw ShapeError("Taylor shape mismatch");
    TaylorPoly r(dim_, order_);
    const auto& sums = table_->sum_rank;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == Cplx(0.0, 0.0)) continue;
        for (size_t j = 0; j < other.coeffs_.size(); ++j) {
            int k = sums[i][j];
            if (k >= 0) r.coeffs_[static_cast<size_t>(k)] += coeffs_[i] * other.coeffs_[j];
        }
    }
    return r;
}

TaylorPoly TaylorPoly::scaled(Cplx c) const {
    TaylorPoly r = *this;
    for (auto& v : r.coeffs_) v *= c;
    return r;
}

TaylorPoly TaylorPoly::fractional_part() const {
    TaylorPoly r = *this;
    r.coeffs_[0] = Cplx(0.0, 0.0);
    return r;
}

namespace {

std::shared_ptr<const TaylorPoly::Table> table_for(int dim, int order) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::shared_ptr<const TaylorPoly::Table>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(dim, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto t = std::make_shared<const TaylorPoly::Table>(dim, order);
    cache.emplace(key, t);
    return t;
}

}  // namespace

TaylorPoly taylor_compose(const TaylorPoly& outer, const std::vector<TaylorPoly>& inner) {
    if (outer.dim() != static_cast<int>(inner.size()))
        throw ShapeError("composition arity mismatch");
    const int dim = inner.empty() ? 0 : inner[0].dim();
    const int order = inner.empty() ? outer.order() : inner[0].order();
    for (const auto& p : inner) {
        if (p.dim() != dim || p.order() != order) throw ShapeError("inner Taylor shape mismatch");
    }

    // Powers of each centered inner polynomial up to the truncation order.
    std::vector<std::vector<TaylorPoly>> pows(inner.size());
    for (size_t j = 0; j < inner.size(); ++j) {
        pows[j].reserve(static_cast<size_t>(order) + 1);
        pows[j].push_back(TaylorPoly::constant(dim, order, Cplx(1.0, 0.0)));
        TaylorPoly z = inner[j].fractional_part();
        for (int k = 1; k <= order; ++k) pows[j].push_back(pows[j].back().times(z));
    }

    TaylorPoly result(dim, order);
    for (int r = 0; r < outer.term_count(); ++r) {
        Cplx c = outer.coeff_at_rank(r);
        if (c == Cplx(0.0, 0.0)) continue;
        const MultiIndex& beta = outer.index_at_rank(r);
        if (beta.order() > order) continue;
        TaylorPoly term = TaylorPoly::constant(dim, order, c);
        for (int j = 0; j < beta.dim(); ++j) {
            if (beta[j] > 0) term = term.times(pows[static_cast<size_t>(j)][static_cast<size_t>(beta[j])]);
        }
        result = result.plus(term);
    }
    return result;
}

TaylorPoly taylor_compose1(const std::vector<Cplx>& outer_coeffs, const TaylorPoly& inner) {
    const int dim = inner.dim();
    const int order = inner.order();
    TaylorPoly z = inner.fractional_part();
    TaylorPoly result(dim, order);
    TaylorPoly zpow = TaylorPoly::constant(dim, order, Cplx(1.0, 0.0));
    for (size_t k = 0; k < outer_coeffs.size() && static_cast<int>(k) <= order; ++k) {
        if (k > 0) zpow = zpow.times(z);
        result = result.plus(zpow.scaled(outer_coeffs[k]));
    }
    return result;
}

}  // namespace asym
