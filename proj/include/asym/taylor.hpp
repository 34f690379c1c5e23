#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "asym/multi_index.hpp"

namespace asym {

using Cplx = std::complex<double>;

/// Truncated multivariate Taylor polynomial: coefficients indexed by
/// multi-indices of order <= order(). Drives all jet propagation
/// (pullbacks, levelwise composition of map nets, elementary functions).
class TaylorPoly {
public:
    TaylorPoly(int dim, int order);
    static TaylorPoly constant(int dim, int order, Cplx value);
    /// coeff(alpha) = jet(alpha) / alpha!
    static TaylorPoly from_jets(int dim, int order,
                                const std::function<Cplx(const MultiIndex&)>& jet);

    int dim() const { return dim_; }
    int order() const { return order_; }
    int term_count() const { return static_cast<int>(coeffs_.size()); }

    Cplx coeff(const MultiIndex& alpha) const;
    void set_coeff(const MultiIndex& alpha, Cplx value);
    Cplx coeff_at_rank(int rank) const { return coeffs_[static_cast<size_t>(rank)]; }
    const MultiIndex& index_at_rank(int rank) const;

    Cplx value() const { return coeffs_[0]; }
    /// alpha! * coeff(alpha): the derivative the jet encodes.
    Cplx derivative(const MultiIndex& alpha) const;

    TaylorPoly plus(const TaylorPoly& other) const;
    TaylorPoly minus(const TaylorPoly& other) const;
    TaylorPoly times(const TaylorPoly& other) const;  // truncated product
    TaylorPoly scaled(Cplx c) const;
    /// Drops the constant term.
    TaylorPoly fractional_part() const;

    struct Table;

private:
    const Table& table() const { return *table_; }

    int dim_, order_;
    std::shared_ptr<const Table> table_;
    std::vector<Cplx> coeffs_;
};

/// Substitute inner polynomials into outer: outer's coefficients must be the
/// Taylor coefficients of g at the point (inner_1.value(), ..., inner_k.value());
/// the result is the truncated Taylor polynomial of g(inner...). All inner
/// polynomials must share dim and order, which the result inherits.
TaylorPoly taylor_compose(const TaylorPoly& outer, const std::vector<TaylorPoly>& inner);

/// Univariate helper: coefficients c[k] of sum_k c[k] (x - x0)^k composed with
/// a single inner polynomial whose value is x0.
TaylorPoly taylor_compose1(const std::vector<Cplx>& outer_coeffs, const TaylorPoly& inner);

}  // namespace asym
