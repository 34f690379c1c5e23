#include "asym/puiseux.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace asym {

Polynomial Polynomial::from_coeffs(std::vector<AsymptoticNumber> coeffs) {
    while (coeffs.size() > 1 && !coeffs.back().has_terms() && coeffs.back().is_exact_zero())
        coeffs.pop_back();
    Polynomial p{std::move(coeffs)};
    if (p.coeffs.empty()) throw ShapeError("polynomial needs at least one coefficient");
    return p;
}

AsymptoticNumber eval_poly(const Polynomial& p, const AsymptoticNumber& x) {
    AsymptoticNumber acc = p.coeffs.back().as_kind(x.kind());
    for (int j = p.degree() - 1; j >= 0; --j)
        acc = add(mul(acc, x), p.coeffs[static_cast<size_t>(j)].as_kind(x.kind()));
    return acc;
}

namespace {

Cplx snap_components(Cplx z) {
    double m = std::abs(z);
    if (m == 0.0) return z;
    double re = z.real(), im = z.imag();
    if (std::abs(im) <= 1e-12 * m) im = 0.0;
    if (std::abs(re) <= 1e-12 * m) re = 0.0;
    return {re, im};
}

std::vector<Cplx> raw_complex_roots(const std::vector<Cplx>& coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<Cplx> out;
    if (n <= 0) return out;
    if (n == 1) {
        out.push_back(-coeffs[0] / coeffs[1]);
        return out;
    }
    if (n == 2) {
        Cplx a = coeffs[2], b = coeffs[1], c = coeffs[0];
        Cplx disc = b * b - 4.0 * a * c;
        double scale = std::abs(b * b) + std::abs(4.0 * a * c);
        if (std::abs(disc) <= 1e-12 * scale) disc = Cplx(0.0, 0.0);
        Cplx sq = std::sqrt(disc);
        // numerically stable pair: avoid cancellation in -b +- sq
        Cplx q = (std::real(std::conj(b) * sq) >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
        if (std::abs(q) > 0.0) {
            out.push_back(q / a);
            out.push_back(c / q);
        } else {
            out.push_back(Cplx(0.0, 0.0));
            out.push_back(Cplx(0.0, 0.0));
        }
        return out;
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -coeffs[static_cast<size_t>(i)] / coeffs[static_cast<size_t>(n)];
        if (i + 1 < n) companion(i + 1, i) = Cplx(1.0, 0.0);
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    for (int i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
    return out;
}

}  // namespace

std::vector<Cplx> complex_poly_roots(const std::vector<Cplx>& coeffs) {
    std::vector<Cplx> raw = raw_complex_roots(coeffs);
    std::sort(raw.begin(), raw.end(), [](Cplx a, Cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    // greedy clustering; a multiple root comes back as one centroid repeated
    std::vector<std::vector<Cplx>> clusters;
    for (Cplx r : raw) {
        bool placed = false;
        for (auto& cl : clusters) {
            Cplx centroid(0.0, 0.0);
            for (Cplx v : cl) centroid += v;
            centroid /= static_cast<double>(cl.size());
            if (std::abs(r - centroid) <= 1e-6 * std::max(1.0, std::abs(centroid))) {
                cl.push_back(r);
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({r});
    }
    std::vector<Cplx> out;
    for (const auto& cl : clusters) {
        Cplx centroid(0.0, 0.0);
        for (Cplx v : cl) centroid += v;
        centroid /= static_cast<double>(cl.size());
        centroid = snap_components(centroid);
        for (size_t i = 0; i < cl.size(); ++i) out.push_back(centroid);
    }
    return out;
}

namespace {

struct HullPoint {
    int j;
    Rat v;
};

/// Lower convex hull of the valuation points, slopes strictly increasing.
std::vector<HullPoint> lower_hull(const std::vector<HullPoint>& pts) {
    std::vector<HullPoint> hull;
    for (const HullPoint& p : pts) {
        while (hull.size() >= 2) {
            const HullPoint& a = hull[hull.size() - 2];
            const HullPoint& b = hull[hull.size() - 1];
            // keep if b is strictly below segment a-p: cross product test
            Rat lhs = (b.v - a.v) * Rat(p.j - a.j);
            Rat rhs = (p.v - a.v) * Rat(b.j - a.j);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(p);
    }
    return hull;
}

AsymptoticNumber finalize_root(const AsymptoticNumber& prefix, const Rat& target) {
    return prefix.truncated(ErrOrder(target));
}

void puiseux_rec(std::vector<AsymptoticNumber> coeffs, const AsymptoticNumber& prefix,
                 const ErrOrder& min_mu, const Rat& target, int depth,
                 std::vector<AsymptoticNumber>& out) {
    if (depth > 64)
        throw PrecisionError("Puiseux iteration failed to reach the target order", format_rational(target));

    // per-level noise floor relative to the polynomial's global coefficient scale
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, c.max_abs_coeff());
    if (scale > 0.0) {
        for (auto& c : coeffs) c = c.cleaned(1e-12 * scale);
    }

    int d = static_cast<int>(coeffs.size()) - 1;

    // roots at the current prefix: strip low coefficients with no terms
    int k = 0;
    while (k <= d && !coeffs[static_cast<size_t>(k)].has_terms()) ++k;
    if (k > d) {
        // every coefficient vanished: should not happen for a monic input
        throw PrecisionError("polynomial collapsed below its truncation budgets",
                             format_rational(target));
    }
    if (k > 0) {
        bool all_exact = true;
        ErrOrder budget;
        for (int j = 0; j < k; ++j) {
            const auto& c = coeffs[static_cast<size_t>(j)];
            if (!c.is_exact_zero()) {
                all_exact = false;
                budget = min_order(budget, c.error_order());
            }
        }
        for (int copy = 0; copy < k; ++copy) {
            if (all_exact) {
                out.push_back(prefix);
            } else {
                Rat attainable = *budget / k;
                if (attainable < target)
                    throw PrecisionError("zero-root budget below target order",
                                         format_rational(attainable));
                out.push_back(finalize_root(prefix, target));
            }
        }
        coeffs.erase(coeffs.begin(), coeffs.begin() + k);
        d -= k;
    }
    if (d == 0) return;

    std::vector<HullPoint> pts;
    for (int j = 0; j <= d; ++j) {
        const auto& c = coeffs[static_cast<size_t>(j)];
        if (c.has_terms()) pts.push_back({j, *c.valuation()});
    }
    std::vector<HullPoint> hull = lower_hull(pts);

    for (size_t s = 0; s + 1 < hull.size(); ++s) {
        const HullPoint a = hull[s], b = hull[s + 1];
        const Rat mu = (a.v - b.v) / Rat(b.j - a.j);  // root valuation for this segment
        if (min_mu && !(mu > *min_mu)) continue;      // other branches, already accounted
        if (mu >= target) {
            // further terms are beyond the requested order
            for (int copy = 0; copy < b.j - a.j; ++copy) out.push_back(finalize_root(prefix, target));
            continue;
        }

        // budgets of zero-term coefficients must reach the segment line
        for (int j = a.j + 1; j < b.j; ++j) {
            const auto& c = coeffs[static_cast<size_t>(j)];
            Rat line = a.v + (b.v - a.v) * Rat(j - a.j) / Rat(b.j - a.j);
            if (!c.has_terms() && c.error_order() && *c.error_order() < line)
                throw PrecisionError("coefficient budget below the Newton polygon",
                                     format_rational(*c.error_order()));
        }

        const long long q = mu.denominator();
        std::vector<Cplx> residual;
        for (int j = a.j; j <= b.j; j += static_cast<int>(q)) {
            const auto& c = coeffs[static_cast<size_t>(j)];
            Rat line = a.v + (b.v - a.v) * Rat(j - a.j) / Rat(b.j - a.j);
            residual.push_back(c.coeff_at(line));
        }
        std::vector<Cplx> wroots = complex_poly_roots(residual);

        // group identical centroids to get multiplicities
        size_t i = 0;
        while (i < wroots.size()) {
            // identical centroids are one branch point; the recursion on the
            // shifted polynomial recovers the multiplicity by itself
            size_t jdx = i;
            while (jdx < wroots.size() && wroots[jdx] == wroots[i]) ++jdx;
            const Cplx w = wroots[i];
            i = jdx;
            if (w == Cplx(0.0, 0.0)) continue;  // cannot happen: constant term nonzero

            const double mag = std::pow(std::abs(w), 1.0 / static_cast<double>(q));
            const double arg = std::arg(w);
            for (long long branch = 0; branch < q; ++branch) {
                const double theta =
                    (arg + 2.0 * M_PI * static_cast<double>(branch)) / static_cast<double>(q);
                const Cplx lead = snap_components(Cplx(mag * std::cos(theta), mag * std::sin(theta)));
                AsymptoticNumber term =
                    AsymptoticNumber::monomial(lead, mu, ScalarKind::Complex);
                AsymptoticNumber new_prefix = add(prefix, term);

                // shift: Q(y) = P(lead * rho^mu + y), coefficients by binomial expansion
                std::vector<AsymptoticNumber> shifted(
                    coeffs.size(), AsymptoticNumber::zero(ScalarKind::Complex));
                std::vector<AsymptoticNumber> term_pows = {
                    AsymptoticNumber::constant(1.0).as_kind(ScalarKind::Complex)};
                for (int e = 1; e <= d; ++e) term_pows.push_back(mul(term_pows.back(), term));
                for (int jc = 0; jc <= d; ++jc) {
                    double binom_jk = 1.0;  // C(jc, kc), updated as kc decreases
                    for (int kc = jc; kc >= 0; --kc) {
                        AsymptoticNumber contrib =
                            mul(Cplx(binom_jk, 0.0),
                                mul(coeffs[static_cast<size_t>(jc)].as_kind(ScalarKind::Complex),
                                    term_pows[static_cast<size_t>(jc - kc)]));
                        shifted[static_cast<size_t>(kc)] =
                            add(shifted[static_cast<size_t>(kc)], contrib);
                        binom_jk = binom_jk * static_cast<double>(kc) /
                                   static_cast<double>(jc - kc + 1);
                    }
                }
                puiseux_rec(std::move(shifted), new_prefix, ErrOrder(mu), target, depth + 1, out);
            }
        }
    }
}

}  // namespace

std::vector<AsymptoticNumber> roots(const Polynomial& p, const Rat& target_order) {
    const int d = p.degree();
    if (d < 1) throw ShapeError("roots: degree must be >= 1");
    const AsymptoticNumber& lead = p.coeffs.back();
    if (!lead.has_terms())
        throw DivisionByZeroError("roots: leading coefficient is not invertible");
    for (const auto& c : p.coeffs) {
        if (c.error_order() && *c.error_order() < target_order)
            throw PrecisionError("coefficient budget below target order",
                                 format_rational(*c.error_order()));
    }

    // normalize monic; the inversion target must stay ahead of everything the
    // polygon recursion can consume
    Rat spread(0);
    for (const auto& c : p.coeffs) {
        if (c.has_terms()) {
            Rat v = *c.valuation();
            Rat va = v < Rat(0) ? -v : v;
            if (va > spread) spread = va;
        }
    }
    AsymptoticNumber lead_inv = inverse(lead, target_order + spread + Rat(8));
    std::vector<AsymptoticNumber> monic;
    monic.reserve(p.coeffs.size());
    for (const auto& c : p.coeffs)
        monic.push_back(mul(c.as_kind(ScalarKind::Complex), lead_inv.as_kind(ScalarKind::Complex)));
    monic.back() = AsymptoticNumber::constant(1.0).as_kind(ScalarKind::Complex);

    std::vector<AsymptoticNumber> out;
    puiseux_rec(std::move(monic), AsymptoticNumber::zero(ScalarKind::Complex), ErrOrder{},
                target_order, 0, out);
    if (static_cast<int>(out.size()) != d)
        throw PrecisionError("root count mismatch: branches lost below truncation budgets",
                             format_rational(target_order));
    return out;
}

}  // namespace asym
