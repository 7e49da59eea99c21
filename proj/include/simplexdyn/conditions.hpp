#pragma once

// Simplex-preservation conditions for quadratic operators given by a
// symmetrized cubic matrix P.
//
// Writing d_ik = P(i,i,k) for the diagonal entries, the conditions are
//   cond_i          every pair row sums to one: sum_k P(i,j,k) = 1
//   cond_ii         diagonals are probabilities: 0 <= d_ik <= 1
//   cond_iii        off-diagonals obey the one-sided bound
//                       P(i,j,k) >= -sqrt(d_ik d_jk) / (m-1)
//   cond_iii_prime  off-diagonals obey the two-sided bound
//                       -sqrt(d_ik d_jk) <= P(i,j,k)
//                                        <= 1 + sqrt((1-d_ik)(1-d_jk))
//
// cond_i + cond_ii + cond_iii together are sufficient for the operator to
// map the simplex into itself; cond_i + cond_ii + cond_iii_prime are
// necessary. The gap between the two is real for m >= 3. cond_iii_prime is
// exactly the statement that on every edge segment [e_i, e_j] each output
// coordinate stays inside [0, 1]; check_edge_necessity() evaluates that
// geometric form directly.

#include "simplexdyn/cubic_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace simplexdyn {

struct IndexTriple {
    int i = 0, j = 0, k = 0;
};

// margin < 0 means the bound is violated by |margin|.
struct TripleViolation {
    int i = 0, j = 0, k = 0;
    double margin = 0.0;
};

struct DiagonalViolation {
    int i = 0, k = 0;
    double value = 0.0;
};

struct ConditionReport {
    double tol = 0.0;

    bool cond_i = false;
    double cond_i_worst_residual = 0.0;  // max |sum_k P(i,j,k) - 1|
    int cond_i_worst_i = 0, cond_i_worst_j = 0;

    bool cond_ii = false;
    std::vector<DiagonalViolation> cond_ii_violations;

    bool cond_iii = false;
    std::vector<TripleViolation> cond_iii_violations;

    bool cond_iii_prime = false;
    std::vector<TripleViolation> cond_iii_prime_violations;

    // Triples whose bound involves the square root of a negative product
    // because some diagonal entry escapes [0, 1] beyond tol; such triples are
    // excluded from cond_iii / cond_iii_prime rather than silently passed.
    std::vector<IndexTriple> not_evaluable;

    bool cond_iv_volterra = false;      // P(i,j,k) = 0 whenever k is not in {i, j}
    bool is_3_stochastic = false;       // nonnegative entries and cond_i
    bool has_negative_offdiagonal = false;

    bool sufficient() const noexcept { return cond_i && cond_ii && cond_iii; }
    bool necessary() const noexcept { return cond_i && cond_ii && cond_iii_prime; }
};

inline ConditionReport check_conditions(const CubicMatrix& P, double tol = 1e-12) {
    if (!(tol >= 0.0)) throw std::invalid_argument("check_conditions: tol must be nonnegative");
    if (!P.all_finite()) throw std::invalid_argument("check_conditions: non-finite entry");
    if (!P.is_symmetric())
        throw std::invalid_argument("check_conditions: matrix must be symmetrized first");

    const int m = P.dim();
    ConditionReport rep;
    rep.tol = tol;

    rep.cond_i = true;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int k = 0; k < m; ++k) s += P(i, j, k);
            const double r = std::abs(s - 1.0);
            if (r > rep.cond_i_worst_residual) {
                rep.cond_i_worst_residual = r;
                rep.cond_i_worst_i = i;
                rep.cond_i_worst_j = j;
            }
        }
    rep.cond_i = rep.cond_i_worst_residual <= tol;

    rep.cond_ii = true;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            const double d = P(i, i, k);
            if (d < -tol || d > 1.0 + tol) {
                rep.cond_ii = false;
                rep.cond_ii_violations.push_back({i, k, d});
            }
        }

    rep.cond_iii = true;
    rep.cond_iii_prime = true;
    const double inv = 1.0 / static_cast<double>(m - 1);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const double dik = P(i, i, k);
                const double djk = P(j, j, k);
                const double prod = dik * djk;
                const double cprod = (1.0 - dik) * (1.0 - djk);
                if (prod < -tol || cprod < -tol) {
                    rep.not_evaluable.push_back({i, j, k});
                    continue;
                }
                const double root = std::sqrt(std::max(prod, 0.0));
                const double croot = std::sqrt(std::max(cprod, 0.0));
                const double v = P(i, j, k);

                const double m3 = v + inv * root;
                if (m3 < -tol) {
                    rep.cond_iii = false;
                    rep.cond_iii_violations.push_back({i, j, k, m3});
                }

                const double lo = v + root;
                const double hi = 1.0 + croot - v;
                const double m3p = std::min(lo, hi);
                if (m3p < -tol) {
                    rep.cond_iii_prime = false;
                    rep.cond_iii_prime_violations.push_back({i, j, k, m3p});
                }
            }

    rep.cond_iv_volterra = true;
    rep.has_negative_offdiagonal = false;
    bool nonneg = true;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const double v = P(i, j, k);
                if (k != i && k != j && std::abs(v) > tol) rep.cond_iv_volterra = false;
                if (v < -tol) {
                    nonneg = false;
                    if (i != j) rep.has_negative_offdiagonal = true;
                }
            }
    rep.is_3_stochastic = nonneg && rep.cond_i;

    return rep;
}

struct Interval {
    double lo = 0.0, hi = 0.0;
};

// Exact range of f(t) = a t^2 + 2 b t (1 - t) + c (1 - t)^2 on [0, 1].
// Expanded, f(t) = (a - 2b + c) t^2 + 2 (b - c) t + c with f(0) = c and
// f(1) = a; the interior extremum t0 = (c - b) / (a - 2b + c) contributes
// f(t0) = c - (c - b)^2 / (a - 2b + c) when it lies inside (0, 1).
inline Interval quadratic_range_on_unit_interval(double a, double b, double c) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw std::invalid_argument("quadratic_range_on_unit_interval: non-finite coefficient");
    Interval r{std::min(a, c), std::max(a, c)};
    const double q = a - 2.0 * b + c;
    if (q != 0.0) {
        const double t0 = (c - b) / q;
        if (t0 > 0.0 && t0 < 1.0) {
            const double v = c - (c - b) * (c - b) / q;
            r.lo = std::min(r.lo, v);
            r.hi = std::max(r.hi, v);
        }
    }
    return r;
}

struct EdgeCheck {
    int i = 0, j = 0, k = 0;
    Interval range;
    bool inside = false;  // range within [0 - tol, 1 + tol]
};

struct EdgeNecessityReport {
    double tol = 0.0;
    bool all_inside = false;
    std::vector<EdgeCheck> checks;
};

// On the edge x = t e_i + (1-t) e_j the k-th output coordinate is exactly
// the quadratic handled by quadratic_range_on_unit_interval with
// a = P(i,i,k), b = P(i,j,k), c = P(j,j,k). Necessity of cond_iii_prime is
// the statement that all these ranges lie in [0, 1].
inline EdgeNecessityReport check_edge_necessity(const CubicMatrix& P, double tol = 1e-12) {
    if (!(tol >= 0.0))
        throw std::invalid_argument("check_edge_necessity: tol must be nonnegative");
    if (!P.all_finite()) throw std::invalid_argument("check_edge_necessity: non-finite entry");
    if (!P.is_symmetric())
        throw std::invalid_argument("check_edge_necessity: matrix must be symmetrized first");

    const int m = P.dim();
    EdgeNecessityReport rep;
    rep.tol = tol;
    rep.all_inside = true;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                EdgeCheck ec;
                ec.i = i;
                ec.j = j;
                ec.k = k;
                ec.range = quadratic_range_on_unit_interval(P(i, i, k), P(i, j, k), P(j, j, k));
                ec.inside = ec.range.lo >= -tol && ec.range.hi <= 1.0 + tol;
                rep.all_inside = rep.all_inside && ec.inside;
                rep.checks.push_back(ec);
            }
    return rep;
}

} // namespace simplexdyn
