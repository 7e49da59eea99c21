#pragma once

// Fixed points of the operator restricted to the simplex hyperplane:
// damped Newton on the reduced map from a deterministic barycentric seed
// grid, deduplication, eigenvalue classification of the reduced Jacobian,
// and an isolation test (smallest singular value of Jr - I) that flags
// members of fixed-point continua.

#include "simplexdyn/cubic_matrix.hpp"
#include "simplexdyn/eigen_small.hpp"
#include "simplexdyn/qop.hpp"
#include "simplexdyn/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace simplexdyn {

enum class Stability { attracting, repelling, saddle, non_hyperbolic };

// Refinement of non_hyperbolic: all eigenvalues off the unit circle lie
// strictly inside (semi_attracting) or strictly outside (semi_repelling).
enum class SemiKind { semi_attracting, semi_repelling };

inline const char* to_string(Stability s) noexcept {
    switch (s) {
        case Stability::attracting: return "attracting";
        case Stability::repelling: return "repelling";
        case Stability::saddle: return "saddle";
        case Stability::non_hyperbolic: return "non-hyperbolic";
    }
    return "unknown";
}

inline const char* to_string(SemiKind s) noexcept {
    return s == SemiKind::semi_attracting ? "semi-attracting" : "semi-repelling";
}

struct FixedPointRecord {
    SimplexPoint point;
    std::vector<Complex> eigenvalues;  // reduced Jacobian, dimension m-1
    Stability classification = Stability::non_hyperbolic;
    std::optional<SemiKind> annotation;
    bool isolated = true;
    double residual = 0.0;  // ||V(x) - x||_inf
};

// Threshold on sigma_min(Jr - I) below which a fixed point is treated as a
// member of a continuum rather than an isolated point.
inline constexpr double kIsolationThreshold = 1e-8;

namespace detail {

inline std::pair<Stability, std::optional<SemiKind>> classify_eigenvalues(
    const std::vector<Complex>& eig, double band) {
    bool any_on = false, any_in = false, any_out = false;
    for (const Complex& l : eig) {
        const double a = std::abs(l);
        if (std::abs(a - 1.0) <= band)
            any_on = true;
        else if (a < 1.0)
            any_in = true;
        else
            any_out = true;
    }
    if (any_on) {
        std::optional<SemiKind> semi;
        if (!any_out && any_in) semi = SemiKind::semi_attracting;
        if (!any_in && any_out) semi = SemiKind::semi_repelling;
        return {Stability::non_hyperbolic, semi};
    }
    if (any_in && !any_out) return {Stability::attracting, std::nullopt};
    if (any_out && !any_in) return {Stability::repelling, std::nullopt};
    return {Stability::saddle, std::nullopt};
}

inline double full_residual(const CubicMatrix& P, std::span<const double> x) {
    const std::vector<double> y = apply_raw(P, x);
    return linf_distance(y, x);
}

// Newton iteration for reduced fixed points; returns the reduced coordinates
// on success.
inline std::optional<Eigen::VectorXd> newton_reduced(const CubicMatrix& P, Eigen::VectorXd u,
                                                     double tol) {
    const int d = P.dim() - 1;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd R = reduced_apply(P, u) - u;
    for (int it = 0; it < 80; ++it) {
        if (R.lpNorm<Eigen::Infinity>() < tol) return u;
        const Eigen::MatrixXd A = reduced_jacobian(P, u) - I;
        // Minimum-norm least-squares step; tolerates the singular Jacobians
        // that arise on fixed-point continua.
        const Eigen::VectorXd delta =
            A.completeOrthogonalDecomposition().solve(-R);
        if (!delta.allFinite()) return std::nullopt;
        double lambda = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt, lambda *= 0.5) {
            const Eigen::VectorXd cand = u + lambda * delta;
            const Eigen::VectorXd Rc = reduced_apply(P, cand) - cand;
            if (!Rc.allFinite()) continue;
            if (Rc.lpNorm<Eigen::Infinity>() < R.lpNorm<Eigen::Infinity>()) {
                u = cand;
                R = Rc;
                accepted = true;
                break;
            }
        }
        if (!accepted) return std::nullopt;
    }
    return (R.lpNorm<Eigen::Infinity>() < tol) ? std::optional<Eigen::VectorXd>(u) : std::nullopt;
}

// All barycentric compositions (r_1,...,r_m)/g, enumerated in lexicographic
// order; seeds the Newton runs.
inline void barycentric_grid(int m, int g, std::vector<std::vector<double>>& out) {
    std::vector<int> r(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == m - 1) {
            r[static_cast<std::size_t>(pos)] = left;
            std::vector<double> x(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
                x[static_cast<std::size_t>(i)] =
                    static_cast<double>(r[static_cast<std::size_t>(i)]) / static_cast<double>(g);
            out.push_back(std::move(x));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            r[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, g);
}

} // namespace detail

// Classify a point already known (or claimed) to be fixed. tol bounds both
// the accepted residual ||V(x)-x||_inf and the unit-circle band used for
// hyperbolicity.
inline FixedPointRecord classify_fixed_point(const CubicMatrix& P, const SimplexPoint& x,
                                             double tol = 1e-9) {
    if (!(tol >= 0.0)) throw std::invalid_argument("classify_fixed_point: tol must be nonnegative");
    if (P.dim() != x.dim())
        throw std::invalid_argument("classify_fixed_point: dimension mismatch");
    if (!P.is_symmetric())
        throw std::invalid_argument("classify_fixed_point: matrix must be symmetrized first");
    const double res = detail::full_residual(P, x.coords());
    if (res >= std::max(tol, 1e-15))
        throw std::invalid_argument("classify_fixed_point: point is not fixed (residual " +
                                    std::to_string(res) + ")");

    const Eigen::VectorXd u = drop_last(x.coords());
    const Eigen::MatrixXd Jr = reduced_jacobian(P, u);
    FixedPointRecord rec{x, eigenvalues_small(Jr), Stability::non_hyperbolic, std::nullopt, true,
                         res};
    auto [cls, semi] = detail::classify_eigenvalues(rec.eigenvalues, tol);
    rec.classification = cls;
    rec.annotation = semi;
    const Eigen::MatrixXd A = Jr - Eigen::MatrixXd::Identity(Jr.rows(), Jr.cols());
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    rec.isolated = svd.singularValues().minCoeff() >= kIsolationThreshold;
    return rec;
}

// Newton search from a barycentric seed grid (resolution seeds_per_face)
// plus all vertices. tol is the Newton residual target; unit_band is the
// half-width of the unit-circle band used in classification. Results are
// sorted by coordinates for a deterministic order. An empty result means no
// seed converged, which for a simplex-preserving operator indicates the
// seeds or tolerances were too coarse.
inline std::vector<FixedPointRecord> find_fixed_points(const CubicMatrix& P,
                                                       int seeds_per_face = 12,
                                                       double tol = 1e-12,
                                                       double unit_band = 1e-9) {
    if (seeds_per_face < 1)
        throw std::invalid_argument("find_fixed_points: seeds_per_face must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("find_fixed_points: tol must be positive");
    if (!(unit_band >= 0.0))
        throw std::invalid_argument("find_fixed_points: unit_band must be nonnegative");
    if (!P.is_symmetric())
        throw std::invalid_argument("find_fixed_points: matrix must be symmetrized first");

    const int m = P.dim();
    std::vector<std::vector<double>> seeds;
    detail::barycentric_grid(m, seeds_per_face, seeds);

    // Tighter Newton target so the recovered last coordinate keeps the full
    // residual under tol.
    const double newton_tol = tol / (2.0 * static_cast<double>(m));

    std::vector<Eigen::VectorXd> accepted;
    for (const auto& seed : seeds) {
        auto root = detail::newton_reduced(P, drop_last(seed), newton_tol);
        if (!root) continue;
        const std::vector<double> x = lift_reduced(*root);
        bool on_simplex = true;
        for (double v : x) on_simplex = on_simplex && v >= -kSimplexEps;
        if (!on_simplex) continue;
        if (detail::full_residual(P, x) >= tol) continue;
        bool duplicate = false;
        for (const auto& a : accepted)
            if ((a - *root).lpNorm<Eigen::Infinity>() < 10.0 * tol) {
                duplicate = true;
                break;
            }
        if (!duplicate) accepted.push_back(*root);
    }

    std::vector<FixedPointRecord> records;
    records.reserve(accepted.size());
    for (const auto& u : accepted) {
        std::vector<double> x = lift_reduced(u);
        // Snap Newton dust onto the boundary: a converged root that is within
        // unit_band of a face almost surely lies on it, and classifying at the
        // exact boundary point keeps repeated eigenvalues from splitting by
        // sqrt(dust) under the perturbation.
        for (double& v : x) {
            if (std::abs(v) <= unit_band) v = 0.0;
            else if (std::abs(v - 1.0) <= unit_band) v = 1.0;
        }
        snap_to_simplex(x);
        SimplexPoint pt(std::move(x));
        FixedPointRecord rec = classify_fixed_point(P, pt, unit_band);
        rec.residual = detail::full_residual(P, pt.coords());
        records.push_back(std::move(rec));
    }

    std::sort(records.begin(), records.end(),
              [](const FixedPointRecord& a, const FixedPointRecord& b) {
                  return std::lexicographical_compare(a.point.coords().begin(),
                                                      a.point.coords().end(),
                                                      b.point.coords().begin(),
                                                      b.point.coords().end());
              });
    return records;
}

} // namespace simplexdyn
