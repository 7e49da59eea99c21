#pragma once

// Evaluation of the quadratic operator V(x)_k = sum_{i,j} P(i,j,k) x_i x_j,
// its analytic Jacobian, the reduced (sum-eliminated) forms used by the
// fixed-point and Lyapunov machinery, and checked trajectory iteration.

#include "simplexdyn/cubic_matrix.hpp"
#include "simplexdyn/simplex.hpp"

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace simplexdyn {

inline std::vector<double> apply_raw(const CubicMatrix& P, std::span<const double> x) {
    const int m = P.dim();
    if (static_cast<int>(x.size()) != m)
        throw std::invalid_argument("apply_raw: dimension mismatch");
    std::vector<double> out(static_cast<std::size_t>(m), 0.0);
    for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            double row = 0.0;
            for (int j = 0; j < m; ++j) row += P(i, j, k) * x[static_cast<std::size_t>(j)];
            s += x[static_cast<std::size_t>(i)] * row;
        }
        out[static_cast<std::size_t>(k)] = s;
    }
    return out;
}

inline std::vector<double> apply(const CubicMatrix& P, const SimplexPoint& x) {
    return apply_raw(P, x.coords());
}

// J(k,i) = dV_k/dx_i = 2 sum_j P(i,j,k) x_j; requires a symmetrized matrix.
inline Eigen::MatrixXd jacobian(const CubicMatrix& P, std::span<const double> x) {
    const int m = P.dim();
    if (static_cast<int>(x.size()) != m)
        throw std::invalid_argument("jacobian: dimension mismatch");
    Eigen::MatrixXd J(m, m);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i) {
            double s = 0.0;
            for (int j = 0; j < m; ++j) s += P(i, j, k) * x[static_cast<std::size_t>(j)];
            J(k, i) = 2.0 * s;
        }
    return J;
}

inline Eigen::MatrixXd jacobian(const CubicMatrix& P, const SimplexPoint& x) {
    return jacobian(P, x.coords());
}

// Reduced coordinates keep the first m-1 components; the last is recovered
// as x_m = 1 - sum(u). On the invariant affine hyperplane {sum x = 1} this
// turns V into a self-map of R^{m-1}.
inline std::vector<double> lift_reduced(const Eigen::VectorXd& u) {
    const int d = static_cast<int>(u.size());
    std::vector<double> x(static_cast<std::size_t>(d) + 1);
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        x[static_cast<std::size_t>(i)] = u[i];
        s += u[i];
    }
    x[static_cast<std::size_t>(d)] = 1.0 - s;
    return x;
}

inline Eigen::VectorXd drop_last(std::span<const double> x) {
    Eigen::VectorXd u(static_cast<int>(x.size()) - 1);
    for (int i = 0; i + 1 < static_cast<int>(x.size()); ++i) u[i] = x[static_cast<std::size_t>(i)];
    return u;
}

inline Eigen::VectorXd reduced_apply(const CubicMatrix& P, const Eigen::VectorXd& u) {
    if (static_cast<int>(u.size()) != P.dim() - 1)
        throw std::invalid_argument("reduced_apply: dimension mismatch");
    const std::vector<double> x = lift_reduced(u);
    const std::vector<double> y = apply_raw(P, x);
    return drop_last(y);
}

// Chain rule through x_m = 1 - sum(u): Jr(k,i) = J(k,i) - J(k,m-1).
inline Eigen::MatrixXd reduced_jacobian(const CubicMatrix& P, const Eigen::VectorXd& u) {
    if (static_cast<int>(u.size()) != P.dim() - 1)
        throw std::invalid_argument("reduced_jacobian: dimension mismatch");
    const std::vector<double> x = lift_reduced(u);
    const Eigen::MatrixXd J = jacobian(P, x);
    const int d = P.dim() - 1;
    Eigen::MatrixXd Jr(d, d);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) Jr(k, i) = J(k, i) - J(k, d);
    return Jr;
}

// Thrown when an iterate leaves the simplex beyond the allowed slack. The
// step index counts applications of the operator, so step 1 is the first
// image of the initial point.
class domain_escape_error : public std::runtime_error {
public:
    domain_escape_error(std::size_t step, std::string detail)
        : std::runtime_error("domain escape at step " + std::to_string(step) + ": " + detail),
          step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

struct Trajectory {
    std::string operator_id;
    std::vector<SimplexPoint> points;  // x_0 .. x_n

    std::size_t length() const noexcept { return points.size(); }
};

inline Trajectory iterate(const CubicMatrix& P, const SimplexPoint& x0, std::size_t steps,
                          double eps = kSimplexEps, std::string operator_id = {}) {
    if (P.dim() != x0.dim()) throw std::invalid_argument("iterate: dimension mismatch");
    Trajectory traj;
    traj.operator_id = std::move(operator_id);
    traj.points.reserve(steps + 1);
    traj.points.push_back(x0);
    std::vector<double> cur = x0.vec();
    for (std::size_t n = 1; n <= steps; ++n) {
        std::vector<double> next = apply_raw(P, cur);
        if (auto err = SimplexPoint::check(next, eps))
            throw domain_escape_error(n, *err);
        snap_to_simplex(next);  // escapes are judged on the raw image above
        traj.points.emplace_back(next, eps);
        cur = std::move(next);
    }
    return traj;
}

} // namespace simplexdyn
