#pragma once

// Points of the standard simplex S^{m-1} = { x >= 0, sum x_i = 1 } and
// related geometric helpers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplexdyn {

// Construction slack: coordinates may undershoot zero and the sum may drift
// from one by at most this much before a point is rejected.
inline constexpr double kSimplexEps = 1e-9;

class SimplexPoint {
public:
    explicit SimplexPoint(std::vector<double> coords, double eps = kSimplexEps)
        : c_(std::move(coords)) {
        if (auto err = check(c_, eps)) throw std::invalid_argument("SimplexPoint: " + *err);
    }

    static std::optional<std::string> check(std::span<const double> c, double eps) {
        if (c.size() < 2) return "needs at least 2 coordinates";
        double sum = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!std::isfinite(c[i]))
                return "coordinate " + std::to_string(i) + " is not finite";
            if (c[i] < -eps)
                return "coordinate " + std::to_string(i) + " = " + std::to_string(c[i]) +
                       " is below -eps";
            sum += c[i];
        }
        if (std::abs(sum - 1.0) > eps)
            return "coordinate sum " + std::to_string(sum) + " deviates from 1 beyond eps";
        return std::nullopt;
    }

    int dim() const noexcept { return static_cast<int>(c_.size()); }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    std::span<const double> coords() const noexcept { return c_; }
    const std::vector<double>& vec() const noexcept { return c_; }

    bool operator==(const SimplexPoint& other) const noexcept { return c_ == other.c_; }

private:
    std::vector<double> c_;
};

// Clamp negative rounding dust and rescale so the coordinates sum to one
// bit-exactly (up to one final rounding).  Quadratic maps square the
// coordinate sum, so an iteration loop that never rescales doubles an
// ulp-sized sum deviation every step; callers that iterate must snap each
// image after validating it.  The caller is responsible for checking the
// point is within eps of the simplex first.
inline void snap_to_simplex(std::vector<double>& x) {
    double sum = 0.0;
    for (double& v : x) {
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (sum > 0.0 && sum != 1.0)
        for (double& v : x) v /= sum;
}

inline SimplexPoint vertex(int m, int i) {
    if (m < 2 || i < 0 || i >= m) throw std::invalid_argument("vertex: bad index");
    std::vector<double> c(static_cast<std::size_t>(m), 0.0);
    c[static_cast<std::size_t>(i)] = 1.0;
    return SimplexPoint(std::move(c), 0.0);
}

inline double linf_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Euclidean projection onto the simplex (sort and threshold).
inline std::vector<double> project_to_simplex(std::span<const double> v) {
    const std::size_t m = v.size();
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    std::size_t rho = 0;
    double partial = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        partial += u[i];
        const double t = (partial - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            rho = i + 1;
            css = partial;
        }
    }
    theta = (css - 1.0) / static_cast<double>(rho);
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = std::max(v[i] - theta, 0.0);
    return out;
}

} // namespace simplexdyn
