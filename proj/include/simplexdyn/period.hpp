#pragma once

// Period detection on the tail of a sampled orbit: the smallest lag p such
// that the last 2*max_period samples satisfy |x_{n+p} - x_n| < tol for every
// available pair. Returns nullopt when no lag qualifies (aperiodic at this
// resolution).

#include "simplexdyn/qop.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

namespace simplexdyn {

namespace detail {

// dist(a, b) compares window entries a and b (indices into the tail).
template <typename Dist>
std::optional<int> detect_period_window(std::size_t window, int max_period, double tol,
                                        Dist&& dist) {
    for (int p = 1; p <= max_period; ++p) {
        bool ok = true;
        for (std::size_t n = 0; n + static_cast<std::size_t>(p) < window && ok; ++n)
            ok = dist(n, n + static_cast<std::size_t>(p)) < tol;
        if (ok) return p;
    }
    return std::nullopt;
}

} // namespace detail

inline std::optional<int> detect_period(std::span<const double> samples, int max_period,
                                        double tol) {
    if (max_period < 1) throw std::invalid_argument("detect_period: max_period must be >= 1");
    if (!(tol >= 0.0)) throw std::invalid_argument("detect_period: tol must be nonnegative");
    const std::size_t window = 2 * static_cast<std::size_t>(max_period);
    if (samples.size() < window)
        throw std::invalid_argument("detect_period: need at least 2*max_period samples");
    const std::size_t off = samples.size() - window;
    return detail::detect_period_window(window, max_period, tol, [&](std::size_t a, std::size_t b) {
        return std::abs(samples[off + a] - samples[off + b]);
    });
}

// Trajectory variant; the extra length requirement leaves room for a
// transient before the scanned tail.
inline std::optional<int> detect_period(const Trajectory& traj, int max_period, double tol) {
    if (max_period < 1) throw std::invalid_argument("detect_period: max_period must be >= 1");
    if (!(tol >= 0.0)) throw std::invalid_argument("detect_period: tol must be nonnegative");
    const std::size_t window = 2 * static_cast<std::size_t>(max_period);
    if (traj.points.size() < 2 * window)
        throw std::invalid_argument("detect_period: trajectory shorter than 4*max_period");
    const std::size_t off = traj.points.size() - window;
    return detail::detect_period_window(window, max_period, tol, [&](std::size_t a, std::size_t b) {
        return linf_distance(traj.points[off + a].coords(), traj.points[off + b].coords());
    });
}

} // namespace simplexdyn
