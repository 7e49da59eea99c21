#pragma once

// Built-in operator families.
//
//   v1(a,b,c)   m=2, coefficients a = P(1,1,1), b = P(1,2,1), c = P(2,2,1);
//               the first coordinate follows the interval map
//               f(x) = (a-2b+c) x^2 + 2(b-c) x + c.
//   va(b)       v1(1,b,1) with b in [-1,0); the second coordinate follows
//               the logistic map with mu = 2(1-b), so mu runs over (2,4].
//   logistic(mu) same operator parameterized by mu directly.
//   v2(a)       m=3, a in [0,2]:
//                 x' = x^2 + y^2 + z^2 - a x y - a x z + 2 y z
//                 y' = (2+a) x y
//                 z' = (2+a) x z
//   v3(a)       m=3, a in (0,3):
//                 x' = x^2 + y^2 + z^2 - x y - x z - y z
//                 y' = 3 x y + a y z
//                 z' = 3 x z + (3-a) y z
//
// Alongside the cubic matrices this header carries the exact reduced forms
// used throughout the analysis: the (x,t) reduction of v2 with t = y + z,
// its logistic conjugacies, and the planar reduction W of v3 in (y,z).

#include "simplexdyn/cubic_matrix.hpp"
#include "simplexdyn/map1d.hpp"
#include "simplexdyn/simplex.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace simplexdyn::models {

inline CubicMatrix make_v1(double a, double b, double c) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw std::invalid_argument("v1: parameters must be finite");
    if (a < 0.0 || a > 1.0 || c < 0.0 || c > 1.0)
        throw std::invalid_argument("v1: a and c must lie in [0,1]");
    const double lo = -std::sqrt(a * c);
    const double hi = 1.0 + std::sqrt((1.0 - a) * (1.0 - c));
    if (b < lo || b > hi)
        throw std::invalid_argument(
            "v1: b must lie in [-sqrt(ac), 1+sqrt((1-a)(1-c))] = [" + std::to_string(lo) + ", " +
            std::to_string(hi) + "]");
    CubicMatrix P(2);
    P(0, 0, 0) = a;
    P(0, 0, 1) = 1.0 - a;
    P(0, 1, 0) = b;
    P(1, 0, 0) = b;
    P(0, 1, 1) = 1.0 - b;
    P(1, 0, 1) = 1.0 - b;
    P(1, 1, 0) = c;
    P(1, 1, 1) = 1.0 - c;
    return P;
}

inline CubicMatrix make_va(double b) {
    if (!std::isfinite(b) || b < -1.0 || b >= 0.0)
        throw std::invalid_argument("va: b must lie in [-1, 0)");
    return make_v1(1.0, b, 1.0);
}

inline double logistic_mu_from_b(double b) noexcept { return 2.0 * (1.0 - b); }
inline double b_from_logistic_mu(double mu) noexcept { return 1.0 - mu / 2.0; }

inline CubicMatrix make_logistic(double mu) {
    if (!std::isfinite(mu) || mu <= 2.0 || mu > 4.0)
        throw std::invalid_argument("logistic: mu must lie in (2, 4]");
    return make_va(b_from_logistic_mu(mu));
}

inline CubicMatrix make_v2(double a) {
    if (!std::isfinite(a) || a < 0.0 || a > 2.0)
        throw std::invalid_argument("v2: a must lie in [0, 2]");
    CubicMatrix P(3);
    P(0, 0, 0) = 1.0;
    P(1, 1, 0) = 1.0;
    P(2, 2, 0) = 1.0;
    P(0, 1, 0) = P(1, 0, 0) = -a / 2.0;
    P(0, 2, 0) = P(2, 0, 0) = -a / 2.0;
    P(1, 2, 0) = P(2, 1, 0) = 1.0;
    P(0, 1, 1) = P(1, 0, 1) = (2.0 + a) / 2.0;
    P(0, 2, 2) = P(2, 0, 2) = (2.0 + a) / 2.0;
    return P;
}

inline CubicMatrix make_v3(double a) {
    if (!std::isfinite(a) || a <= 0.0 || a >= 3.0)
        throw std::invalid_argument("v3: a must lie strictly inside (0, 3)");
    CubicMatrix P(3);
    P(0, 0, 0) = 1.0;
    P(1, 1, 0) = 1.0;
    P(2, 2, 0) = 1.0;
    P(0, 1, 0) = P(1, 0, 0) = -0.5;
    P(0, 2, 0) = P(2, 0, 0) = -0.5;
    P(1, 2, 0) = P(2, 1, 0) = -0.5;
    P(0, 1, 1) = P(1, 0, 1) = 1.5;
    P(0, 2, 2) = P(2, 0, 2) = 1.5;
    P(1, 2, 1) = P(2, 1, 1) = a / 2.0;
    P(1, 2, 2) = P(2, 1, 2) = (3.0 - a) / 2.0;
    return P;
}

// Interval reduction of v1: dynamics of the first coordinate.
inline QuadMap1D reduce_v1(double a, double b, double c) {
    return {a - 2.0 * b + c, 2.0 * (b - c), c};
}

// The second coordinate of va follows the logistic map with mu = 2(1-b).
inline QuadMap1D reduce_va(double b) { return logistic_map(logistic_mu_from_b(b)); }

// The t = y + z coordinate of v2 follows the logistic map with mu = 2 + a.
inline QuadMap1D reduce_v2_interval(double a) { return logistic_map(2.0 + a); }

// ---- v2 exact reduction: (x, t) with t = y + z ----

struct XT {
    double x = 0.0, t = 0.0;
};

inline XT reduce_v2(const SimplexPoint& p) {
    if (p.dim() != 3) throw std::invalid_argument("reduce_v2: point must be 3-dimensional");
    return {p[0], p[1] + p[2]};
}

inline XT step_v2_reduced(double a, XT s) noexcept {
    return {s.x * s.x + s.t * s.t - a * s.x * s.t, (2.0 + a) * s.x * s.t};
}

// ---- v2 fiber restriction: on the invariant ray y = omega z the z
// coordinate follows z' = (2+a)(1 - (1+omega) z) z, which the change of
// variable zeta = (1+omega) z conjugates to the logistic map mu = 2+a. ----

inline double restrict_v2_fiber(double omega, double a, double z) {
    if (!std::isfinite(omega) || omega <= 0.0)
        throw std::invalid_argument("restrict_v2_fiber: omega must be positive and finite");
    if (!std::isfinite(z) || z < 0.0 || z > 1.0 / (1.0 + omega))
        throw std::invalid_argument("restrict_v2_fiber: z must lie in [0, 1/(1+omega)]");
    return (2.0 + a) * (1.0 - (1.0 + omega) * z) * z;
}

inline double fiber_to_unit(double omega, double z) noexcept { return (1.0 + omega) * z; }

// ---- v3 exact reduction W in (y, z), eliminating x = 1 - y - z ----
//
//   y' = y (3 - 3y + (a-3) z)
//   z' = z (3 - a y - 3 z)

struct YZ {
    double y = 0.0, z = 0.0;
};

inline YZ reduce_v3(const SimplexPoint& p) {
    if (p.dim() != 3) throw std::invalid_argument("reduce_v3: point must be 3-dimensional");
    return {p[1], p[2]};
}

inline YZ step_v3_reduced(double a, YZ s) noexcept {
    return {s.y * (3.0 - 3.0 * s.y + (a - 3.0) * s.z), s.z * (3.0 - a * s.y - 3.0 * s.z)};
}

inline Eigen::Matrix2d jacobian_v3_reduced(double a, YZ s) noexcept {
    Eigen::Matrix2d J;
    J << 3.0 - 6.0 * s.y + (a - 3.0) * s.z, (a - 3.0) * s.y,
        -a * s.z, 3.0 - a * s.y - 6.0 * s.z;
    return J;
}

// The four fixed points of v3 on the simplex, in closed form:
//   s1 = (1, 0, 0)
//   s2 = (1/3, 0, 2/3)
//   s3 = (1/3, 2/3, 0)
//   s4 = ((a^2-3a+3)/D, 2a/D, 2(3-a)/D),  D = a^2 - 3a + 9.
inline std::array<SimplexPoint, 4> v3_fixed_points(double a) {
    if (!std::isfinite(a) || a <= 0.0 || a >= 3.0)
        throw std::invalid_argument("v3_fixed_points: a must lie strictly inside (0, 3)");
    const double D = a * a - 3.0 * a + 9.0;
    return {SimplexPoint({1.0, 0.0, 0.0}, 0.0),
            SimplexPoint({1.0 / 3.0, 0.0, 2.0 / 3.0}),
            SimplexPoint({1.0 / 3.0, 2.0 / 3.0, 0.0}),
            SimplexPoint({(a * a - 3.0 * a + 3.0) / D, 2.0 * a / D, 2.0 * (3.0 - a) / D})};
}

// Slope bound of the invariant ray of v3: trajectories in the strict sectors
// have z/y monotonically approaching (3-a)/a.
inline double v3_ratio_bound(double a) {
    if (!std::isfinite(a) || a <= 0.0 || a >= 3.0)
        throw std::invalid_argument("v3_ratio_bound: a must lie strictly inside (0, 3)");
    return (3.0 - a) / a;
}

// ---- CLI-facing model description ----

enum class ModelKind { logistic, v1, va, v2, v3 };

struct ModelSpec {
    ModelKind kind = ModelKind::logistic;
    double mu = 0.0, a = 0.0, b = 0.0, c = 0.0;

    static ModelSpec logistic(double mu) {
        make_logistic(mu);  // validate
        ModelSpec s;
        s.kind = ModelKind::logistic;
        s.mu = mu;
        return s;
    }
    static ModelSpec v1(double a, double b, double c) {
        make_v1(a, b, c);
        ModelSpec s;
        s.kind = ModelKind::v1;
        s.a = a;
        s.b = b;
        s.c = c;
        return s;
    }
    static ModelSpec va(double b) {
        make_va(b);
        ModelSpec s;
        s.kind = ModelKind::va;
        s.b = b;
        return s;
    }
    static ModelSpec v2(double a) {
        make_v2(a);
        ModelSpec s;
        s.kind = ModelKind::v2;
        s.a = a;
        return s;
    }
    static ModelSpec v3(double a) {
        make_v3(a);
        ModelSpec s;
        s.kind = ModelKind::v3;
        s.a = a;
        return s;
    }

    CubicMatrix to_cubic() const {
        switch (kind) {
            case ModelKind::logistic: return make_logistic(mu);
            case ModelKind::v1: return make_v1(a, b, c);
            case ModelKind::va: return make_va(b);
            case ModelKind::v2: return make_v2(a);
            case ModelKind::v3: return make_v3(a);
        }
        throw std::logic_error("ModelSpec: unknown kind");
    }

    // Interval reduction when the family has one (v3 reduces to a plane, not
    // an interval).
    std::optional<QuadMap1D> interval_reduction() const {
        switch (kind) {
            case ModelKind::logistic: return logistic_map(mu);
            case ModelKind::v1: return reduce_v1(a, b, c);
            case ModelKind::va: return reduce_va(b);
            case ModelKind::v2: return reduce_v2_interval(a);
            case ModelKind::v3: return std::nullopt;
        }
        return std::nullopt;
    }

    std::string name() const {
        switch (kind) {
            case ModelKind::logistic: return "logistic(mu=" + std::to_string(mu) + ")";
            case ModelKind::v1:
                return "v1(a=" + std::to_string(a) + ",b=" + std::to_string(b) +
                       ",c=" + std::to_string(c) + ")";
            case ModelKind::va: return "va(b=" + std::to_string(b) + ")";
            case ModelKind::v2: return "v2(a=" + std::to_string(a) + ")";
            case ModelKind::v3: return "v3(a=" + std::to_string(a) + ")";
        }
        return "unknown";
    }
};

} // namespace simplexdyn::models
