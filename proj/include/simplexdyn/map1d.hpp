#pragma once

// One-dimensional quadratic maps g(x) = q2 x^2 + q1 x + q0. The logistic
// family and the interval reductions of the 2-coordinate operators all land
// here.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace simplexdyn {

struct QuadMap1D {
    double q2 = 0.0, q1 = 0.0, q0 = 0.0;

    double operator()(double x) const noexcept { return (q2 * x + q1) * x + q0; }
    double derivative(double x) const noexcept { return 2.0 * q2 * x + q1; }
};

inline QuadMap1D logistic_map(double mu) {
    if (!std::isfinite(mu)) throw std::invalid_argument("logistic_map: mu must be finite");
    return {-mu, mu, 0.0};
}

// x_0 .. x_n (n+1 values).
inline std::vector<double> iterate_map(const QuadMap1D& g, double x0, std::size_t n) {
    if (!std::isfinite(x0)) throw std::invalid_argument("iterate_map: x0 must be finite");
    std::vector<double> out;
    out.reserve(n + 1);
    out.push_back(x0);
    double x = x0;
    for (std::size_t i = 0; i < n; ++i) {
        x = g(x);
        out.push_back(x);
    }
    return out;
}

} // namespace simplexdyn
