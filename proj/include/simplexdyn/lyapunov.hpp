#pragma once

// Lyapunov exponent estimates. The 1D form averages ln|g'(x_n)| along the
// orbit; the operator form runs the standard tangent-vector renormalization
// on the reduced (sum-eliminated) Jacobian, whose growth rate is the top
// exponent of the dynamics on the simplex. Both report a batch-means
// standard error so tests can bound the sampling noise.

#include "simplexdyn/map1d.hpp"
#include "simplexdyn/qop.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace simplexdyn {

struct LyapunovEstimate {
    double value = 0.0;
    long iterations = 0;           // samples entering the average
    long transient_discarded = 0;
    double standard_error = 0.0;   // batch means, 32 batches
    long zero_derivative_skips = 0;
};

namespace detail {

inline double batch_means_stderr(const std::vector<double>& samples) {
    const long n = static_cast<long>(samples.size());
    const int nb = (n >= 3200) ? 32 : std::max(1, static_cast<int>(n / 100));
    if (nb < 2 || n < 2 * nb) return 0.0;
    const long len = n / nb;
    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(nb));
    for (int b = 0; b < nb; ++b) {
        double s = 0.0;
        for (long i = b * len; i < (b + 1) * len; ++i) s += samples[static_cast<std::size_t>(i)];
        means.push_back(s / static_cast<double>(len));
    }
    double mean = 0.0;
    for (double v : means) mean += v;
    mean /= static_cast<double>(nb);
    double var = 0.0;
    for (double v : means) var += (v - mean) * (v - mean);
    var /= static_cast<double>(nb - 1);
    return std::sqrt(var / static_cast<double>(nb));
}

} // namespace detail

inline LyapunovEstimate lyapunov_exponent(const QuadMap1D& g, double x0, long iterations = 100000,
                                          long transient = 1000) {
    if (iterations < 1) throw std::invalid_argument("lyapunov_exponent: iterations must be >= 1");
    if (transient < 0) throw std::invalid_argument("lyapunov_exponent: transient must be >= 0");
    if (!std::isfinite(x0)) throw std::invalid_argument("lyapunov_exponent: x0 must be finite");

    double x = x0;
    for (long i = 0; i < transient; ++i) x = g(x);
    if (!std::isfinite(x))
        throw std::invalid_argument("lyapunov_exponent: orbit diverged during transient");

    LyapunovEstimate est;
    est.transient_discarded = transient;
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(iterations));
    for (long i = 0; i < iterations; ++i) {
        const double d = std::abs(g.derivative(x));
        if (d == 0.0) {
            ++est.zero_derivative_skips;
        } else {
            logs.push_back(std::log(d));
        }
        x = g(x);
        if (!std::isfinite(x))
            throw std::invalid_argument("lyapunov_exponent: orbit diverged");
    }
    if (logs.empty()) throw std::invalid_argument("lyapunov_exponent: all derivatives were zero");
    double sum = 0.0;
    for (double v : logs) sum += v;
    est.iterations = static_cast<long>(logs.size());
    est.value = sum / static_cast<double>(est.iterations);
    est.standard_error = detail::batch_means_stderr(logs);
    return est;
}

inline LyapunovEstimate lyapunov_exponent(const CubicMatrix& P, const SimplexPoint& x0,
                                          long iterations = 100000, long transient = 1000) {
    if (iterations < 1) throw std::invalid_argument("lyapunov_exponent: iterations must be >= 1");
    if (transient < 0) throw std::invalid_argument("lyapunov_exponent: transient must be >= 0");
    if (P.dim() != x0.dim()) throw std::invalid_argument("lyapunov_exponent: dimension mismatch");

    const int d = P.dim() - 1;
    Eigen::VectorXd u = drop_last(x0.coords());
    for (long i = 0; i < transient; ++i) u = reduced_apply(P, u);
    if (!u.allFinite())
        throw std::invalid_argument("lyapunov_exponent: orbit diverged during transient");

    LyapunovEstimate est;
    est.transient_discarded = transient;
    Eigen::VectorXd v = Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(iterations));
    for (long i = 0; i < iterations; ++i) {
        const Eigen::VectorXd w = reduced_jacobian(P, u) * v;
        const double norm = w.norm();
        if (norm == 0.0) {
            // Tangent vector annihilated; restart it and skip the sample.
            ++est.zero_derivative_skips;
            v = Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
        } else {
            logs.push_back(std::log(norm));
            v = w / norm;
        }
        u = reduced_apply(P, u);
        if (!u.allFinite())
            throw std::invalid_argument("lyapunov_exponent: orbit diverged");
    }
    if (logs.empty())
        throw std::invalid_argument("lyapunov_exponent: tangent vector always annihilated");
    double sum = 0.0;
    for (double v2 : logs) sum += v2;
    est.iterations = static_cast<long>(logs.size());
    est.value = sum / static_cast<double>(est.iterations);
    est.standard_error = detail::batch_means_stderr(logs);
    return est;
}

} // namespace simplexdyn
