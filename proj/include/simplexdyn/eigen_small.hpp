#pragma once

// Eigenvalues of small dense real matrices. Dimensions 1..3 use closed
// forms on the characteristic polynomial (stable quadratic formula, trig /
// Cardano cubic with a complex Newton polish); larger matrices fall back to
// Eigen's iterative solver. Results are sorted by (real, imag) so equal
// spectra compare equal.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace simplexdyn {

using Complex = std::complex<double>;

// Roots of x^2 + b x + c, citardauq-style to avoid cancellation.
inline std::pair<Complex, Complex> quadratic_roots_monic(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        const double q = -0.5 * (b + std::copysign(s, b));
        const double r1 = q;
        const double r2 = (q != 0.0) ? c / q : 0.0;
        return {Complex(std::min(r1, r2), 0.0), Complex(std::max(r1, r2), 0.0)};
    }
    const double re = -0.5 * b;
    const double im = 0.5 * std::sqrt(-disc);
    return {Complex(re, -im), Complex(re, im)};
}

namespace detail {

inline void polish_roots(std::vector<Complex>& roots, double p, double q, double r) {
    for (auto& x : roots)
        for (int it = 0; it < 2; ++it) {
            const Complex f = ((x + p) * x + q) * x + r;
            const Complex df = (3.0 * x + 2.0 * p) * x + q;
            if (std::abs(df) < 1e-300) break;
            const Complex step = f / df;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            x -= step;
        }
}

} // namespace detail

// Roots of x^3 + p x^2 + q x + r.
inline std::vector<Complex> cubic_roots_monic(double p, double q, double r) {
    // Depress with x = t - p/3: t^3 + A t + B.
    const double A = q - p * p / 3.0;
    const double B = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;
    const double shift = -p / 3.0;
    std::vector<Complex> roots;
    const double disc = -4.0 * A * A * A - 27.0 * B * B;
    if (A == 0.0 && B == 0.0) {
        roots.assign(3, Complex(shift, 0.0));
    } else if (disc >= 0.0) {
        // Three real roots; disc >= 0 forces A < 0 here.
        const double mag = 2.0 * std::sqrt(-A / 3.0);
        const double arg =
            std::clamp(3.0 * B / (A * mag), -1.0, 1.0);
        const double phi = std::acos(arg);
        for (int k = 0; k < 3; ++k) {
            const double t = mag * std::cos(phi / 3.0 -
                                            2.0 * std::numbers::pi * static_cast<double>(k) / 3.0);
            roots.emplace_back(t + shift, 0.0);
        }
    } else {
        // One real root via Cardano, using the non-cancelling cube root.
        const double s = std::sqrt(B * B / 4.0 + A * A * A / 27.0);
        const double arg = (B >= 0.0) ? (-B / 2.0 - s) : (-B / 2.0 + s);
        const double u = std::cbrt(arg);
        const double t1 = u - A / (3.0 * u);
        roots.emplace_back(t1 + shift, 0.0);
        // Remaining factor t^2 + t1 t + (t1^2 + A) has a conjugate pair.
        const double re = -t1 / 2.0;
        const double im = 0.5 * std::sqrt(std::max(3.0 * t1 * t1 + 4.0 * A, 0.0));
        roots.emplace_back(re + shift, -im);
        roots.emplace_back(re + shift, im);
    }
    detail::polish_roots(roots, p, q, r);
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

inline std::vector<Complex> eigenvalues_small(const Eigen::MatrixXd& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("eigenvalues_small: matrix not square");
    if (!M.allFinite()) throw std::invalid_argument("eigenvalues_small: non-finite entry");
    const int n = static_cast<int>(M.rows());
    if (n == 0) return {};
    if (n == 1) return {Complex(M(0, 0), 0.0)};
    if (n == 2) {
        const auto [r1, r2] = quadratic_roots_monic(-M.trace(), M.determinant());
        return {r1, r2};
    }
    if (n == 3) {
        const double c2 = M.trace();
        const double c1 = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0) +
                          M(0, 0) * M(2, 2) - M(0, 2) * M(2, 0) +
                          M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1);
        const double c0 = M.determinant();
        return cubic_roots_monic(-c2, c1, -c0);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(M, false);
    std::vector<Complex> roots(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

} // namespace simplexdyn
