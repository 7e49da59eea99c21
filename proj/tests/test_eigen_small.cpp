#include <simplexdyn/eigen_small.hpp>
#include <simplexdyn/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using namespace simplexdyn;

namespace {

// Sorted by (re, im), matching the library order.
std::vector<Complex> sorted_eigen_reference(const Eigen::MatrixXd& M) {
    const Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
    std::vector<Complex> out;
    for (int i = 0; i < M.rows(); ++i) out.push_back(es.eigenvalues()[i]);
    std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

} // namespace

TEST_CASE("monic quadratic roots") {
    auto [r1, r2] = quadratic_roots_monic(-5.0, 6.0);  // x^2 - 5x + 6
    CHECK(r1 == Complex(2.0, 0.0));
    CHECK(r2 == Complex(3.0, 0.0));

    std::tie(r1, r2) = quadratic_roots_monic(0.0, 1.0);  // x^2 + 1
    CHECK(r1.real() == Catch::Approx(0.0).margin(1e-15));
    CHECK(r1.imag() == Catch::Approx(-1.0).margin(1e-15));
    CHECK(r2.imag() == Catch::Approx(1.0).margin(1e-15));

    std::tie(r1, r2) = quadratic_roots_monic(-2.0, 1.0);  // (x-1)^2
    CHECK(r1 == Complex(1.0, 0.0));
    CHECK(r2 == Complex(1.0, 0.0));
}

TEST_CASE("monic quadratic roots survive heavy cancellation") {
    // x^2 - 1e8 x + 1: naive subtraction loses the small root entirely.
    auto [r1, r2] = quadratic_roots_monic(-1e8, 1.0);
    CHECK(r1.real() == Catch::Approx(1e-8).epsilon(1e-10));
    CHECK(r2.real() == Catch::Approx(1e8).epsilon(1e-12));
    CHECK((r1 * r2).real() == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("monic cubic roots in closed form") {
    // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
    auto roots = cubic_roots_monic(-6.0, 11.0, -6.0);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].real() == Catch::Approx(1.0).margin(1e-12));
    CHECK(roots[1].real() == Catch::Approx(2.0).margin(1e-12));
    CHECK(roots[2].real() == Catch::Approx(3.0).margin(1e-12));
    for (const Complex& r : roots) CHECK(r.imag() == Catch::Approx(0.0).margin(1e-12));

    // (x-1)^2 (x-4) = x^3 - 6x^2 + 9x - 4
    roots = cubic_roots_monic(-6.0, 9.0, -4.0);
    CHECK(roots[0].real() == Catch::Approx(1.0).margin(1e-7));
    CHECK(roots[1].real() == Catch::Approx(1.0).margin(1e-7));
    CHECK(roots[2].real() == Catch::Approx(4.0).margin(1e-12));

    // (x-2)^3 = x^3 - 6x^2 + 12x - 8: exactly detected triple root
    roots = cubic_roots_monic(-6.0, 12.0, -8.0);
    for (const Complex& r : roots) CHECK(r == Complex(2.0, 0.0));

    // (x-2)(x^2 + x + 1): conjugate pair -1/2 +- i sqrt(3)/2
    roots = cubic_roots_monic(-1.0, -1.0, -2.0);
    CHECK(roots[0].real() == Catch::Approx(-0.5).margin(1e-12));
    CHECK(roots[0].imag() == Catch::Approx(-std::sqrt(3.0) / 2).margin(1e-12));
    CHECK(roots[1].real() == Catch::Approx(-0.5).margin(1e-12));
    CHECK(roots[1].imag() == Catch::Approx(std::sqrt(3.0) / 2).margin(1e-12));
    CHECK(roots[2].real() == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("random cubics evaluate to zero at the reported roots") {
    Rng rng(29);
    for (int t = 0; t < 500; ++t) {
        const double p = rng.uniform(-3.0, 3.0);
        const double q = rng.uniform(-3.0, 3.0);
        const double r = rng.uniform(-3.0, 3.0);
        for (const Complex& x : cubic_roots_monic(p, q, r)) {
            const Complex res = ((x + p) * x + q) * x + r;
            const double scale = 1.0 + std::pow(std::abs(x), 3.0);
            CHECK(std::abs(res) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("eigenvalues of small known matrices") {
    Eigen::MatrixXd A(2, 2);
    A << 2, 1, 1, 2;
    auto ev = eigenvalues_small(A);
    CHECK(ev[0].real() == Catch::Approx(1.0).margin(1e-13));
    CHECK(ev[1].real() == Catch::Approx(3.0).margin(1e-13));

    A << 0, -1, 1, 0;  // rotation by pi/2
    ev = eigenvalues_small(A);
    CHECK(ev[0].imag() == Catch::Approx(-1.0).margin(1e-13));
    CHECK(ev[1].imag() == Catch::Approx(1.0).margin(1e-13));

    Eigen::MatrixXd B(3, 3);
    B << 1, 5, 7, 0, 2, 9, 0, 0, 3;  // triangular
    ev = eigenvalues_small(B);
    CHECK(ev[0].real() == Catch::Approx(1.0).margin(1e-12));
    CHECK(ev[1].real() == Catch::Approx(2.0).margin(1e-12));
    CHECK(ev[2].real() == Catch::Approx(3.0).margin(1e-12));

    const double th = 0.7;
    B << std::cos(th), -std::sin(th), 0, std::sin(th), std::cos(th), 0, 0, 0, 1;
    ev = eigenvalues_small(B);
    CHECK(ev[0].real() == Catch::Approx(std::cos(th)).margin(1e-12));
    CHECK(ev[0].imag() == Catch::Approx(-std::sin(th)).margin(1e-12));
    CHECK(ev[1].imag() == Catch::Approx(std::sin(th)).margin(1e-12));
    CHECK(ev[2] == Complex(1.0, 0.0));

    B << 2, 1, 0, 0, 2, 1, 0, 0, 2;  // non-diagonalizable triple eigenvalue
    ev = eigenvalues_small(B);
    for (const Complex& l : ev) CHECK(std::abs(l - Complex(2.0, 0.0)) <= 1e-5);
}

TEST_CASE("closed-form eigenvalues agree with the iterative solver") {
    Rng rng(31);
    for (int t = 0; t < 300; ++t) {
        Eigen::MatrixXd M(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M(i, j) = rng.uniform(-2.0, 2.0);
        const auto mine = eigenvalues_small(M);
        const auto ref = sorted_eigen_reference(M);
        double scale = 1.0;
        for (const Complex& l : ref) scale = std::max(scale, std::abs(l));
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(mine[static_cast<std::size_t>(i)] -
                           ref[static_cast<std::size_t>(i)]) <= 1e-8 * scale);
    }
}

TEST_CASE("larger matrices fall through to the iterative solver") {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4, 4);
    M(0, 0) = -1.0;
    M(1, 1) = 0.5;
    M(2, 2) = 2.0;
    M(3, 3) = 7.0;
    M(0, 3) = 4.0;  // triangular, eigenvalues on the diagonal
    const auto ev = eigenvalues_small(M);
    REQUIRE(ev.size() == 4);
    CHECK(ev[0].real() == Catch::Approx(-1.0).margin(1e-9));
    CHECK(ev[1].real() == Catch::Approx(0.5).margin(1e-9));
    CHECK(ev[2].real() == Catch::Approx(2.0).margin(1e-9));
    CHECK(ev[3].real() == Catch::Approx(7.0).margin(1e-9));
}

TEST_CASE("eigenvalue solver rejects bad input") {
    CHECK_THROWS_AS(eigenvalues_small(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2, 2);
    M(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eigenvalues_small(M), std::invalid_argument);
}
