#include <simplexdyn/models.hpp>
#include <simplexdyn/preservation.hpp>
#include <simplexdyn/qop.hpp>
#include <simplexdyn/rng.hpp>
#include <simplexdyn/simplex.hpp>

#include "support/test_matrices.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace simplexdyn;

TEST_CASE("simplex points validate their coordinates") {
    CHECK_NOTHROW(SimplexPoint({0.25, 0.75}));
    CHECK_NOTHROW(SimplexPoint({-1e-12, 0.5, 0.5 + 1e-12}));  // inside the slack
    CHECK_THROWS_AS(SimplexPoint({0.5}), std::invalid_argument);
    CHECK_THROWS_AS(SimplexPoint({-0.1, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(SimplexPoint({0.6, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(SimplexPoint({std::nan(""), 1.0}), std::invalid_argument);
    CHECK(vertex(3, 1)[1] == 1.0);
    CHECK_THROWS_AS(vertex(3, 3), std::invalid_argument);
}

TEST_CASE("euclidean projection lands on the simplex") {
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> v(4);
        for (double& x : v) x = rng.uniform(-2.0, 2.0);
        const std::vector<double> p = project_to_simplex(v);
        double sum = 0.0;
        for (double x : p) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(sum == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("vertices map to the diagonal rows") {
    Rng rng(11);
    const CubicMatrix P = testsupport::random_sufficient_matrix(3, rng);
    for (int i = 0; i < 3; ++i) {
        const std::vector<double> img = apply(P, vertex(3, i));
        for (int k = 0; k < 3; ++k) CHECK(img[static_cast<std::size_t>(k)] == P(i, i, k));
    }
}

TEST_CASE("row-sum condition forces the image sum to one") {
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        const int m = 2 + t % 3;
        const CubicMatrix P = testsupport::random_sufficient_matrix(m, rng);
        const std::vector<double> x = rng.simplex_uniform(m);
        const std::vector<double> y = apply_raw(P, x);
        double sum = 0.0;
        for (double v : y) sum += v;
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("known image of the escaping matrix") {
    const CubicMatrix P = testsupport::necessary_only_matrix();
    const std::vector<double> y = apply_raw(P, std::vector<double>{0.5, 0.25, 0.25});
    CHECK(y[0] == Catch::Approx(-0.25).margin(1e-12));
    // (2 x1 - 1)^2 - 4 x2 x3 reaches its global minimum -1/3 at the centroid.
    const std::vector<double> c = apply_raw(P, std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(c[0] == Catch::Approx(-1.0 / 3).margin(1e-12));
}

TEST_CASE("analytic jacobian matches the exact central difference") {
    Rng rng(17);
    for (int t = 0; t < 50; ++t) {
        const int m = 2 + t % 3;
        const CubicMatrix P = testsupport::random_sufficient_matrix(m, rng);
        const std::vector<double> x = rng.simplex_uniform(m);
        const Eigen::MatrixXd J = jacobian(P, x);
        const double h = 1e-6;
        for (int i = 0; i < m; ++i) {
            std::vector<double> xp = x, xm = x;
            xp[static_cast<std::size_t>(i)] += h;
            xm[static_cast<std::size_t>(i)] -= h;
            const std::vector<double> yp = apply_raw(P, xp);
            const std::vector<double> ym = apply_raw(P, xm);
            for (int k = 0; k < m; ++k) {
                const double fd =
                    (yp[static_cast<std::size_t>(k)] - ym[static_cast<std::size_t>(k)]) / (2.0 * h);
                // The map is quadratic, so the central difference is exact up
                // to roundoff.
                CHECK(J(k, i) == Catch::Approx(fd).margin(1e-9));
            }
        }
    }
}

TEST_CASE("jacobian at a vertex reads off the matrix entries") {
    const CubicMatrix P = models::make_v3(1.0);
    const Eigen::MatrixXd J = jacobian(P, vertex(3, 0).coords());
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i) CHECK(J(k, i) == Catch::Approx(2.0 * P(i, 0, k)).margin(1e-15));
}

TEST_CASE("reduced jacobian of the degenerate vertex has the known double multiplier") {
    const CubicMatrix P = models::make_v3(1.0);
    Eigen::VectorXd u(2);
    u << 1.0, 0.0;  // reduced coordinates of (1,0,0) keep (x, y)
    const Eigen::MatrixXd Jr = reduced_jacobian(P, u);
    const Eigen::VectorXcd ev = Jr.eigenvalues();
    std::vector<double> mags{std::abs(ev[0]), std::abs(ev[1])};
    std::sort(mags.begin(), mags.end());
    CHECK(mags[0] == Catch::Approx(3.0).margin(1e-12));
    CHECK(mags[1] == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("reduced map agrees with the full operator") {
    Rng rng(19);
    const CubicMatrix P = testsupport::random_sufficient_matrix(4, rng);
    for (int t = 0; t < 50; ++t) {
        const std::vector<double> x = rng.simplex_uniform(4);
        const std::vector<double> y = apply_raw(P, x);
        const Eigen::VectorXd v = reduced_apply(P, drop_last(x));
        for (int i = 0; i < 3; ++i)
            CHECK(v[i] == Catch::Approx(y[static_cast<std::size_t>(i)]).margin(1e-12));
    }
}

TEST_CASE("iteration is deterministic and records every point") {
    const CubicMatrix P = models::make_v2(1.5);
    const SimplexPoint x0({0.2, 0.5, 0.3});
    const Trajectory a = iterate(P, x0, 200, kSimplexEps, "v2");
    const Trajectory b = iterate(P, x0, 200, kSimplexEps, "v2");
    REQUIRE(a.length() == 201);
    CHECK(a.operator_id == "v2");
    for (std::size_t n = 0; n < a.length(); ++n) CHECK(a.points[n] == b.points[n]);
    // Recompute step 1 by hand; iterate snaps each image back onto the
    // simplex, which may move coordinates by an ulp relative to the raw apply.
    const std::vector<double> y = apply(P, x0);
    CHECK(linf_distance(a.points[1].coords(), y) <= 1e-15);
}

TEST_CASE("iteration reports the escape step") {
    const CubicMatrix P = testsupport::necessary_only_matrix();
    const SimplexPoint x0({0.5, 0.25, 0.25});
    try {
        iterate(P, x0, 10);
        FAIL("expected a domain escape");
    } catch (const domain_escape_error& e) {
        CHECK(e.step() == 1);
    }
}

TEST_CASE("preservation oracle accepts random sufficient operators") {
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        const int m = 2 + t % 3;
        const CubicMatrix P = testsupport::random_sufficient_matrix(m, rng);
        const PreservationVerdict v = preservation_oracle(P, 2000, 5);
        CHECK(v.preserved);
        CHECK_FALSE(v.counterexample.has_value());
        CHECK(v.worst_sum_deviation <= 1e-12);
    }
}

TEST_CASE("preservation oracle accepts boundary-touching operators") {
    // x' = (x - y)^2 pinches the boundary but never crosses it.
    const PreservationVerdict v = preservation_oracle(models::make_va(-1.0), 5000, 1);
    CHECK(v.preserved);
    CHECK(v.worst_min_coordinate >= -1e-12);
}

TEST_CASE("preservation oracle reports the deepest violation of the escaping matrix") {
    const CubicMatrix P = testsupport::necessary_only_matrix();
    const PreservationVerdict v = preservation_oracle(P, 10000, 0);
    CHECK_FALSE(v.preserved);
    REQUIRE(v.counterexample.has_value());
    const Counterexample& ce = *v.counterexample;
    CHECK(ce.kind == ViolationKind::negative_coordinate);
    CHECK(ce.coordinate == 0);
    // Descent sharpens the violation to the global minimum at the centroid,
    // far inside the simplex, even though the first grid hits sit on edges.
    CHECK(ce.value == Catch::Approx(-1.0 / 3).margin(1e-6));
    for (double c : ce.point) CHECK(c == Catch::Approx(1.0 / 3).margin(1e-3));
    CHECK(v.worst_min_coordinate == Catch::Approx(-1.0 / 3).margin(1e-6));
    CHECK(ce.found_by == SearchPhase::descent);
    CHECK(std::string(strategy_name(ce.found_by)) == "local-min-refinement");
}

TEST_CASE("preservation oracle is deterministic for a fixed seed") {
    const CubicMatrix P = testsupport::necessary_only_matrix();
    const PreservationVerdict a = preservation_oracle(P, 3000, 99);
    const PreservationVerdict b = preservation_oracle(P, 3000, 99);
    REQUIRE(a.counterexample.has_value());
    REQUIRE(b.counterexample.has_value());
    CHECK(a.counterexample->point == b.counterexample->point);
    CHECK(a.counterexample->value == b.counterexample->value);
    CHECK(a.samples_used == b.samples_used);
}

TEST_CASE("preservation oracle validates its inputs") {
    const CubicMatrix P = testsupport::necessary_only_matrix();
    CHECK_THROWS_AS(preservation_oracle(P, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(preservation_oracle(P, 100, 0, -1.0), std::invalid_argument);
    CubicMatrix raw(2);
    raw(0, 1, 0) = 1.0;
    CHECK_THROWS_AS(preservation_oracle(raw, 100, 0), std::invalid_argument);
}
