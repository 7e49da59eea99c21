#include <simplexdyn/conditions.hpp>
#include <simplexdyn/cubic_matrix.hpp>
#include <simplexdyn/models.hpp>
#include <simplexdyn/rng.hpp>

#include "support/test_matrices.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace simplexdyn;

TEST_CASE("cubic matrix stores and retrieves entries") {
    CubicMatrix P(3);
    P(0, 1, 2) = 0.25;
    P(2, 2, 0) = -1.5;
    CHECK(P.dim() == 3);
    CHECK(P(0, 1, 2) == 0.25);
    CHECK(P(2, 2, 0) == -1.5);
    CHECK(P(1, 0, 2) == 0.0);
    CHECK(P.all_finite());
    CHECK_FALSE(P.is_symmetric());
    CHECK_THROWS_AS(CubicMatrix(1), std::invalid_argument);
}

TEST_CASE("symmetrize averages mirrored entries and is idempotent") {
    CubicMatrix raw(2);
    raw(0, 1, 0) = 0.2;
    raw(1, 0, 0) = 0.4;
    raw(0, 0, 1) = 0.7;
    const CubicMatrix S = symmetrize(raw);
    CHECK(S(0, 1, 0) == (0.2 + 0.4) / 2.0);
    CHECK(S(1, 0, 0) == (0.2 + 0.4) / 2.0);
    CHECK(S(0, 0, 1) == 0.7);
    CHECK(S.is_symmetric());
    CHECK(symmetrize(S) == S);
}

TEST_CASE("symmetrize rejects non-finite entries") {
    CubicMatrix raw(2);
    raw(0, 0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(symmetrize(raw), std::invalid_argument);
}

TEST_CASE("condition checks require a symmetrized matrix and a sane tolerance") {
    CubicMatrix raw(2);
    raw(0, 1, 0) = 0.2;
    raw(1, 0, 0) = 0.4;
    CHECK_THROWS_AS(check_conditions(raw), std::invalid_argument);
    CHECK_THROWS_AS(check_conditions(symmetrize(raw), -1.0), std::invalid_argument);
}

TEST_CASE("two-coordinate model passes the sufficient conditions") {
    const ConditionReport rep = check_conditions(models::make_v1(0.5, 0.3, 0.7));
    CHECK(rep.cond_i);
    CHECK(rep.cond_ii);
    CHECK(rep.cond_iii);
    CHECK(rep.cond_iii_prime);
    CHECK(rep.sufficient());
    CHECK(rep.necessary());
    CHECK(rep.cond_i_worst_residual <= 1e-15);
    CHECK(rep.not_evaluable.empty());
}

TEST_CASE("extreme two-coordinate parameter sits exactly on both bounds") {
    // b = -1 with unit diagonals: margins vanish but nothing is violated.
    const ConditionReport rep = check_conditions(models::make_va(-1.0));
    CHECK(rep.sufficient());
    CHECK(rep.necessary());
    CHECK(rep.has_negative_offdiagonal);
}

TEST_CASE("three-coordinate family with mild coupling is sufficient, strong coupling only necessary") {
    const ConditionReport mild = check_conditions(models::make_v2(1.0));
    CHECK(mild.sufficient());
    CHECK(mild.necessary());

    const ConditionReport strong = check_conditions(models::make_v2(2.0));
    CHECK(strong.cond_i);
    CHECK(strong.cond_ii);
    CHECK_FALSE(strong.cond_iii);
    CHECK(strong.cond_iii_prime);
    CHECK_FALSE(strong.sufficient());
    CHECK(strong.necessary());

    // The violated triples are exactly the k = 0 entries P(0,1,0) and
    // P(0,2,0) = -1, each missing the one-sided bound -1/2 by 1/2.
    REQUIRE(strong.cond_iii_violations.size() == 2);
    for (const TripleViolation& v : strong.cond_iii_violations) {
        CHECK(v.i == 0);
        CHECK((v.j == 1 || v.j == 2));
        CHECK(v.k == 0);
        CHECK(v.margin == Catch::Approx(-0.5).margin(1e-15));
    }
}

TEST_CASE("escaping matrix separates the necessary conditions from the sufficient ones") {
    const CubicMatrix P = testsupport::necessary_only_matrix();
    REQUIRE(P.is_symmetric());
    const ConditionReport rep = check_conditions(P);
    CHECK(rep.cond_i);
    CHECK(rep.cond_ii);
    CHECK_FALSE(rep.cond_iii);
    CHECK(rep.cond_iii_prime);
    CHECK_FALSE(rep.sufficient());
    CHECK(rep.necessary());
    CHECK(rep.has_negative_offdiagonal);
    // All three pairs i < j violate the one-sided bound in slice k = 0.
    CHECK(rep.cond_iii_violations.size() == 3);
    for (const TripleViolation& v : rep.cond_iii_violations) {
        CHECK(v.k == 0);
        CHECK(v.margin == Catch::Approx(-0.5).margin(1e-15));
    }
}

TEST_CASE("zero-coupling interaction matrix is detected as such") {
    // P(i,j,k) = 0 unless k is i or j; here the identity map x' = x.
    CubicMatrix P(2);
    P(0, 0, 0) = 1.0;
    P(1, 1, 1) = 1.0;
    P(0, 1, 0) = P(1, 0, 0) = 0.5;
    P(0, 1, 1) = P(1, 0, 1) = 0.5;
    const ConditionReport rep = check_conditions(P);
    CHECK(rep.cond_iv_volterra);
    CHECK(rep.is_3_stochastic);
    CHECK(rep.sufficient());
    CHECK_FALSE(rep.has_negative_offdiagonal);
}

TEST_CASE("non-interaction entries break the zero-coupling property") {
    const CubicMatrix P = models::make_v2(1.0);
    // P(1,2,0) = 1 with k = 0 not in {1,2}.
    CHECK_FALSE(check_conditions(P).cond_iv_volterra);
}

TEST_CASE("diagonal entries escaping [0,1] are flagged and excluded from the bound checks") {
    CubicMatrix P(2);
    P(0, 0, 0) = 1.5;
    P(0, 0, 1) = -0.5;
    P(1, 1, 0) = 0.5;
    P(1, 1, 1) = 0.5;
    P(0, 1, 0) = P(1, 0, 0) = 0.5;
    P(0, 1, 1) = P(1, 0, 1) = 0.5;
    const ConditionReport rep = check_conditions(P);
    CHECK_FALSE(rep.cond_ii);
    CHECK(rep.cond_ii_violations.size() == 2);
    // k = 0 has (1-d_00)(1-d_10) < 0 and k = 1 has d_00 d_10 < 0, so neither
    // bound is defined and both triples are excluded.
    REQUIRE(rep.not_evaluable.size() == 2);
    CHECK(rep.not_evaluable[0].k == 0);
    CHECK(rep.not_evaluable[1].k == 1);
}

TEST_CASE("quadratic range on the unit interval matches closed forms") {
    auto r = quadratic_range_on_unit_interval(1.0, 1.0, 1.0);
    CHECK(r.lo == 1.0);
    CHECK(r.hi == 1.0);

    r = quadratic_range_on_unit_interval(1.0, -1.0, 1.0);  // (2t-1)^2
    CHECK(r.lo == Catch::Approx(0.0).margin(1e-15));
    CHECK(r.hi == 1.0);

    r = quadratic_range_on_unit_interval(0.0, 0.0, 1.0);  // (1-t)^2
    CHECK(r.lo == 0.0);
    CHECK(r.hi == 1.0);

    r = quadratic_range_on_unit_interval(0.2, 0.5, 0.8);  // degenerate: linear
    CHECK(r.lo == Catch::Approx(0.2).margin(1e-15));
    CHECK(r.hi == Catch::Approx(0.8).margin(1e-15));

    CHECK_THROWS_AS(quadratic_range_on_unit_interval(std::nan(""), 0.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("quadratic range bounds a dense sampling of the segment") {
    Rng rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        const double a = rng.uniform(-2.0, 2.0);
        const double b = rng.uniform(-2.0, 2.0);
        const double c = rng.uniform(-2.0, 2.0);
        const Interval r = quadratic_range_on_unit_interval(a, b, c);
        double lo = 1e300, hi = -1e300;
        for (int s = 0; s <= 1000; ++s) {
            const double t = static_cast<double>(s) / 1000.0;
            const double f = a * t * t + 2.0 * b * t * (1.0 - t) + c * (1.0 - t) * (1.0 - t);
            lo = std::min(lo, f);
            hi = std::max(hi, f);
        }
        // The analytic range contains every sample and the samples come
        // within grid resolution of the endpoints.
        CHECK(r.lo <= lo + 1e-12);
        CHECK(r.hi >= hi - 1e-12);
        CHECK(lo - r.lo <= 1e-5);
        CHECK(r.hi - hi <= 1e-5);
    }
}

TEST_CASE("edge ranges inside the unit interval are equivalent to the two-sided bound") {
    Rng rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        CubicMatrix P(3);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) P(i, i, k) = rng.uniform();
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                for (int k = 0; k < 3; ++k) P(i, j, k) = P(j, i, k) = rng.uniform(-1.5, 2.5);

        const ConditionReport rep = check_conditions(P);
        const EdgeNecessityReport edges = check_edge_necessity(P);
        REQUIRE(rep.not_evaluable.empty());
        CHECK(rep.cond_iii_prime == edges.all_inside);
    }
}

TEST_CASE("sufficient conditions imply the two-sided bound") {
    Rng rng(43);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 2 + trial % 3;
        const CubicMatrix P = testsupport::random_sufficient_matrix(m, rng);
        const ConditionReport rep = check_conditions(P);
        REQUIRE(rep.sufficient());
        CHECK(rep.cond_iii_prime);
        CHECK(rep.necessary());
    }
}

TEST_CASE("edge necessity reports one range per edge and coordinate") {
    const EdgeNecessityReport edges = check_edge_necessity(models::make_v3(1.0));
    CHECK(edges.checks.size() == 9);  // 3 edges x 3 coordinates
    CHECK(edges.all_inside);
}
