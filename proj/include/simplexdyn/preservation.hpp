#pragma once

// Empirical simplex-preservation oracle. The analytic conditions leave a gap
// for m >= 3 (the one-sided bound is sufficient, the two-sided one only
// necessary), so operators in the gap are probed numerically: vertices,
// deterministic barycentric grids on all edges and 2-faces, seeded random
// interior samples, and a projected-gradient descent from the worst point
// found. The oracle is a falsifier, not a prover: "preserved" means no
// violation was found, and a reported counterexample is exact in the sense
// that re-applying the operator to it reproduces the violating value.

#include "simplexdyn/cubic_matrix.hpp"
#include "simplexdyn/qop.hpp"
#include "simplexdyn/rng.hpp"
#include "simplexdyn/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplexdyn {

enum class ViolationKind { negative_coordinate, sum_deviation };

enum class SearchPhase { vertices, edge_grid, face_grid, random, descent };

inline const char* to_string(SearchPhase p) noexcept {
    switch (p) {
        case SearchPhase::vertices: return "vertices";
        case SearchPhase::edge_grid: return "edge_grid";
        case SearchPhase::face_grid: return "face_grid";
        case SearchPhase::random: return "random";
        case SearchPhase::descent: return "descent";
    }
    return "unknown";
}

// Coarse strategy label: which kind of search produced the counterexample.
inline const char* strategy_name(SearchPhase p) noexcept {
    switch (p) {
        case SearchPhase::vertices:
        case SearchPhase::edge_grid:
        case SearchPhase::face_grid: return "grid";
        case SearchPhase::random: return "random";
        case SearchPhase::descent: return "local-min-refinement";
    }
    return "unknown";
}

struct Counterexample {
    std::vector<double> point;  // on the simplex
    int coordinate = 0;         // offending output coordinate (sum deviations use -1)
    double value = 0.0;         // offending output value (or the sum itself)
    ViolationKind kind = ViolationKind::negative_coordinate;
    SearchPhase found_by = SearchPhase::vertices;
};

struct PreservationVerdict {
    bool preserved = false;
    double tol = 0.0;
    long samples_used = 0;
    double worst_min_coordinate = 0.0;  // most negative output coordinate seen
    double worst_sum_deviation = 0.0;   // max |sum V(x) - 1| seen
    int descent_steps_used = 0;
    std::optional<Counterexample> counterexample;
};

namespace detail {

struct OracleState {
    const CubicMatrix* P = nullptr;
    double tol = 0.0;
    long samples_used = 0;
    int descent_steps = 0;

    // Deepest negative output coordinate seen so far.
    double min_value = 1.0;
    int min_coordinate = 0;
    std::vector<double> min_point;
    SearchPhase min_phase = SearchPhase::vertices;

    // Largest |sum - 1| seen so far.
    double sum_dev = 0.0;
    double sum_value = 1.0;
    std::vector<double> sum_point;
    SearchPhase sum_phase = SearchPhase::vertices;
};

inline void probe(OracleState& st, std::span<const double> x, SearchPhase phase) {
    const std::vector<double> y = apply_raw(*st.P, x);
    ++st.samples_used;
    double sum = 0.0;
    int arg = 0;
    double mn = y[0];
    for (int k = 0; k < static_cast<int>(y.size()); ++k) {
        sum += y[static_cast<std::size_t>(k)];
        if (y[static_cast<std::size_t>(k)] < mn) {
            mn = y[static_cast<std::size_t>(k)];
            arg = k;
        }
    }
    if (mn < st.min_value) {
        st.min_value = mn;
        st.min_coordinate = arg;
        st.min_point.assign(x.begin(), x.end());
        st.min_phase = phase;
    }
    const double sdev = std::abs(sum - 1.0);
    if (sdev > st.sum_dev) {
        st.sum_dev = sdev;
        st.sum_value = sum;
        st.sum_point.assign(x.begin(), x.end());
        st.sum_phase = phase;
    }
}

// Minimize the smallest output coordinate over the simplex by projected
// gradient steps with backtracking, starting from the worst point seen.
inline void descend(OracleState& st, int max_steps) {
    if (st.min_point.empty()) return;
    const CubicMatrix& P = *st.P;
    const int m = P.dim();
    std::vector<double> x = st.min_point;
    double fx = st.min_value;
    for (int step = 0; step < max_steps; ++step) {
        const std::vector<double> y = apply_raw(P, x);
        int k = 0;
        for (int i = 1; i < m; ++i)
            if (y[static_cast<std::size_t>(i)] < y[static_cast<std::size_t>(k)]) k = i;
        const Eigen::MatrixXd J = jacobian(P, x);
        double eta = 0.1;
        bool improved = false;
        std::vector<double> best;
        double fbest = fx;
        for (int bt = 0; bt < 20; ++bt, eta *= 0.5) {
            std::vector<double> cand(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
                cand[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - eta * J(k, i);
            cand = project_to_simplex(cand);
            const std::vector<double> yc = apply_raw(P, cand);
            const double fc = *std::min_element(yc.begin(), yc.end());
            if (fc < fbest) {
                best = std::move(cand);
                fbest = fc;
                improved = true;
                break;
            }
        }
        ++st.descent_steps;
        if (!improved) break;
        x = std::move(best);
        fx = fbest;
        probe(st, x, SearchPhase::descent);
    }
}

} // namespace detail

inline PreservationVerdict preservation_oracle(const CubicMatrix& P, long samples,
                                               std::uint64_t seed, double tol = 1e-12) {
    if (!(tol >= 0.0))
        throw std::invalid_argument("preservation_oracle: tol must be nonnegative");
    if (samples < 0) throw std::invalid_argument("preservation_oracle: samples must be >= 0");
    if (!P.all_finite()) throw std::invalid_argument("preservation_oracle: non-finite entry");
    if (!P.is_symmetric())
        throw std::invalid_argument("preservation_oracle: matrix must be symmetrized first");

    const int m = P.dim();
    detail::OracleState st;
    st.P = &P;
    st.tol = tol;

    // Vertices.
    for (int i = 0; i < m; ++i) {
        std::vector<double> x(static_cast<std::size_t>(m), 0.0);
        x[static_cast<std::size_t>(i)] = 1.0;
        detail::probe(st, x, SearchPhase::vertices);
    }

    // Barycentric grids of resolution ceil(sqrt(samples)) on every edge and
    // every 2-face.
    const long R = std::max<long>(1, static_cast<long>(std::ceil(std::sqrt(
                                         static_cast<double>(std::max<long>(samples, 1))))));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (long r = 1; r < R; ++r) {
                std::vector<double> x(static_cast<std::size_t>(m), 0.0);
                x[static_cast<std::size_t>(i)] = static_cast<double>(r) / static_cast<double>(R);
                x[static_cast<std::size_t>(j)] =
                    static_cast<double>(R - r) / static_cast<double>(R);
                detail::probe(st, x, SearchPhase::edge_grid);
            }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int l = j + 1; l < m; ++l)
                for (long r = 1; r < R; ++r)
                    for (long s = 1; r + s < R; ++s) {
                        std::vector<double> x(static_cast<std::size_t>(m), 0.0);
                        x[static_cast<std::size_t>(i)] =
                            static_cast<double>(r) / static_cast<double>(R);
                        x[static_cast<std::size_t>(j)] =
                            static_cast<double>(s) / static_cast<double>(R);
                        x[static_cast<std::size_t>(l)] =
                            static_cast<double>(R - r - s) / static_cast<double>(R);
                        detail::probe(st, x, SearchPhase::face_grid);
                    }

    // Random interior samples in independent batches of 1024, each batch
    // seeded from (seed, batch index); results do not depend on how batches
    // would be distributed across workers.
    constexpr long kBatch = 1024;
    for (long done = 0, batch = 0; done < samples; ++batch) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(batch)));
        const long n = std::min(kBatch, samples - done);
        for (long t = 0; t < n; ++t) {
            const std::vector<double> x = rng.simplex_uniform(m);
            detail::probe(st, x, SearchPhase::random);
        }
        done += n;
    }

    detail::descend(st, 100);

    PreservationVerdict verdict;
    verdict.tol = tol;
    verdict.samples_used = st.samples_used;
    verdict.worst_min_coordinate = st.min_value;
    verdict.worst_sum_deviation = st.sum_dev;
    verdict.descent_steps_used = st.descent_steps;
    if (st.min_value < -tol) {
        Counterexample ce;
        ce.point = st.min_point;
        ce.coordinate = st.min_coordinate;
        ce.value = st.min_value;
        ce.kind = ViolationKind::negative_coordinate;
        ce.found_by = st.min_phase;
        verdict.counterexample = std::move(ce);
    } else if (st.sum_dev > tol) {
        Counterexample ce;
        ce.point = st.sum_point;
        ce.coordinate = -1;
        ce.value = st.sum_value;
        ce.kind = ViolationKind::sum_deviation;
        ce.found_by = st.sum_phase;
        verdict.counterexample = std::move(ce);
    }
    verdict.preserved = !verdict.counterexample.has_value();
    return verdict;
}

} // namespace simplexdyn
