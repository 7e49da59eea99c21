#pragma once

// Invariant sets of the two 3-coordinate families and the asymptotic
// machinery built on them.
//
// v2 foliates into invariant fibers through the vertex (1,0,0): the edges
// y = 0 (M0) and z = 0 (M1) and the rays y = omega z (M_omega); the plane
// section x = 1/(2+a) (X) is invariant as well and carries the fixed-point
// continuum for a > 0.
//
// v3, in reduced coordinates (y, z) with x = 1 - y - z, splits into
//   M1: y = 0            M2: z = 0          M3: (3-a) y = a z
//   M4: (3-a) y > a z    M5: (3-a) y < a z  (both with y, z not on M1/M2/M3)
// One step of the reduced map multiplies the defect g = (3-a) y - a z by
// exactly 3x, which yields invariance of the sectors for x > 0, maps the
// edge x = 0 onto M3, and makes the ratio z/y approach (3-a)/a monotonically.

#include "simplexdyn/models.hpp"
#include "simplexdyn/qop.hpp"
#include "simplexdyn/rng.hpp"
#include "simplexdyn/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplexdyn::models {

// ---- v2 ----

enum class V2Fiber { M0, M1, Momega };

inline const char* to_string(V2Fiber f) noexcept {
    switch (f) {
        case V2Fiber::M0: return "M0";
        case V2Fiber::M1: return "M1";
        case V2Fiber::Momega: return "M_omega";
    }
    return "unknown";
}

struct V2SetLabel {
    V2Fiber fiber = V2Fiber::M0;
    double omega = 0.0;  // slope y/z, meaningful for Momega only
    bool on_X = false;   // also on the section x = 1/(2+a)
};

inline V2SetLabel classify_v2_set(double a, const SimplexPoint& p, double tol = 1e-9) {
    if (p.dim() != 3) throw std::invalid_argument("classify_v2_set: point must be 3-dimensional");
    if (!(tol >= 0.0)) throw std::invalid_argument("classify_v2_set: tol must be nonnegative");
    V2SetLabel label;
    const double y = p[1], z = p[2];
    if (y <= tol)
        label.fiber = V2Fiber::M0;
    else if (z <= tol)
        label.fiber = V2Fiber::M1;
    else {
        label.fiber = V2Fiber::Momega;
        label.omega = y / z;
    }
    label.on_X = std::abs(p[0] - 1.0 / (2.0 + a)) <= tol;
    return label;
}

// ---- v3 ----

enum class V3Set { M1, M2, M3, M4, M5 };

inline const char* to_string(V3Set s) noexcept {
    switch (s) {
        case V3Set::M1: return "M1";
        case V3Set::M2: return "M2";
        case V3Set::M3: return "M3";
        case V3Set::M4: return "M4";
        case V3Set::M5: return "M5";
    }
    return "unknown";
}

// Signed defect from the invariant ray; positive in M4, negative in M5.
inline double v3_defect(double a, YZ p) noexcept { return (3.0 - a) * p.y - a * p.z; }

// Label precedence: the edges M1, M2 first, then the band |defect| <= band
// as M3, then the sign. The intersections (the origin lies on all three
// thin sets) resolve to the earliest label.
inline V3Set classify_v3_set(double a, YZ p, double band = 1e-9) {
    if (!(band >= 0.0)) throw std::invalid_argument("classify_v3_set: band must be nonnegative");
    if (p.y == 0.0) return V3Set::M1;
    if (p.z == 0.0) return V3Set::M2;
    const double g = v3_defect(a, p);
    if (std::abs(g) <= band) return V3Set::M3;
    return g > 0.0 ? V3Set::M4 : V3Set::M5;
}

inline V3Set classify_v3_set(double a, const SimplexPoint& p, double band = 1e-9) {
    if (p.dim() != 3) throw std::invalid_argument("classify_v3_set: point must be 3-dimensional");
    return classify_v3_set(a, reduce_v3(p), band);
}

// ---- invariance verification ----

struct InvarianceWitness {
    std::vector<double> point;  // sampled full-simplex point
    std::string detail;
};

struct InvarianceReport {
    std::string set_name;
    bool passed = false;
    long trials = 0;
    // v3 only: worst |(3-a)y' - az' - 3x((3-a)y - az)| over all samples.
    double max_identity_residual = 0.0;
    // v3 only: worst |(3-a)y' - az'| over sampled points of the edge x = 0,
    // which must land on M3.
    double max_boundary_residual = 0.0;
    // Sector samples whose image defect fell inside the M3 tie band; the
    // sign is checked instead of the label for those.
    long band_absorptions = 0;
    std::optional<InvarianceWitness> witness;
};

namespace detail {

inline void fail(InvarianceReport& rep, const std::vector<double>& pt, std::string what) {
    if (!rep.witness) rep.witness = InvarianceWitness{pt, std::move(what)};
    rep.passed = false;
}

} // namespace detail

// One-step invariance of a labeled set of v3 under the full operator,
// sampling `trials` points of the set, plus the x = 0 boundary statement.
inline InvarianceReport verify_invariance_v3(double a, V3Set set, long trials, std::uint64_t seed,
                                             double band = 1e-9) {
    if (trials < 1) throw std::invalid_argument("verify_invariance_v3: trials must be >= 1");
    const CubicMatrix P = make_v3(a);
    InvarianceReport rep;
    rep.set_name = to_string(set);
    rep.passed = true;
    rep.trials = trials;

    for (long t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        YZ p;
        switch (set) {
            case V3Set::M1: p = {0.0, rng.uniform(0.0, 1.0)}; break;
            case V3Set::M2: {
                double y = 0.0;
                while (y == 0.0) y = rng.uniform(0.0, 1.0);  // y = 0 would be labeled M1
                p = {y, 0.0};
                break;
            }
            case V3Set::M3: {
                double y = 0.0;
                while (y == 0.0) y = rng.uniform(0.0, a / 3.0);
                p = {y, (3.0 - a) / a * y};
                break;
            }
            case V3Set::M4:
            case V3Set::M5: {
                do {
                    const std::vector<double> s = rng.simplex_uniform(3);
                    p = {s[1], s[2]};
                } while (classify_v3_set(a, p, band) != set);
                break;
            }
        }
        const double x = 1.0 - p.y - p.z;
        const std::vector<double> full{x, p.y, p.z};
        const std::vector<double> img = apply_raw(P, full);
        const YZ q{img[1], img[2]};

        const double g = v3_defect(a, p);
        const double gq = v3_defect(a, q);
        rep.max_identity_residual =
            std::max(rep.max_identity_residual, std::abs(gq - 3.0 * x * g));

        const V3Set after = classify_v3_set(a, q, band);
        if (after == set) continue;
        if ((set == V3Set::M4 || set == V3Set::M5) && after == V3Set::M3) {
            // Image defect inside the tie band; accept if the exact identity
            // says the sign is kept (x > 0) or the point maps onto the ray
            // (x = 0).
            ++rep.band_absorptions;
            if (x > 0.0 || std::abs(gq) <= band) continue;
        }
        detail::fail(rep, full,
                     std::string("image left the set: ") + to_string(set) + " -> " +
                         to_string(after));
    }

    // Edge x = 0 maps into M3.
    const long boundary_trials = std::min<long>(trials, 200);
    for (long t = 0; t < boundary_trials; ++t) {
        Rng rng(derive_seed(seed ^ 0xb0a2d13eULL, static_cast<std::uint64_t>(t)));
        const double y = rng.uniform(0.0, 1.0);
        const std::vector<double> full{0.0, y, 1.0 - y};
        const std::vector<double> img = apply_raw(P, full);
        const double gq = v3_defect(a, {img[1], img[2]});
        rep.max_boundary_residual = std::max(rep.max_boundary_residual, std::abs(gq));
        if (std::abs(gq) > std::max(band, 1e-12))
            detail::fail(rep, full, "x = 0 point failed to land on M3");
    }
    return rep;
}

// One-step invariance of a v2 fiber (M0, M1 or the ray y = omega z) under
// the full operator, plus conservation of the section X.
inline InvarianceReport verify_invariance_v2(double a, V2Fiber fiber, double omega, long trials,
                                             std::uint64_t seed, double tol = 1e-9) {
    if (trials < 1) throw std::invalid_argument("verify_invariance_v2: trials must be >= 1");
    if (fiber == V2Fiber::Momega && (!std::isfinite(omega) || omega <= 0.0))
        throw std::invalid_argument("verify_invariance_v2: omega must be positive");
    const CubicMatrix P = make_v2(a);
    InvarianceReport rep;
    rep.set_name = (fiber == V2Fiber::Momega)
                       ? ("M_omega(omega=" + std::to_string(omega) + ")")
                       : to_string(fiber);
    rep.passed = true;
    rep.trials = trials;

    for (long t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<double> full(3, 0.0);
        switch (fiber) {
            case V2Fiber::M0: {
                const double z = rng.uniform(0.0, 1.0);
                full = {1.0 - z, 0.0, z};
                break;
            }
            case V2Fiber::M1: {
                const double y = rng.uniform(0.0, 1.0);
                full = {1.0 - y, y, 0.0};
                break;
            }
            case V2Fiber::Momega: {
                const double z = rng.uniform(0.0, 1.0 / (1.0 + omega));
                const double y = omega * z;
                full = {1.0 - y - z, y, z};
                break;
            }
        }
        const std::vector<double> img = apply_raw(P, full);
        switch (fiber) {
            case V2Fiber::M0:
                if (img[1] != 0.0) detail::fail(rep, full, "image left y = 0");
                break;
            case V2Fiber::M1:
                if (img[2] != 0.0) detail::fail(rep, full, "image left z = 0");
                break;
            case V2Fiber::Momega: {
                const double res = std::abs(img[1] - omega * img[2]);
                rep.max_identity_residual = std::max(rep.max_identity_residual, res);
                const double scale = std::max(1.0, omega);
                if (res > tol * scale) detail::fail(rep, full, "image left the ray y = omega z");
                break;
            }
        }
    }

    // The section x = 1/(2+a) is pointwise forward-invariant in x.
    const long section_trials = std::min<long>(trials, 200);
    for (long t = 0; t < section_trials; ++t) {
        Rng rng(derive_seed(seed ^ 0x5ec7104fULL, static_cast<std::uint64_t>(t)));
        const double x = 1.0 / (2.0 + a);
        const double y = rng.uniform(0.0, 1.0 - x);
        const std::vector<double> full{x, y, 1.0 - x - y};
        const std::vector<double> img = apply_raw(P, full);
        if (std::abs(img[0] - x) > tol)
            detail::fail(rep, full, "section x = 1/(2+a) not preserved");
    }
    return rep;
}

// ---- ratio sequence ----

struct RatioSequence {
    std::vector<double> values;  // P_n = z_n / y_n
    double bound = 0.0;          // (3-a)/a
    V3Set start_label = V3Set::M3;
    bool strictly_monotone = false;  // strict until saturation at the bound
    bool bounded = false;            // never crosses the bound (beyond slack)
    double final_gap = 0.0;          // |bound - P_last|
    bool truncated = false;
    std::string diagnostic;
};

// Ratio dynamics along the reduced map. Monotonicity is strict in exact
// arithmetic; in floating point the gap reaches the rounding floor after
// enough steps, so strictness is only required while the gap exceeds a
// slack of 1e-12 * (1 + bound) and the bound check carries the same slack.
inline RatioSequence ratio_sequence(double a, YZ start, int steps, double band = 1e-9) {
    if (steps < 0) throw std::invalid_argument("ratio_sequence: steps must be >= 0");
    if (!(start.y > 0.0))
        throw std::invalid_argument("ratio_sequence: the ratio z/y needs y > 0");
    if (start.z < 0.0 || start.y + start.z > 1.0 + 1e-12)
        throw std::invalid_argument("ratio_sequence: start must lie in the reduced triangle");

    RatioSequence seq;
    seq.bound = v3_ratio_bound(a);
    seq.start_label = classify_v3_set(a, start, band);
    const double slack = 1e-12 * (1.0 + seq.bound);

    YZ p = start;
    seq.values.push_back(p.z / p.y);
    for (int n = 0; n < steps; ++n) {
        p = step_v3_reduced(a, p);
        if (!(p.y > 0.0) || !std::isfinite(p.z / p.y)) {
            seq.truncated = true;
            seq.diagnostic = "y underflowed to zero at step " + std::to_string(n + 1);
            break;
        }
        seq.values.push_back(p.z / p.y);
    }

    seq.strictly_monotone = true;
    seq.bounded = true;
    const int dir = (seq.start_label == V3Set::M4)   ? +1
                    : (seq.start_label == V3Set::M5) ? -1
                                                     : 0;
    for (std::size_t n = 0; n + 1 < seq.values.size(); ++n) {
        const double cur = seq.values[n];
        const double nxt = seq.values[n + 1];
        if (dir == +1) {
            if (cur > seq.bound + slack) seq.bounded = false;
            if (seq.bound - cur > slack && nxt <= cur) seq.strictly_monotone = false;
        } else if (dir == -1) {
            if (cur < seq.bound - slack) seq.bounded = false;
            if (cur - seq.bound > slack && nxt >= cur) seq.strictly_monotone = false;
        } else {
            // Started on the ray: the ratio must stay at the bound.
            if (std::abs(cur - seq.bound) > std::max(band, slack)) seq.bounded = false;
        }
    }
    if (!seq.values.empty()) {
        const double last = seq.values.back();
        if (dir == +1 && last > seq.bound + slack) seq.bounded = false;
        if (dir == -1 && last < seq.bound - slack) seq.bounded = false;
        seq.final_gap = std::abs(seq.bound - last);
    }
    return seq;
}

// ---- limit prediction ----

enum class LimitTarget { s1, s2, s3, s4, subset_of_M3 };

inline const char* to_string(LimitTarget t) noexcept {
    switch (t) {
        case LimitTarget::s1: return "s1";
        case LimitTarget::s2: return "s2";
        case LimitTarget::s3: return "s3";
        case LimitTarget::s4: return "s4";
        case LimitTarget::subset_of_M3: return "subset-of-M3";
    }
    return "unknown";
}

struct LimitPrediction {
    LimitTarget target = LimitTarget::s1;
    std::optional<SimplexPoint> point;  // concrete target for s1..s4
    V3Set source = V3Set::M1;
};

// Predicted limit of the v3 trajectory from x0:
//   the vertex (1,0,0) is fixed; M1 with 0 < z < 1 heads to s2; M2 with
//   0 < y < 1 heads to s3; M3 with y > 0 heads to s4; the open sectors M4
//   and M5 approach the ray M3 (their omega-limits lie inside it). The far
//   edge endpoints z = 1 on M1 and y = 1 on M2 map to the vertex, so they
//   head to s1.
inline LimitPrediction predict_limit(double a, const SimplexPoint& x0, double tol = 1e-9) {
    if (x0.dim() != 3) throw std::invalid_argument("predict_limit: point must be 3-dimensional");
    const auto fps = v3_fixed_points(a);
    LimitPrediction pred;
    pred.source = classify_v3_set(a, x0, tol);
    if (std::abs(x0[0] - 1.0) <= tol) {
        pred.target = LimitTarget::s1;
        pred.point = fps[0];
        return pred;
    }
    switch (pred.source) {
        case V3Set::M1:
            if (x0[2] >= 1.0 - tol) {
                pred.target = LimitTarget::s1;
                pred.point = fps[0];
            } else {
                pred.target = LimitTarget::s2;
                pred.point = fps[1];
            }
            break;
        case V3Set::M2:
            if (x0[1] >= 1.0 - tol) {
                pred.target = LimitTarget::s1;
                pred.point = fps[0];
            } else {
                pred.target = LimitTarget::s3;
                pred.point = fps[2];
            }
            break;
        case V3Set::M3:
            pred.target = LimitTarget::s4;
            pred.point = fps[3];
            break;
        case V3Set::M4:
        case V3Set::M5:
            pred.target = LimitTarget::subset_of_M3;
            break;
    }
    return pred;
}

// ---- conjecture experiment ----

struct ConjectureStats {
    double a = 0.0;
    long trials = 0;
    long steps = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    double fraction_converged = 0.0;   // final distance to s4 below tol
    double max_final_distance = 0.0;
    std::vector<double> final_distances;  // per trial
    std::vector<double> mean_tail_delta;  // per trial: mean distance change over last 100 steps
    std::string note;
};

// Numerical probe of the claim that trajectories from the open sectors
// converge to s4: uniformly sampled starts in M4 or M5 (the ray band and the
// edges are rejected), iterated under the full operator. This gathers
// evidence, not a proof, and the note in the result says so.
inline ConjectureStats conjecture_experiment(double a, long trials, long steps,
                                             std::uint64_t seed, double tol,
                                             double band = 1e-9) {
    if (trials < 1) throw std::invalid_argument("conjecture_experiment: trials must be >= 1");
    if (steps < 0) throw std::invalid_argument("conjecture_experiment: steps must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("conjecture_experiment: tol must be positive");

    const CubicMatrix P = make_v3(a);
    const SimplexPoint s4 = v3_fixed_points(a)[3];

    ConjectureStats st;
    st.a = a;
    st.trials = trials;
    st.steps = steps;
    st.tol = tol;
    st.seed = seed;
    st.note = "numerical evidence only; convergence of the open sectors is conjectural";

    long converged = 0;
    for (long t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<double> x;
        V3Set label;
        do {
            x = rng.simplex_uniform(3);
            label = classify_v3_set(a, SimplexPoint(x), band);
        } while (label != V3Set::M4 && label != V3Set::M5);

        const long window = std::min<long>(100, steps);
        std::vector<double> tail;
        tail.reserve(static_cast<std::size_t>(window) + 1);
        double dist = linf_distance(x, s4.coords());
        if (steps == window) tail.push_back(dist);
        for (long n = 1; n <= steps; ++n) {
            x = apply_raw(P, x);
            snap_to_simplex(x);  // keeps the squared-sum drift from compounding
            dist = linf_distance(x, s4.coords());
            if (n >= steps - window) tail.push_back(dist);
        }
        st.final_distances.push_back(dist);
        st.max_final_distance = std::max(st.max_final_distance, dist);
        if (dist < tol) ++converged;

        double delta = 0.0;
        if (tail.size() >= 2)
            delta = (tail.back() - tail.front()) / static_cast<double>(tail.size() - 1);
        st.mean_tail_delta.push_back(delta);
    }
    st.fraction_converged = static_cast<double>(converged) / static_cast<double>(trials);
    return st;
}

} // namespace simplexdyn::models
