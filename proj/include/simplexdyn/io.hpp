#pragma once

// Serialization: cubic matrices as JSON (with symmetrize-on-load), report
// types as JSON, trajectories and bifurcation scans as CSV. All floating
// point values written to CSV use %.17g so a strtod round trip is exact;
// the JSON writer emits shortest-round-trip representations.

#include "simplexdyn/bifurcation.hpp"
#include "simplexdyn/conditions.hpp"
#include "simplexdyn/cubic_matrix.hpp"
#include "simplexdyn/fixed_points.hpp"
#include "simplexdyn/invariant_sets.hpp"
#include "simplexdyn/lyapunov.hpp"
#include "simplexdyn/preservation.hpp"
#include "simplexdyn/qop.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace simplexdyn {

using nlohmann::json;

// ---- cubic matrix files ----
//
// Schema: { "m": int, "entries": [[[...]]] } with entries[i][j][k] in
// zero-based index order. Matrices are symmetrized on load; the report notes
// whether that changed anything.

struct LoadedMatrix {
    CubicMatrix matrix;
    bool symmetrization_changed = false;
    double max_symmetrization_delta = 0.0;
};

inline LoadedMatrix load_cubic_json(const json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("entries"))
        throw std::invalid_argument("matrix JSON must be an object with \"m\" and \"entries\"");
    const int m = j.at("m").get<int>();
    if (m < 2) throw std::invalid_argument("matrix JSON: m must be at least 2");
    const json& e = j.at("entries");
    if (!e.is_array() || static_cast<int>(e.size()) != m)
        throw std::invalid_argument("matrix JSON: entries must be an m x m x m array");
    CubicMatrix raw(m);
    for (int i = 0; i < m; ++i) {
        const json& ei = e.at(static_cast<std::size_t>(i));
        if (!ei.is_array() || static_cast<int>(ei.size()) != m)
            throw std::invalid_argument("matrix JSON: entries must be an m x m x m array");
        for (int jj = 0; jj < m; ++jj) {
            const json& eij = ei.at(static_cast<std::size_t>(jj));
            if (!eij.is_array() || static_cast<int>(eij.size()) != m)
                throw std::invalid_argument("matrix JSON: entries must be an m x m x m array");
            for (int k = 0; k < m; ++k) {
                const json& v = eij.at(static_cast<std::size_t>(k));
                if (!v.is_number())
                    throw std::invalid_argument("matrix JSON: entries must be numbers");
                raw(i, jj, k) = v.get<double>();
            }
        }
    }
    if (!raw.all_finite()) throw std::invalid_argument("matrix JSON: non-finite entry");
    LoadedMatrix out{symmetrize(raw), false, 0.0};
    for (int i = 0; i < m; ++i)
        for (int jj = 0; jj < m; ++jj)
            for (int k = 0; k < m; ++k) {
                const double d = std::abs(out.matrix(i, jj, k) - raw(i, jj, k));
                if (d > 0.0) {
                    out.symmetrization_changed = true;
                    out.max_symmetrization_delta = std::max(out.max_symmetrization_delta, d);
                }
            }
    return out;
}

inline LoadedMatrix load_cubic_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("matrix file " + path + ": " + e.what());
    }
    return load_cubic_json(j);
}

inline json cubic_to_json(const CubicMatrix& P) {
    const int m = P.dim();
    json entries = json::array();
    for (int i = 0; i < m; ++i) {
        json plane = json::array();
        for (int jj = 0; jj < m; ++jj) {
            json row = json::array();
            for (int k = 0; k < m; ++k) row.push_back(P(i, jj, k));
            plane.push_back(std::move(row));
        }
        entries.push_back(std::move(plane));
    }
    return json{{"m", m}, {"entries", std::move(entries)}};
}

// ---- CSV ----

namespace detail {

inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

// Header n,x1,...,xm; one row per trajectory point.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    if (traj.points.empty()) throw std::invalid_argument("write_trajectory_csv: empty trajectory");
    const int m = traj.points.front().dim();
    os << "n";
    for (int i = 1; i <= m; ++i) os << ",x" << i;
    os << "\n";
    for (std::size_t n = 0; n < traj.points.size(); ++n) {
        os << n;
        for (int i = 0; i < m; ++i) os << ',' << detail::fmt17(traj.points[n][i]);
        os << "\n";
    }
}

// Header param,sample_index,value,period; period is empty for aperiodic
// cells.
inline void write_bifurcation_csv(std::ostream& os, const BifurcationScan& scan) {
    os << scan.param_name << ",sample_index,value,period\n";
    for (const BifurcationCell& cell : scan.cells)
        for (std::size_t i = 0; i < cell.samples.size(); ++i) {
            os << detail::fmt17(cell.param) << ',' << i << ','
               << detail::fmt17(cell.samples[i]) << ',';
            if (cell.period) os << *cell.period;
            os << "\n";
        }
}

// ---- report JSON ----

inline json to_json(const ConditionReport& r) {
    json j;
    j["tol"] = r.tol;
    j["cond_i"] = {{"ok", r.cond_i},
                   {"worst_residual", r.cond_i_worst_residual},
                   {"worst_pair", {r.cond_i_worst_i, r.cond_i_worst_j}}};
    json ii = json::array();
    for (const auto& v : r.cond_ii_violations)
        ii.push_back({{"i", v.i}, {"k", v.k}, {"value", v.value}});
    j["cond_ii"] = {{"ok", r.cond_ii}, {"violations", std::move(ii)}};
    auto triples = [](const std::vector<TripleViolation>& vs) {
        json out = json::array();
        for (const auto& v : vs)
            out.push_back({{"i", v.i}, {"j", v.j}, {"k", v.k}, {"margin", v.margin}});
        return out;
    };
    j["cond_iii"] = {{"ok", r.cond_iii}, {"violations", triples(r.cond_iii_violations)}};
    j["cond_iii_prime"] = {{"ok", r.cond_iii_prime},
                           {"violations", triples(r.cond_iii_prime_violations)}};
    json ne = json::array();
    for (const auto& t : r.not_evaluable) ne.push_back({t.i, t.j, t.k});
    j["not_evaluable"] = std::move(ne);
    j["cond_iv_volterra"] = r.cond_iv_volterra;
    j["is_3_stochastic"] = r.is_3_stochastic;
    j["has_negative_offdiagonal"] = r.has_negative_offdiagonal;
    j["sufficient"] = r.sufficient();
    j["necessary"] = r.necessary();
    return j;
}

inline json to_json(const EdgeNecessityReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"i", c.i},
                          {"j", c.j},
                          {"k", c.k},
                          {"lo", c.range.lo},
                          {"hi", c.range.hi},
                          {"inside", c.inside}});
    return json{{"tol", r.tol}, {"all_inside", r.all_inside}, {"checks", std::move(checks)}};
}

inline json to_json(const PreservationVerdict& v) {
    json j;
    j["preserved"] = v.preserved;
    j["tol"] = v.tol;
    j["samples_used"] = v.samples_used;
    j["worst_min_coordinate"] = v.worst_min_coordinate;
    j["worst_sum_deviation"] = v.worst_sum_deviation;
    j["descent_steps_used"] = v.descent_steps_used;
    if (v.counterexample) {
        const Counterexample& c = *v.counterexample;
        j["counterexample"] = {
            {"point", c.point},
            {"coordinate", c.coordinate},
            {"value", c.value},
            {"kind", c.kind == ViolationKind::negative_coordinate ? "negative_coordinate"
                                                                  : "sum_deviation"},
            {"strategy", strategy_name(c.found_by)},
            {"found_by", to_string(c.found_by)}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

inline json to_json(const FixedPointRecord& r) {
    json eig = json::array();
    for (const Complex& l : r.eigenvalues) eig.push_back({{"re", l.real()}, {"im", l.imag()}});
    json j;
    j["point"] = std::vector<double>(r.point.coords().begin(), r.point.coords().end());
    j["eigenvalues"] = std::move(eig);
    j["classification"] = to_string(r.classification);
    j["annotation"] = r.annotation ? json(to_string(*r.annotation)) : json(nullptr);
    j["isolated"] = r.isolated;
    j["residual"] = r.residual;
    return j;
}

inline json to_json(const std::vector<FixedPointRecord>& rs) {
    json arr = json::array();
    for (const auto& r : rs) arr.push_back(to_json(r));
    return arr;
}

inline json to_json(const LyapunovEstimate& e) {
    return json{{"value", e.value},
                {"iterations", e.iterations},
                {"transient_discarded", e.transient_discarded},
                {"standard_error", e.standard_error},
                {"zero_derivative_skips", e.zero_derivative_skips}};
}

inline json to_json(const models::InvarianceReport& r) {
    json j;
    j["set"] = r.set_name;
    j["passed"] = r.passed;
    j["trials"] = r.trials;
    j["max_identity_residual"] = r.max_identity_residual;
    j["max_boundary_residual"] = r.max_boundary_residual;
    j["band_absorptions"] = r.band_absorptions;
    j["witness"] = r.witness ? json{{"point", r.witness->point}, {"detail", r.witness->detail}}
                             : json(nullptr);
    return j;
}

inline json to_json(const models::RatioSequence& s) {
    return json{{"values", s.values},
                {"bound", s.bound},
                {"start_label", models::to_string(s.start_label)},
                {"strictly_monotone", s.strictly_monotone},
                {"bounded", s.bounded},
                {"final_gap", s.final_gap},
                {"truncated", s.truncated},
                {"diagnostic", s.diagnostic}};
}

inline json to_json(const models::LimitPrediction& p) {
    json j;
    j["target"] = models::to_string(p.target);
    j["source"] = models::to_string(p.source);
    j["point"] = p.point ? json(std::vector<double>(p.point->coords().begin(),
                                                    p.point->coords().end()))
                         : json(nullptr);
    return j;
}

inline json to_json(const models::ConjectureStats& s) {
    return json{{"a", s.a},
                {"trials", s.trials},
                {"steps", s.steps},
                {"tol", s.tol},
                {"seed", s.seed},
                {"fraction_converged", s.fraction_converged},
                {"max_final_distance", s.max_final_distance},
                {"final_distances", s.final_distances},
                {"mean_tail_delta", s.mean_tail_delta},
                {"note", s.note}};
}

} // namespace simplexdyn
