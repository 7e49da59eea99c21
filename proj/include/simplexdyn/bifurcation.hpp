#pragma once

// Bifurcation scan over a one-parameter family of interval maps: for each
// parameter value iterate through a transient, keep the attractor tail, and
// label it with the detected period (or none). Cells are independent, so the
// scan is deterministic regardless of evaluation order.

#include "simplexdyn/map1d.hpp"
#include "simplexdyn/period.hpp"

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplexdyn {

struct BifurcationCell {
    double param = 0.0;
    std::vector<double> samples;      // attractor tail, in orbit order
    std::optional<int> period;        // nullopt = aperiodic at this resolution
    bool escaped = false;             // orbit left a safe bounding box
};

struct BifurcationScan {
    std::string param_name;
    double x0 = 0.3;
    long transient = 1000;
    int keep = 256;
    int max_period = 64;
    double tol = 1e-6;
    std::vector<BifurcationCell> cells;
};

inline std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("linspace: need at least one point");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        out.push_back(lo);
        return out;
    }
    for (int i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

inline BifurcationScan bifurcation_scan(const std::function<QuadMap1D(double)>& family,
                                        std::string param_name, std::span<const double> params,
                                        long transient = 1000, int keep = 256,
                                        int max_period = 64, double tol = 1e-6, double x0 = 0.3) {
    if (transient < 0) throw std::invalid_argument("bifurcation_scan: transient must be >= 0");
    if (max_period < 1) throw std::invalid_argument("bifurcation_scan: max_period must be >= 1");
    if (keep < 2 * max_period)
        throw std::invalid_argument("bifurcation_scan: keep must be at least 2*max_period");
    if (!(tol >= 0.0)) throw std::invalid_argument("bifurcation_scan: tol must be nonnegative");

    BifurcationScan scan;
    scan.param_name = std::move(param_name);
    scan.x0 = x0;
    scan.transient = transient;
    scan.keep = keep;
    scan.max_period = max_period;
    scan.tol = tol;
    scan.cells.reserve(params.size());

    for (double p : params) {
        const QuadMap1D g = family(p);
        BifurcationCell cell;
        cell.param = p;
        double x = x0;
        for (long i = 0; i < transient && !cell.escaped; ++i) {
            x = g(x);
            cell.escaped = !(std::abs(x) <= 1e6);
        }
        if (!cell.escaped) {
            cell.samples.reserve(static_cast<std::size_t>(keep));
            for (int i = 0; i < keep && !cell.escaped; ++i) {
                cell.samples.push_back(x);
                x = g(x);
                cell.escaped = !(std::abs(x) <= 1e6);
            }
        }
        if (cell.escaped) {
            cell.samples.clear();
            cell.period = std::nullopt;
        } else {
            cell.period = detect_period(cell.samples, max_period, tol);
        }
        scan.cells.push_back(std::move(cell));
    }
    return scan;
}

} // namespace simplexdyn
