#pragma once

// Cubic coefficient matrix P(i,j,k) defining a quadratic map on R^m,
//   x'_k = sum_{i,j} P(i,j,k) x_i x_j.
// Only the part of P symmetric in (i,j) affects the map, so most routines
// require a symmetrized matrix (P(i,j,k) == P(j,i,k) exactly).

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace simplexdyn {

class CubicMatrix {
public:
    explicit CubicMatrix(int m)
        : m_(m), e_(static_cast<std::size_t>(m) * m * m, 0.0) {
        if (m < 2) throw std::invalid_argument("CubicMatrix: dimension must be at least 2");
    }

    int dim() const noexcept { return m_; }

    double operator()(int i, int j, int k) const { return e_[idx(i, j, k)]; }
    double& operator()(int i, int j, int k) { return e_[idx(i, j, k)]; }

    const std::vector<double>& data() const noexcept { return e_; }

    bool all_finite() const noexcept {
        for (double v : e_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    // Exact equality of the two index orders; symmetrize() guarantees this.
    bool is_symmetric() const noexcept {
        for (int i = 0; i < m_; ++i)
            for (int j = i + 1; j < m_; ++j)
                for (int k = 0; k < m_; ++k)
                    if (e_[idx(i, j, k)] != e_[idx(j, i, k)]) return false;
        return true;
    }

    bool operator==(const CubicMatrix& other) const noexcept {
        return m_ == other.m_ && e_ == other.e_;
    }

private:
    std::size_t idx(int i, int j, int k) const {
        assert(i >= 0 && i < m_ && j >= 0 && j < m_ && k >= 0 && k < m_);
        return (static_cast<std::size_t>(i) * m_ + j) * static_cast<std::size_t>(m_) + k;
    }

    int m_;
    std::vector<double> e_;
};

// Averages mirrored entries in the first two indices. Idempotent, and both
// mirrored slots receive the identical rounded value.
inline CubicMatrix symmetrize(const CubicMatrix& raw) {
    if (!raw.all_finite()) throw std::invalid_argument("symmetrize: non-finite entry");
    CubicMatrix out(raw.dim());
    const int m = raw.dim();
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const double v = (i == j) ? raw(i, i, k) : 0.5 * (raw(i, j, k) + raw(j, i, k));
                out(i, j, k) = v;
                out(j, i, k) = v;
            }
    return out;
}

} // namespace simplexdyn
