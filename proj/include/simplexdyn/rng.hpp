#pragma once

// Deterministic random utilities. All sampling in the library goes through
// this generator so results are bit-for-bit reproducible across platforms;
// independent streams are derived from one user seed, which keeps batched
// computations order-independent.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace simplexdyn {

// splitmix64: tiny, well-distributed, and fully specified by its constants.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Seed for an independent substream (batch, trial) of a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    g.next();
    return g.next();
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : g_(seed) {}

    std::uint64_t next_u64() noexcept { return g_.next(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() noexcept { return static_cast<double>(g_.next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    // Standard exponential via inversion; argument of log stays in (0, 1].
    double exponential() noexcept { return -std::log1p(-uniform()); }

    // Uniform point of the simplex S^{m-1} (Dirichlet(1,...,1)): normalized
    // i.i.d. exponentials.
    std::vector<double> simplex_uniform(int m) {
        if (m < 2) throw std::invalid_argument("simplex_uniform: dimension must be at least 2");
        std::vector<double> x(static_cast<std::size_t>(m));
        double sum = 0.0;
        for (auto& v : x) {
            v = exponential();
            sum += v;
        }
        if (sum <= 0.0) {  // all draws zero: not reachable in practice
            x.assign(x.size(), 1.0 / static_cast<double>(m));
            return x;
        }
        for (auto& v : x) v /= sum;
        return x;
    }

private:
    SplitMix64 g_;
};

} // namespace simplexdyn
