#pragma once

#include <cmath>
#include <cstdint>

namespace xychain {

// splitmix64 (Vigna 2015). One 64-bit word of state, full-period, passes
// BigCrush; the finalizer doubles as an avalanche mixer for seed derivation.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based stream split: each (master_seed, index) pair maps to an
// independent stream seed, so realizations can be generated in any order.
inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = master_seed ^ (0xA0761D6478BD642FULL * (index + 1));
    return splitmix64_next(s);
}

// Deterministic Gaussian stream. Uniforms come from splitmix64; normals use
// the Marsaglia polar transform with the usual pair cache. The draw order is
// part of the reproducibility contract, so no library distribution is used.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : state_(seed) {}

    // in [0, 1)
    double uniform() {
        return static_cast<double>(splitmix64_next(state_) >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * f;
        has_cached_ = true;
        return u * f;
    }

  private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace xychain
