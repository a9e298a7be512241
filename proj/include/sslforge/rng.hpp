#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace sslforge {

// Deterministic 64-bit generator: xoshiro256** seeded through splitmix64.
// The full draw discipline is fixed here so that synthetic data and every
// seeded algorithm reproduce exactly for a given seed:
//   - next_u64(): one xoshiro256** step
//   - next_double(): 53-bit mantissa in [0, 1)
//   - next_index(n): unbiased rejection sampling on next_u64()
//   - gaussian(): Box-Muller, two uniforms per draw, cosine branch only
//   - shuffle(): Fisher-Yates from the back
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the 256-bit state
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, n), n >= 1. Rejection keeps it unbiased.
    std::size_t next_index(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return static_cast<std::size_t>(v % bound);
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms.
    double gaussian() {
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    double gaussian(double mean, double sd) { return mean + sd * gaussian(); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = next_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derives an independent stream, e.g. per restart or per experiment.
    Rng spawn(std::uint64_t salt) {
        return Rng(next_u64() ^ (salt * 0x9E3779B97F4A7C15ULL));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
};

// n distinct indices drawn from [0, pool) without replacement, in draw order.
inline std::vector<std::size_t> sample_without_replacement(Rng& rng,
                                                           std::size_t pool,
                                                           std::size_t n) {
    std::vector<std::size_t> idx(pool);
    for (std::size_t i = 0; i < pool; ++i) idx[i] = i;
    if (n > pool) n = pool;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + rng.next_index(pool - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(n);
    return idx;
}

}  // namespace sslforge
