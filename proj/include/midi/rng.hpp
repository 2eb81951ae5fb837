#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

// Reproducible random number generation.
//
// Generator: xoshiro256++ 1.0 (Blackman & Vigna, public domain), state
// seeded with splitmix64. Uniform doubles take the top 53 bits; normals
// use the Box-Muller transform. The standard-library distributions are
// implementation-defined, so they cannot back the determinism guarantees
// this library makes; everything here is pinned down to the bit.
//
// Streams: derive_seed(seed, stream) mixes a stream id into the seed so
// that draws for different purposes (x values, auxiliary coin flips,
// noise) come from independent sequences.

namespace midi {

namespace detail {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next()
    {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

} // namespace detail

/// Mixes a stream id (or replicate index) into a base seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    return detail::mix64(seed ^ detail::mix64(stream + 0x9E3779B97F4A7C15ull));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
    {
        detail::SplitMix64 sm{derive_seed(seed, stream)};
        for (auto& word : state_)
            word = sm.next();
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
            state_[0] = 1; // all-zero state is invalid for xoshiro
    }

    std::uint64_t next_u64()
    {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal deviate (Box-Muller, second value cached).
    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Fair coin.
    bool coin() { return (next_u64() >> 63) != 0; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k)
    {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace midi
