#pragma once

// Counter-style pseudo-random numbers for reproducible simulations.
//
// Every random decision in a simulation draws from a stream identified by
// (seed, trial, role/round indices). Streams are derived by hashing the
// indices together, so trial 7 produces the same playout whether it runs
// first, last, or on another thread. This is the reproducibility contract:
// same seed + same config = identical reports, regardless of scheduling.

#include <cstdint>
#include <initializer_list>

namespace censorgames {

// Finalizer from the splitmix64 generator (Steele, Lea, Flood 2014).
// Bijective on 64-bit values with strong avalanche behavior.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Collapses (seed, index, index, ...) into one stream identifier.
constexpr std::uint64_t derive_stream(std::uint64_t seed,
                                      std::initializer_list<std::uint64_t> indices) {
    std::uint64_t h = mix64(seed);
    for (std::uint64_t ix : indices)
        h = mix64(h ^ (ix + 0x9e3779b97f4a7c15ULL));
    return h;
}

// Small generator seeded from a stream identifier.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t stream) : state_(stream) {}

    constexpr std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    constexpr double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    constexpr double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection-free multiply-shift; bias is < 2^-64 * n, negligible here.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    constexpr bool bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
};

}  // namespace censorgames
