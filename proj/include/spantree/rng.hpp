#pragma once

#include <cstdint>

namespace spantree {

// Finalizer of splitmix64. Bijective on 64-bit values, full avalanche.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives the seed of an independent sub-stream (per trial, per tree, per
// shard...). Deterministic: the same (seed, stream) always yields the same
// sub-seed, regardless of how work is split across threads.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix64(seed ^ mix64(stream + 0xd1b54a32d192ed03ULL));
}

// Small, fast, fully specified generator. We avoid <random> distributions:
// their output is implementation-defined, and reports must be byte-stable.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Bounded rejection, no modulo bias.
    std::uint64_t next_below(std::uint64_t n) noexcept {
        const std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next();
            if (r <= UINT64_MAX - rem) return r % n;
        }
    }

private:
    std::uint64_t state_;
};

// Bernoulli decision driving the coupled graph G(N, p): a pure function of
// (seed, i, j), independent of any restriction size.
inline double coupled_edge_unit(std::uint64_t seed, std::uint32_t i, std::uint32_t j) noexcept {
    const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | j;
    return static_cast<double>(mix64(seed ^ mix64(key)) >> 11) * 0x1.0p-53;
}

}  // namespace spantree
