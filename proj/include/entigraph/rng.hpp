#pragma once

#include <cstdint>
#include <random>

namespace entigraph {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for the independent substream `index` of a run seeded with `seed`.
/// Replicate r, tree r, start r, ... all draw from substream_rng(seed, r), so
/// results never depend on how work is scheduled across threads.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

inline Rng substream_rng(std::uint64_t seed, std::uint64_t index) {
    return Rng{substream_seed(seed, index)};
}

}  // namespace entigraph
