#pragma once

#include <cstdint>
#include <random>

namespace ucblt {

/// Generator used for every stochastic draw. All state is explicit: callers own
/// an instance and pass it by reference.
using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based child seed: depends only on (base, stream), never on the
/// order in which streams are requested.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
    return mix64(mix64(base) ^ mix64(stream + 0xD1B54A32D192ED03ULL));
}

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

}  // namespace ucblt
