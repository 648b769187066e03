#pragma once

#include <cstdint>
#include <random>

namespace imgnn {

/// splitmix64 finalizer; used both as a stream-derivation mixer and as a
/// stateless per-event coin source.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive a child seed from a parent seed and an arbitrary list of indices.
/// Chaining splitmix64 keeps the derivation order-sensitive, so
/// derive_seed(s, a, b) != derive_seed(s, b, a) in general.
template <typename... Ix>
constexpr std::uint64_t derive_seed(std::uint64_t seed, Ix... ix) {
    ((seed = splitmix64(seed ^ static_cast<std::uint64_t>(ix))), ...);
    return splitmix64(seed);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Uniform double in [0,1).
inline double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

/// Stateless coin in [0,1) keyed by up to four indices; used for the
/// coupled-randomness SIR mode where the same (edge, step) must see the
/// same draw across different seed sets.
template <typename... Ix>
double keyed_uniform01(std::uint64_t seed, Ix... ix) {
    const std::uint64_t h = derive_seed(seed, ix...);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace imgnn
