/// @file  stream_seed.hpp
/// @brief Internal helper deriving independent PRNG streams from one seed.

#pragma once

#include <cstdint>

namespace lore::detail {

// splitmix64 finalizer; decorrelates seed+salt combinations so that the
// space generator and the triplet sampler do not share a raw stream.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

inline constexpr std::uint64_t kSpaceStream = 1;
inline constexpr std::uint64_t kTripletStream = 2;
inline constexpr std::uint64_t kFoldStream = 3;

}  // namespace lore::detail
