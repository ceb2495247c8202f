#pragma once

#include <cstdint>
#include <random>

namespace fts {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of sub-stream `index` derived from `seed`; streams for distinct
/// indices are statistically independent for practical purposes.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

inline Rng make_rng(std::uint64_t seed, std::uint64_t index) { return Rng(stream_seed(seed, index)); }

}  // namespace fts
