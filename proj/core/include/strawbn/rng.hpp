#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace strawbn {

/// Deterministic randomness with a documented cross-platform contract:
/// the engine is std::mt19937_64 (whose output sequence is fixed by the
/// standard) and every derived quantity below is defined purely in terms of
/// its 64-bit draws, never through implementation-defined std
/// distributions. Same seed, same bytes, everywhere.
namespace rng {

/// SplitMix64 step, used to derive independent stream seeds from a master
/// seed.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for sub-stream `stream` of `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& gen);

/// Uniform index in [0, n), unbiased (rejection sampling). n must be > 0.
std::size_t uniform_index(std::mt19937_64& gen, std::size_t n);

/// A point drawn uniformly from the (k-1)-simplex: normalized standard
/// exponentials. k must be > 0.
std::vector<double> simplex_sample(std::mt19937_64& gen, std::size_t k);

/// Index distributed according to `weights` (nonnegative, not necessarily
/// normalized). Falls back to the last positive entry on rounding spill.
std::size_t categorical(std::mt19937_64& gen, std::span<const double> weights);

}  // namespace rng

}  // namespace strawbn
