#include "strawbn/rng.hpp"

#include <cmath>

#include "strawbn/errors.hpp"

namespace strawbn::rng {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t state = master;
  std::uint64_t out = 0;
  for (std::uint64_t i = 0; i <= stream; ++i) out = splitmix64(state);
  return out;
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
  if (n == 0) throw Error("uniform_index needs n > 0");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t draw;
  do {
    draw = gen();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % n);
}

std::vector<double> simplex_sample(std::mt19937_64& gen, std::size_t k) {
  if (k == 0) throw Error("simplex_sample needs k > 0");
  std::vector<double> out(k);
  double sum = 0.0;
  for (auto& v : out) {
    // -log of a uniform in (0, 1]; shifting by 2^-53 keeps log finite.
    v = -std::log(1.0 - uniform01(gen));
    sum += v;
  }
  if (sum == 0.0) return std::vector<double>(k, 1.0 / static_cast<double>(k));
  for (auto& v : out) v /= sum;
  return out;
}

std::size_t categorical(std::mt19937_64& gen, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) throw Error("categorical needs a positive total weight");
  const double u = uniform01(gen) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) last_positive = i;
    acc += weights[i];
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace strawbn::rng
