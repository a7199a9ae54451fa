#pragma once

#include <cstdint>
#include <random>

namespace malevic {

using Rng = std::mt19937_64;

// Independent generator for one work unit, derived from the master seed,
// a stream tag (task or purpose) and the unit index.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t index);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace malevic
