#pragma once

// Seeding rules. Every random stream is a std::mt19937_64 whose seed is
// derive_seed(master, stream): the SplitMix64 output after mixing the master
// seed with the stream index. Replicate r of a study uses stream r, so
// results do not depend on the order in which replicates run.

#include <cstdint>
#include <random>
#include <vector>

#include "arithstat/error.hpp"

namespace arithstat::rng {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ (stream * 0xd1b54a32d192ed03ULL));
}

inline Engine make_engine(std::uint64_t master, std::uint64_t stream = 0) {
  return Engine(derive_seed(master, stream));
}

/// Uniform on [0, 1) from the top 53 bits.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// i.i.d. Bernoulli(p) draws as 0/1 values.
inline std::vector<std::int8_t> bernoulli_sequence(std::uint64_t n, double p,
                                                   std::uint64_t seed) {
  detail::require(p >= 0.0 && p <= 1.0, "bernoulli p must be in [0, 1]");
  auto engine = make_engine(seed);
  std::vector<std::int8_t> out(n);
  for (auto& x : out) x = uniform01(engine) < p ? 1 : 0;
  return out;
}

}  // namespace arithstat::rng
