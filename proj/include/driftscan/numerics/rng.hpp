#pragma once

#include <cstdint>
#include <vector>

namespace driftscan::num {

// Counter-based pseudo-random generator (splitmix64 finalizer over a keyed
// counter). Every stochastic operation in the toolkit takes one of these,
// seeded explicitly, so results are reproducible across runs and platforms.
//
// split() derives an independent stream from a stream id without advancing
// the parent, which gives stable per-epoch / per-trial / per-batch streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double next_double();

  double uniform(double lo, double hi);

  // Standard normal via Box-Muller. Consumes two raw draws per call.
  double normal();

  // Uniform index in [0, n). n must be > 0.
  std::size_t index(std::size_t n);

  // Independent stream identified by `stream`; deterministic in (seed, stream).
  Rng split(std::uint64_t stream) const;

 private:
  Rng(std::uint64_t key, std::uint64_t ctr) : key_(key), ctr_(ctr) {}
  std::uint64_t key_;
  std::uint64_t ctr_;
};

// Fisher-Yates shuffle driven by rng.
template <typename T>
void shuffle(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = rng.index(i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace driftscan::num
