#include "driftscan/numerics/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace driftscan::num {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : key_(mix64(seed + kGolden)), ctr_(0) {}

std::uint64_t Rng::next_u64() {
  ctr_ += 1;
  return mix64(key_ + ctr_ * kGolden);
}

double Rng::next_double() {
  // 53 high bits -> [0, 1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

double Rng::normal() {
  // Guard u1 away from zero so log() stays finite.
  double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::index: n must be positive");
  // Lemire multiply-shift; bias is negligible for n << 2^64 and the result
  // is a pure function of the draw.
  unsigned __int128 wide = static_cast<unsigned __int128>(next_u64());
  return static_cast<std::size_t>((wide * n) >> 64);
}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(mix64(key_ ^ mix64(stream + kGolden)), 0);
}

}  // namespace driftscan::num
