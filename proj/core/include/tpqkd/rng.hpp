#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace tpqkd {

// Derives the seed of trial `index` from a base seed. This is the i-th output
// of a splitmix64 stream seeded with `base`; the finalizer is a bijection, so
// distinct indices always map to distinct seeds.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic random stream. mt19937_64 is fully specified by the standard
// and the conversions below avoid std::uniform_*_distribution, whose output
// is implementation-defined; two streams with the same seed produce the same
// bits on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  int next_bit() { return static_cast<int>(next_u64() >> 63); }

  // Uniform in [0, bound). Plain modulo: the bias is < bound / 2^64, far
  // below anything observable at the sizes used here.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::next_below: bound must be positive");
    return next_u64() % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tpqkd
