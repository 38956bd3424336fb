#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gatetrim {

// Deterministic random stream.
//
// std::mt19937_64 output is fully specified by the standard, but the
// distribution adaptors are not, so uniform and gaussian draws are mapped
// by hand.  Identical seeds therefore produce identical streams on every
// platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n); n must be positive.  Uses rejection
  // sampling so the result is unbiased and reproducible.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return draw % n;
  }

  // Standard normal via Box-Muller; one value per call, no caching,
  // so the stream position is a pure function of the call count.
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 step, used to hash seed material into stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d2b742d049bb14ULL;
  return z ^ (z >> 31);
}

// Collapses (seed, a, b) into one stream seed.  Used to give every
// trial of an experiment its own independent, reproducible stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b) {
  std::uint64_t state = seed;
  std::uint64_t h = splitmix64(state);
  state ^= a + 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64(state);
  state ^= b + 0xc2b2ae3d27d4eb4fULL;
  h ^= splitmix64(state);
  return h;
}

}  // namespace gatetrim
