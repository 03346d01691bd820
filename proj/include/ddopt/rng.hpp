#ifndef DDOPT_RNG_HPP
#define DDOPT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace ddopt {

// splitmix64; used to derive per-instance/per-run seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0x7f4a7c15ULL + index * 0x9e3779b97f4a7c15ULL);
  std::uint64_t a = splitmix64(s);
  (void)splitmix64(s);
  return a ^ index;
}

// Uniform helpers over mt19937_64 raw output. std::uniform_real_distribution is
// implementation-defined; these are pinned so seeded runs reproduce bit-for-bit.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// uniform integer in [0, n)
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

// Marsaglia polar method, explicit so results are reproducible everywhere.
inline double gaussian(std::mt19937_64& rng) {
  for (;;) {
    double u = 2.0 * uniform01(rng) - 1.0;
    double v = 2.0 * uniform01(rng) - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

}  // namespace ddopt

#endif
