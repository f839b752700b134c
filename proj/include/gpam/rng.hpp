#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gpam {

// Counter-based generator: every draw is a pure function of its key, so
// parallel sampling does not depend on evaluation order.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct CounterKey {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
};

inline std::uint64_t counter_bits(const CounterKey& key, std::uint64_t draw) {
  std::uint64_t h = mix64(key.seed);
  h = mix64(h ^ key.stream);
  h = mix64(h ^ key.a);
  h = mix64(h ^ key.b);
  return mix64(h ^ draw);
}

// Uniform on (0, 1).
inline double counter_uniform(const CounterKey& key, std::uint64_t draw) {
  return (static_cast<double>(counter_bits(key, draw) >> 11) + 0.5) *
         0x1.0p-53;
}

// Pair of independent standard normals (Box–Muller on draws 2d, 2d+1).
inline void counter_normal_pair(const CounterKey& key, std::uint64_t d,
                                double& z0, double& z1) {
  const double u1 = counter_uniform(key, 2 * d);
  const double u2 = counter_uniform(key, 2 * d + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(t);
  z1 = r * std::sin(t);
}

inline std::uint64_t mode_key(int k) {
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(k));
}

}  // namespace gpam
