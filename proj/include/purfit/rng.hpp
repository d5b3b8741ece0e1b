#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace purfit {

// All randomness flows through mt19937_64 generators seeded by a splitmix64
// chain over (seed, salt...). The chain and the unit-interval draw below are
// fully specified, so identical (seed, salts) reproduce identical streams on
// any conforming standard library. Recorded in run manifests as
// kPrngAlgorithm.
inline constexpr std::string_view kPrngAlgorithm = "mt19937_64/splitmix64-substreams";

// splitmix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt_a = 0,
                                    std::uint64_t salt_b = 0, std::uint64_t salt_c = 0) {
  std::uint64_t state = mix64(seed);
  state = mix64(state ^ mix64(salt_a));
  state = mix64(state ^ mix64(salt_b));
  state = mix64(state ^ mix64(salt_c));
  return state;
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t salt_a = 0,
                                   std::uint64_t salt_b = 0, std::uint64_t salt_c = 0) {
  return std::mt19937_64(derive_seed(seed, salt_a, salt_b, salt_c));
}

// Uniform double in [0, 1) with 53 random bits; bit-stable across platforms,
// unlike std::uniform_real_distribution.
inline double unit_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace purfit
