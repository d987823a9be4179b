#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace activeperc {

/// Generator used by every sampler. Each run owns its own instance.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a child seed from a parent seed and a path of stream indices.
/// Distinct paths give statistically independent streams; the mapping is a
/// pure function so derived seeds are reproducible across runs and platforms.
constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t s = mix64(parent);
  for (std::uint64_t p : path) s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

// Stream tags used when splitting a trial seed.
enum class Stream : std::uint64_t {
  target = 1,
  start = 2,
  instances = 3,
  labels = 4,
  init = 5,
};

inline Rng make_rng(std::uint64_t seed, Stream stream) {
  return Rng(derive_seed(seed, {static_cast<std::uint64_t>(stream)}));
}

}  // namespace activeperc
