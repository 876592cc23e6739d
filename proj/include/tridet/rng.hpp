#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tridet {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_label(std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Seed of the sub-stream named `purpose` under `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose) noexcept {
  return mix64(mix64(seed) ^ hash_label(purpose));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

inline Rng make_stream(std::uint64_t seed, std::string_view purpose) {
  return Rng{derive_seed(seed, purpose)};
}

}  // namespace tridet
