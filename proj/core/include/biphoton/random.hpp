#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace biphoton {

/// FNV-1a 64-bit hash, used for config digests and seed derivation.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Derives an independent stream seed from a base seed, a purpose tag and an
/// index. Purpose tags keep unrelated experiments decorrelated even when they
/// share a base seed; bootstrap resamples use (base, "bootstrap", i), i.e. the
/// documented base-seed-plus-index rule.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view purpose, std::uint64_t index = 0) {
  std::uint64_t h = fnv1a(purpose);
  h ^= base + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= index * 0xbf58476d1ce4e5b9ull;
  h ^= h >> 31;
  h *= 0x94d049bb133111ebull;
  h ^= h >> 29;
  return h;
}

using Rng = std::mt19937_64;

}  // namespace biphoton
