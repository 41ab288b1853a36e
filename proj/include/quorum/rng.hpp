#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace quorum {

// FNV-1a 64-bit string hash. Used to derive per-case / per-unit seeds from
// string identifiers so results never depend on processing order.
constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// SplitMix64: tiny counter-friendly generator with a well-mixed output
// function. We avoid std:: distributions entirely: their outputs are not
// pinned across standard library versions, and reproducibility down to the
// byte is part of this library's contract.
struct Rng {
  std::uint64_t state = 0;

  explicit Rng(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1); 53-bit mantissa.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound) via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) return 0;
    std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Standard normal via Box-Muller (one value per call; no cached spare so
  // the stream content is a pure function of the call index).
  double next_normal() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }
};

// Combine a master seed with a stream identifier into an independent seed.
// The multiplier is the golden-ratio constant SplitMix64 itself uses; one
// extra mixing round keeps related streams apart.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed ^ (stream * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// First k elements of a random permutation of {0..n-1} (partial
// Fisher-Yates). Used for sampling without replacement.
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  if (k > n) k = n;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + std::size_t(rng.next_below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

// Seeded Fisher-Yates shuffle of an index vector.
inline void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::size_t j = std::size_t(rng.next_below(i));
    std::swap(idx[i - 1], idx[j]);
  }
}

}  // namespace quorum
