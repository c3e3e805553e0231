#pragma once

#include <cstdint>
#include <string_view>

namespace algotrace {

/// Identifier recorded in manifests; bump it whenever the stream below changes.
inline constexpr std::string_view kPrngName = "splitmix64-counter/v1";

/// SplitMix64 output finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// 64-bit FNV-1a, used to fold identifiers into seeds.
constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : text) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Counter-based generator: draw k is mix64(mix64(key) + k * golden_gamma).
/// Every draw is a pure function of (key, k), so streams are identical on all
/// platforms and any draw can be reproduced in isolation.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key) : base_(mix64(key)) {}

  constexpr std::uint64_t next_u64() {
    ++counter_;
    return mix64(base_ + counter_ * kGamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); bound must be positive. Rejection keeps it unbiased.
  constexpr std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % bound;
  }

  constexpr bool bernoulli(double p) { return uniform() < p; }

  [[nodiscard]] constexpr std::uint64_t draws() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

enum class Split : std::uint8_t { Train, Val, Test };

std::string_view to_string(Split split);
Split split_from_string(std::string_view text);

/// Per-trajectory seed: hash(seed, algorithm, split, index). Independent of
/// generation order, so serial and parallel runs agree byte for byte.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view algorithm_id, Split split,
                          std::uint64_t index);

}  // namespace algotrace
