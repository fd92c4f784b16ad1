#pragma once

#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace toprisk {

/// SplitMix64. Chosen because its output sequence is fully specified, so
/// seeded stress samples are reproducible across platforms and languages.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t operator()() noexcept { return next(); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  /// Uniform integer in [0, bound) as next() % bound. The modulo bias is at
  /// most bound / 2^64.
  std::uint64_t below(std::uint64_t bound) noexcept { return next() % bound; }

  /// Uniform double in [0, 1) from the top 53 bits.
  double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// `count` distinct indices from [0, n) via a partial Fisher-Yates shuffle
/// (position i swaps with i + below(n - i)), returned in ascending order.
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count, SplitMix64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count && i < n; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(std::min(count, n));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace toprisk
