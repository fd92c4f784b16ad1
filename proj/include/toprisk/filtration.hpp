#pragma once

// Explicit Vietoris-Rips filtration: every simplex of dimension <= max_dim + 1
// whose diameter is within the threshold, listed in filtration order.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "toprisk/error.hpp"
#include "toprisk/point_cloud.hpp"

namespace toprisk {

inline constexpr int kMaxHomologyDim = 2;

/// Scale cap for a Rips construction; nullopt means AUTO (the largest
/// pairwise distance).
using Threshold = std::optional<double>;
inline constexpr std::nullopt_t kAutoThreshold = std::nullopt;

inline void check_max_dim(int max_dim) {
  if (max_dim < 0 || max_dim > kMaxHomologyDim)
    throw Error(ErrorKind::Parameter, "max_dim must be 0, 1 or 2, got " + std::to_string(max_dim));
}

inline double resolve_threshold(const DistanceMatrix& dm, const Threshold& threshold) {
  if (!threshold) return dm.max_entry();
  if (!(*threshold >= 0.0))
    throw Error(ErrorKind::Parameter, "threshold must be nonnegative, got " + std::to_string(*threshold));
  return *threshold;
}

/// A simplex of dimension 0..3 with sorted vertex indices.
struct Simplex {
  std::array<std::uint32_t, 4> vertex{};
  int dim = 0;
  double value = 0.0;

  std::span<const std::uint32_t> vertices() const noexcept {
    return std::span<const std::uint32_t>(vertex.data(), static_cast<std::size_t>(dim) + 1);
  }

  bool operator==(const Simplex&) const = default;
};

/// Filtration order: value, then dimension, then lexicographic vertices.
inline bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.dim != b.dim) return a.dim < b.dim;
  return std::lexicographical_compare(a.vertices().begin(), a.vertices().end(),
                                      b.vertices().begin(), b.vertices().end());
}

struct Filtration {
  std::vector<Simplex> simplices;
  double threshold = 0.0;
  int max_dim = kMaxHomologyDim;
  std::size_t vertex_count = 0;

  std::size_t size() const noexcept { return simplices.size(); }

  std::size_t count_dim(int dim) const {
    return static_cast<std::size_t>(std::count_if(simplices.begin(), simplices.end(),
                                                  [dim](const Simplex& s) { return s.dim == dim; }));
  }
};

namespace detail {

inline void extend_cliques(const DistanceMatrix& dm, double threshold, int top_dim,
                           std::array<std::uint32_t, 4>& stack, int depth, double diameter,
                           std::vector<Simplex>& out) {
  out.push_back(Simplex{stack, depth, diameter});
  for (std::size_t k = depth + 1; k < stack.size(); ++k) out.back().vertex[k] = 0;
  if (depth == top_dim) return;
  const std::size_t n = dm.size();
  for (std::uint32_t next = stack[depth] + 1; next < n; ++next) {
    double d = diameter;
    bool fits = true;
    for (int k = 0; k <= depth && fits; ++k) {
      d = std::max(d, dm(stack[k], next));
      fits = d <= threshold;
    }
    if (!fits) continue;
    stack[depth + 1] = next;
    extend_cliques(dm, threshold, top_dim, stack, depth + 1, d, out);
  }
}

}  // namespace detail

/// All simplices of dimension <= max_dim + 1 with diameter <= threshold, in
/// filtration order. Size grows as O(n^(max_dim + 2)).
inline Filtration build_rips_filtration(const DistanceMatrix& dm, int max_dim,
                                        const Threshold& threshold = kAutoThreshold) {
  check_max_dim(max_dim);
  const double limit = resolve_threshold(dm, threshold);
  Filtration f;
  f.threshold = limit;
  f.max_dim = max_dim;
  f.vertex_count = dm.size();

  std::array<std::uint32_t, 4> stack{};
  for (std::uint32_t v = 0; v < dm.size(); ++v) {
    stack[0] = v;
    detail::extend_cliques(dm, limit, max_dim + 1, stack, 0, 0.0, f.simplices);
  }
  std::sort(f.simplices.begin(), f.simplices.end(), filtration_less);
  return f;
}

}  // namespace toprisk
