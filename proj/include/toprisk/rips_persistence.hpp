#pragma once

// Rips persistence without materializing the filtration.
//
// Simplices are ordered by (diameter, lexicographic vertices), the order
// build_rips_filtration produces, and are identified by their vertices packed
// 16 bits apiece. H0 comes from reducing the edge boundary columns. Beyond
// that, almost every triangle and tetrahedron is positive, and reducing
// positive boundary columns to zero is where a plain boundary reduction
// spends nearly all of its time. H1 and H2 pairs are therefore read off the
// transposed matrices: the coboundary columns of the cycle-creating edges
// and triangles, processed from youngest to oldest, whose pivot is the oldest
// cofacet. The pivot pairs are the same (birth, death) pairs. Simplices paired
// in the dimension below are skipped, since their coboundary columns reduce to
// zero (clearing). Most columns are settled by their oldest cofacet alone and
// are never materialized.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <unordered_map>
#include <vector>

#include "toprisk/error.hpp"
#include "toprisk/filtration.hpp"
#include "toprisk/persistence.hpp"
#include "toprisk/point_cloud.hpp"

namespace toprisk {

namespace detail {

inline constexpr std::uint32_t kNoRow = std::numeric_limits<std::uint32_t>::max();

struct RankedSimplex {
  double value;
  std::uint64_t key;  // vertices ascending, 16 bits each, first vertex most significant
};

inline bool ranked_less(const RankedSimplex& a, const RankedSimplex& b) {
  return a.value < b.value || (a.value == b.value && a.key < b.key);
}

template <std::size_t K>
std::array<std::uint32_t, K> unpack(std::uint64_t key) {
  std::array<std::uint32_t, K> v{};
  for (std::size_t i = 0; i < K; ++i) v[K - 1 - i] = static_cast<std::uint32_t>((key >> (16 * i)) & 0xFFFF);
  return v;
}

// Key of vertices plus `extra`. For fixed vertices the key grows with extra,
// so among equal-valued cofacets the smallest extra vertex is the oldest.
template <std::size_t K>
std::uint64_t pack_with(const std::array<std::uint32_t, K>& vertices, std::uint32_t extra) {
  std::uint64_t key = 0;
  bool placed = false;
  for (std::uint32_t v : vertices) {
    if (!placed && extra < v) {
      key = (key << 16) | extra;
      placed = true;
    }
    key = (key << 16) | v;
  }
  if (!placed) key = (key << 16) | extra;
  return key;
}

// Boundary-column reduction over vertex rows, used for the edge pass.
class VertexColumnReducer {
 public:
  explicit VertexColumnReducer(std::size_t vertices) : owner_(vertices, kNoRow) {}

  /// Reduces the column {a, b} (a < b); returns the pivot vertex or kNoRow.
  std::uint32_t reduce(std::uint32_t a, std::uint32_t b) {
    col_.assign({b, a});
    while (!col_.empty()) {
      const std::uint32_t low = col_.front();
      const std::uint32_t slot = owner_[low];
      if (slot == kNoRow) {
        owner_[low] = static_cast<std::uint32_t>(columns_.size());
        columns_.push_back(col_);
        return low;
      }
      scratch_.clear();
      std::set_symmetric_difference(col_.begin(), col_.end(), columns_[slot].begin(), columns_[slot].end(),
                                    std::back_inserter(scratch_), std::greater<>());
      col_.swap(scratch_);
    }
    return kNoRow;
  }

  bool is_pivot(std::uint32_t vertex) const { return owner_[vertex] != kNoRow; }

 private:
  std::vector<std::uint32_t> owner_;
  std::vector<std::vector<std::uint32_t>> columns_;  // descending
  std::vector<std::uint32_t> col_, scratch_;
};

// Coboundary reduction for simplices with K vertices (K = 2 edges, K = 3
// triangles); cofacets have K + 1 vertices.
template <std::size_t K>
class CoboundaryReducer {
 public:
  CoboundaryReducer(const DistanceMatrix& dm, double cutoff) : dm_(dm), cutoff_(cutoff) {}

  /// Reduces the coboundary column of `s`. `s` must be younger than every
  /// simplex reduced before it. Returns the pivot cofacet, or value +inf
  /// when the column reduces to zero.
  RankedSimplex reduce(const RankedSimplex& s) {
    const RankedSimplex first = oldest_cofacet(s);
    if (std::isinf(first.value)) return first;
    combo_.assign({s});
    if (!owner_.contains(first.key)) {
      settle(first.key);
      return first;
    }

    cofacets(s, work_);
    while (!work_.empty()) {
      const RankedSimplex pivot = work_.front();
      const auto found = owner_.find(pivot.key);
      if (found == owner_.end()) {
        settle(pivot.key);
        return pivot;
      }
      const std::size_t begin = offsets_[found->second];
      const std::size_t end = offsets_[found->second + 1];
      for (std::size_t i = begin; i < end; ++i) {
        cofacets(combos_[i], addend_);
        add(work_, addend_);
      }
      combo_scratch_.clear();
      std::set_symmetric_difference(combo_.begin(), combo_.end(),
                                    combos_.begin() + static_cast<std::ptrdiff_t>(begin),
                                    combos_.begin() + static_cast<std::ptrdiff_t>(end),
                                    std::back_inserter(combo_scratch_), ranked_less);
      combo_.swap(combo_scratch_);
    }
    return {kInfinity, 0};
  }

  /// True when the cofacet `key` has been paired.
  bool is_pivot(std::uint64_t key) const { return owner_.contains(key); }

 private:
  void settle(std::uint64_t pivot_key) {
    owner_.emplace(pivot_key, static_cast<std::uint32_t>(offsets_.size() - 1));
    combos_.insert(combos_.end(), combo_.begin(), combo_.end());
    offsets_.push_back(combos_.size());
  }

  double cofacet_value(const RankedSimplex& s, const std::array<std::uint32_t, K>& v, std::uint32_t x) const {
    double value = s.value;
    for (std::uint32_t u : v) value = std::max(value, dm_(u, x));
    return value;
  }

  RankedSimplex oldest_cofacet(const RankedSimplex& s) const {
    const auto v = unpack<K>(s.key);
    const auto n = static_cast<std::uint32_t>(dm_.size());
    double best = kInfinity;
    std::uint32_t best_x = kNoRow;
    for (std::uint32_t x = 0; x < n; ++x) {
      const double value = cofacet_value(s, v, x);
      // Strict comparison keeps the smallest x among ties.
      if (value < best && value <= cutoff_ && std::find(v.begin(), v.end(), x) == v.end()) {
        best = value;
        best_x = x;
      }
    }
    if (best_x == kNoRow) return {kInfinity, 0};
    return {best, pack_with(v, best_x)};
  }

  void cofacets(const RankedSimplex& s, std::vector<RankedSimplex>& out) const {
    const auto v = unpack<K>(s.key);
    const auto n = static_cast<std::uint32_t>(dm_.size());
    out.clear();
    for (std::uint32_t x = 0; x < n; ++x) {
      if (std::find(v.begin(), v.end(), x) != v.end()) continue;
      const double value = cofacet_value(s, v, x);
      if (value <= cutoff_) out.push_back({value, pack_with(v, x)});
    }
    std::sort(out.begin(), out.end(), ranked_less);
  }

  // target ^= source, both ascending.
  void add(std::vector<RankedSimplex>& target, const std::vector<RankedSimplex>& source) {
    scratch_.clear();
    auto a = target.begin();
    auto b = source.begin();
    while (a != target.end() && b != source.end()) {
      if (a->key == b->key) {
        ++a;
        ++b;
      } else if (ranked_less(*a, *b)) {
        scratch_.push_back(*a++);
      } else {
        scratch_.push_back(*b++);
      }
    }
    scratch_.insert(scratch_.end(), a, target.end());
    scratch_.insert(scratch_.end(), b, source.end());
    target.swap(scratch_);
  }

  const DistanceMatrix& dm_;
  double cutoff_;
  std::unordered_map<std::uint64_t, std::uint32_t> owner_;
  // Settled column i is the sum of the coboundaries of
  // combos_[offsets_[i] .. offsets_[i + 1]).
  std::vector<RankedSimplex> combos_;
  std::vector<std::size_t> offsets_{0};
  std::vector<RankedSimplex> combo_, combo_scratch_;
  std::vector<RankedSimplex> work_, addend_, scratch_;
};

}  // namespace detail

/// Persistence diagrams of the Vietoris-Rips filtration of `dm` in dimensions
/// 0..max_dim. Produces the same diagrams as
/// compute_persistence(build_rips_filtration(dm, max_dim, threshold)).
///
/// Only simplices up to min(threshold, enclosing radius) are built: past the
/// enclosing radius the complex is a cone, so every class is already dead and
/// anything born later has zero persistence.
inline PersistenceDiagramSet rips_persistence(const DistanceMatrix& dm, int max_dim,
                                              const Threshold& threshold = kAutoThreshold) {
  check_max_dim(max_dim);
  const std::size_t n = dm.size();
  if (n >= (std::size_t{1} << 16))
    throw Error(ErrorKind::Parameter, "rips_persistence supports fewer than 65536 points");

  PersistenceDiagramSet out;
  out.threshold = resolve_threshold(dm, threshold);
  out.max_dim = max_dim;
  if (n == 0) return out;

  const double cutoff = std::min(out.threshold, dm.enclosing_radius());
  const auto N = static_cast<std::uint32_t>(n);
  using detail::RankedSimplex;

  std::vector<RankedSimplex> edges;
  for (std::uint32_t a = 0; a < N; ++a)
    for (std::uint32_t b = a + 1; b < N; ++b)
      if (dm(a, b) <= cutoff) edges.push_back({dm(a, b), (std::uint64_t{a} << 16) | b});
  std::sort(edges.begin(), edges.end(), detail::ranked_less);

  // H0: edge boundary columns against vertex rows.
  detail::VertexColumnReducer edge_reducer(n);
  std::vector<RankedSimplex> cycle_edges;
  for (const auto& e : edges) {
    const auto v = detail::unpack<2>(e.key);
    if (edge_reducer.reduce(v[0], v[1]) != detail::kNoRow)
      emit_pair(out, 0, 0.0, e.value);
    else
      cycle_edges.push_back(e);
  }
  for (std::uint32_t v = 0; v < N; ++v)
    if (!edge_reducer.is_pivot(v)) out[0].push_back({0.0, kInfinity});

  if (max_dim >= 1) {
    // H1: coboundaries of cycle-creating edges against triangle rows.
    detail::CoboundaryReducer<2> edge_cob(dm, cutoff);
    for (auto it = cycle_edges.rbegin(); it != cycle_edges.rend(); ++it) {
      const RankedSimplex death = edge_cob.reduce(*it);
      if (std::isinf(death.value))
        out[1].push_back({it->value, kInfinity});
      else
        emit_pair(out, 1, it->value, death.value);
    }

    if (max_dim >= 2) {
      // H2: coboundaries of the triangles not already paired with an edge.
      std::vector<RankedSimplex> triangles;
      for (std::uint32_t a = 0; a < N; ++a)
        for (std::uint32_t b = a + 1; b < N; ++b) {
          const double ab = dm(a, b);
          if (ab > cutoff) continue;
          for (std::uint32_t c = b + 1; c < N; ++c) {
            const double value = std::max({ab, dm(a, c), dm(b, c)});
            const std::uint64_t key = (std::uint64_t{a} << 32) | (std::uint64_t{b} << 16) | c;
            if (value <= cutoff && !edge_cob.is_pivot(key)) triangles.push_back({value, key});
          }
        }
      std::sort(triangles.begin(), triangles.end(), detail::ranked_less);

      detail::CoboundaryReducer<3> triangle_cob(dm, cutoff);
      for (auto it = triangles.rbegin(); it != triangles.rend(); ++it) {
        const RankedSimplex death = triangle_cob.reduce(*it);
        if (std::isinf(death.value))
          out[2].push_back({it->value, kInfinity});
        else
          emit_pair(out, 2, it->value, death.value);
      }
    }
  }

  out.canonicalize();
  return out;
}

}  // namespace toprisk
