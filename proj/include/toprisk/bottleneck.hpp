#pragma once

// Exact bottleneck distance between two finite persistence diagrams.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "toprisk/error.hpp"
#include "toprisk/persistence.hpp"

namespace toprisk {

namespace detail {

// Hopcroft-Karp maximum matching on a bipartite graph given as adjacency
// lists from left vertices to right vertices.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::size_t left, std::size_t right)
      : adj_(left), match_left_(left), match_right_(right), dist_(left) {}

  void add_edge(std::size_t l, std::size_t r) { adj_[l].push_back(r); }

  std::size_t max_matching() {
    std::fill(match_left_.begin(), match_left_.end(), kFree);
    std::fill(match_right_.begin(), match_right_.end(), kFree);
    std::size_t matched = 0;
    while (bfs()) {
      for (std::size_t l = 0; l < adj_.size(); ++l)
        if (match_left_[l] == kFree && dfs(l)) ++matched;
    }
    return matched;
  }

 private:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<std::size_t> q;
    bool reachable_free = false;
    for (std::size_t l = 0; l < adj_.size(); ++l) {
      dist_[l] = match_left_[l] == kFree ? 0 : kFree;
      if (dist_[l] == 0) q.push(l);
    }
    while (!q.empty()) {
      const std::size_t l = q.front();
      q.pop();
      for (std::size_t r : adj_[l]) {
        const std::size_t next = match_right_[r];
        if (next == kFree) {
          reachable_free = true;
        } else if (dist_[next] == kFree) {
          dist_[next] = dist_[l] + 1;
          q.push(next);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(std::size_t l) {
    for (std::size_t r : adj_[l]) {
      const std::size_t next = match_right_[r];
      if (next == kFree || (dist_[next] == dist_[l] + 1 && dfs(next))) {
        match_left_[l] = r;
        match_right_[r] = l;
        return true;
      }
    }
    dist_[l] = kFree;
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_left_, match_right_, dist_;
};

inline double linf(const PersistencePair& a, const PersistencePair& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

inline double to_diagonal(const PersistencePair& p) { return (p.death - p.birth) / 2.0; }

// Perfect matching of A + diag(B) against B + diag(A) using only edges of
// cost <= eps. Left: A (0..m-1), then diagonal copies of B. Right: B
// (0..k-1), then diagonal copies of A.
inline bool matchable(const Diagram& a, const Diagram& b, double eps) {
  const std::size_t m = a.size(), k = b.size();
  BipartiteMatcher g(m + k, k + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      if (linf(a[i], b[j]) <= eps) g.add_edge(i, j);
    if (to_diagonal(a[i]) <= eps) g.add_edge(i, k + i);
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (to_diagonal(b[j]) <= eps) g.add_edge(m + j, j);
    for (std::size_t i = 0; i < m; ++i) g.add_edge(m + j, k + i);
  }
  return g.max_matching() == m + k;
}

}  // namespace detail

/// min over partial matchings of the largest L-infinity cost, with
/// unmatched points sent to the diagonal. Found by binary search over the
/// finite set of candidate costs, each tested for a perfect matching.
inline double bottleneck_distance(const Diagram& a, const Diagram& b) {
  for (const auto* d : {&a, &b})
    for (const auto& p : *d)
      if (!std::isfinite(p.birth) || !std::isfinite(p.death))
        throw Error(ErrorKind::Parameter, "bottleneck distance needs finite diagrams; cap essential classes first");

  std::vector<double> candidates{0.0};
  for (const auto& p : a) candidates.push_back(detail::to_diagonal(p));
  for (const auto& q : b) candidates.push_back(detail::to_diagonal(q));
  for (const auto& p : a)
    for (const auto& q : b) candidates.push_back(detail::linf(p, q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Matching everything to the diagonal is always feasible at the largest
  // candidate, so the search has a valid upper end.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (detail::matchable(a, b, candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

}  // namespace toprisk
