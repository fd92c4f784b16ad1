#pragma once

// Brute-force reference implementations. None of these call into the code
// they check.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "toprisk/persistence.hpp"
#include "toprisk/point_cloud.hpp"

namespace toprisk::testkit {

struct TailOracle {
  double var;
  double cvar;
};

// Full sort, index by floor((1 - alpha) n) found by counting up, mean of the
// max(1, k) smallest summed in ascending order.
inline TailOracle tail_oracle(std::vector<double> r, double alpha) {
  std::sort(r.begin(), r.end());
  const std::size_t n = r.size();
  const double target = (1.0 - alpha) * static_cast<double>(n) + 1e-9;
  std::size_t k = 0;
  while (static_cast<double>(k + 1) <= target) ++k;
  const std::size_t idx = std::min(k, n - 1);
  const std::size_t tail = std::max<std::size_t>(1, k);
  double sum = 0.0;
  for (std::size_t i = 0; i < tail; ++i) sum += r[i];
  return {r[idx], sum / static_cast<double>(tail)};
}

// Prim's algorithm on the complete graph; returns the MST edge lengths sorted.
inline std::vector<double> mst_edge_lengths(const DistanceMatrix& dm) {
  const std::size_t n = dm.size();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(n, false);
  std::vector<double> lengths;
  if (n == 0) return lengths;
  best[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!in_tree[v] && (u == n || best[v] < best[u])) u = v;
    in_tree[u] = true;
    if (step > 0) lengths.push_back(best[u]);
    for (std::size_t v = 0; v < n; ++v)
      if (!in_tree[v]) best[v] = std::min(best[v], dm(u, v));
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

namespace detail_oracle {

inline std::size_t rank_mod2(std::vector<std::vector<int>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < rows; ++r)
      if (r != rank && m[r][c] == 1)
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
    ++rank;
  }
  return rank;
}

}  // namespace detail_oracle

// Betti numbers b_0..b_2 of the Rips complex at scale eps, from subsets of at
// most four points enumerated as bitmasks. Only for small n (<= ~16).
inline std::array<std::size_t, 3> rips_betti_oracle(const DistanceMatrix& dm, double eps) {
  const std::size_t n = dm.size();
  std::array<std::vector<unsigned>, 4> simplices;  // by dimension, as bitmasks
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int size = std::popcount(mask);
    if (size > 4) continue;
    bool fits = true;
    for (std::size_t i = 0; i < n && fits; ++i)
      for (std::size_t j = i + 1; j < n && fits; ++j)
        if ((mask >> i & 1u) && (mask >> j & 1u) && dm(i, j) > eps) fits = false;
    if (fits) simplices[static_cast<std::size_t>(size - 1)].push_back(mask);
  }
  // rank of the boundary map from dimension q to q - 1, q = 1..3
  std::array<std::size_t, 5> rank{};
  for (std::size_t q = 1; q <= 3; ++q) {
    const auto& rows = simplices[q];
    const auto& cols = simplices[q - 1];
    if (rows.empty() || cols.empty()) continue;
    std::vector<std::vector<int>> m(rows.size(), std::vector<int>(cols.size(), 0));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        if ((cols[c] & rows[r]) == cols[c]) m[r][c] = 1;
    rank[q] = detail_oracle::rank_mod2(std::move(m));
  }
  std::array<std::size_t, 3> betti{};
  for (std::size_t q = 0; q < 3; ++q) betti[q] = simplices[q].size() - rank[q] - rank[q + 1];
  return betti;
}

// Number of pairs alive at eps (birth <= eps < death) in dimension q.
inline std::size_t alive_at(const PersistenceDiagramSet& d, int q, double eps) {
  return static_cast<std::size_t>(std::count_if(d[q].begin(), d[q].end(), [eps](const PersistencePair& p) {
    return p.birth <= eps && eps < p.death;
  }));
}

inline DistanceMatrix euclidean_dm(const std::vector<std::vector<double>>& pts) {
  DistanceMatrix dm(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      dm.set(i, j, std::sqrt(s));
    }
  return dm;
}

}  // namespace toprisk::testkit
