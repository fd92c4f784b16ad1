#pragma once

// Stress scenarios and the topological VaR distance between baseline and
// stress persistence diagrams.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "toprisk/error.hpp"
#include "toprisk/ingest.hpp"
#include "toprisk/persistence.hpp"
#include "toprisk/random.hpp"

namespace toprisk {

struct StressConfig {
  double fraction = 0.5;
  std::uint64_t seed = 0;
};

inline void check_fraction(double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error(ErrorKind::Parameter, "stress fraction must lie in (0, 1], got " + std::to_string(fraction));
}

/// floor(fraction * n), with the same representation slack as the VaR index.
inline std::size_t stress_sample_size(double fraction, std::size_t n) {
  check_fraction(fraction);
  return std::min(n, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9)));
}

/// Keeps floor(fraction * n) returns chosen uniformly without replacement by
/// a SplitMix64 partial Fisher-Yates shuffle, in their original order.
inline ReturnSeries stress_sample(const ReturnSeries& series, const StressConfig& cfg) {
  const std::size_t n = series.size();
  if (n < 2) throw Error(ErrorKind::InsufficientData, "stress sampling needs at least 2 returns");
  const std::size_t keep = stress_sample_size(cfg.fraction, n);
  if (keep < 1)
    throw Error(ErrorKind::InsufficientData, "stress fraction " + std::to_string(cfg.fraction) +
                                                 " keeps no returns out of " + std::to_string(n));
  SplitMix64 rng(cfg.seed);
  ReturnSeries out{series.ticker, {}, series.dropped_count};
  out.returns.reserve(keep);
  for (std::size_t i : sample_indices(n, keep, rng)) out.returns.push_back(series.returns[i]);
  return out;
}

/// Flattened, padded diagram coordinates. layout[q] is the number of
/// (birth, death) slots for dimension q.
struct FeatureVector {
  std::vector<double> values;
  std::array<std::size_t, kMaxHomologyDim + 1> layout{};
  double cap = 0.0;

  bool operator==(const FeatureVector&) const = default;
};

namespace detail {

// Persistence descending, then birth ascending.
inline void sort_for_vector(Diagram& d) {
  std::sort(d.begin(), d.end(), [](const PersistencePair& a, const PersistencePair& b) {
    const double pa = a.persistence();
    const double pb = b.persistence();
    if (pa != pb) return pa > pb;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
}

inline Diagram capped(const Diagram& d, double cap) {
  Diagram out(d);
  for (auto& p : out)
    if (p.essential()) p.death = cap;
  return out;
}

}  // namespace detail

/// Replaces essential deaths with `cap`.
inline Diagram cap_diagram(const Diagram& d, double cap) { return detail::capped(d, cap); }

/// Aligns two diagram sets into equal-length vectors. Per dimension: cap
/// infinite deaths at the larger threshold, order by persistence, pad the
/// shorter side with (0, 0), flatten as birth, death, ...; dimensions are
/// concatenated in order 0, 1, 2.
inline std::pair<FeatureVector, FeatureVector> vectorize(const PersistenceDiagramSet& d,
                                                         const PersistenceDiagramSet& counterpart) {
  if (d.max_dim != counterpart.max_dim)
    throw Error(ErrorKind::Parameter, "diagram sets were computed with different max_dim");
  const double cap = std::max(d.threshold, counterpart.threshold);
  FeatureVector a, b;
  a.cap = b.cap = cap;
  for (int q = 0; q <= kMaxHomologyDim; ++q) {
    Diagram da = detail::capped(d[q], cap);
    Diagram db = detail::capped(counterpart[q], cap);
    detail::sort_for_vector(da);
    detail::sort_for_vector(db);
    const std::size_t slots = std::max(da.size(), db.size());
    da.resize(slots, PersistencePair{0.0, 0.0});
    db.resize(slots, PersistencePair{0.0, 0.0});
    for (std::size_t i = 0; i < slots; ++i) {
      a.values.insert(a.values.end(), {da[i].birth, da[i].death});
      b.values.insert(b.values.end(), {db[i].birth, db[i].death});
    }
    a.layout[static_cast<std::size_t>(q)] = b.layout[static_cast<std::size_t>(q)] = slots;
  }
  return {std::move(a), std::move(b)};
}

/// Euclidean norm of a - b.
inline double tvard_distance(const FeatureVector& a, const FeatureVector& b) {
  if (a.layout != b.layout || a.values.size() != b.values.size())
    throw Error(ErrorKind::Parameter, "feature vectors have different layouts");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double diff = a.values[i] - b.values[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace toprisk
