#pragma once

// Persistence diagrams over Z/2 by boundary-matrix column reduction, and
// Betti numbers at a fixed scale by rank-nullity.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "toprisk/error.hpp"
#include "toprisk/filtration.hpp"

namespace toprisk {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePair {
  double birth = 0.0;
  double death = kInfinity;

  double persistence() const noexcept { return death - birth; }
  bool essential() const noexcept { return std::isinf(death); }

  auto operator<=>(const PersistencePair&) const = default;
};

using Diagram = std::vector<PersistencePair>;

/// Per-dimension diagrams for H0..H2. Dimensions above max_dim stay empty.
struct PersistenceDiagramSet {
  std::array<Diagram, kMaxHomologyDim + 1> dims{};
  double threshold = 0.0;
  int max_dim = kMaxHomologyDim;

  const Diagram& operator[](int q) const { return dims.at(static_cast<std::size_t>(q)); }
  Diagram& operator[](int q) { return dims.at(static_cast<std::size_t>(q)); }

  /// Sorts every dimension by (birth, death) so equal multisets compare equal.
  void canonicalize() {
    for (auto& d : dims) std::sort(d.begin(), d.end());
  }

  bool operator==(const PersistenceDiagramSet&) const = default;
};

/// Adds a pair unless it has zero persistence.
inline void emit_pair(PersistenceDiagramSet& out, int dim, double birth, double death) {
  if (dim > out.max_dim) return;
  if (death > birth) out[dim].push_back({birth, death});
}

namespace detail {

using VertexKey = std::array<std::uint32_t, 4>;

inline VertexKey key_of(const Simplex& s) {
  VertexKey k;
  k.fill(std::numeric_limits<std::uint32_t>::max());
  std::copy(s.vertices().begin(), s.vertices().end(), k.begin());
  return k;
}

// Symmetric difference of two ascending index columns.
inline void add_column(std::vector<std::size_t>& target, const std::vector<std::size_t>& source,
                       std::vector<std::size_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

// Facets of a simplex as indices into the filtration, ascending.
inline std::vector<std::size_t> boundary_indices(const Filtration& f, std::size_t j,
                                                 const std::map<VertexKey, std::size_t>& index_of) {
  const Simplex& s = f.simplices[j];
  std::vector<std::size_t> col;
  if (s.dim == 0) return col;
  for (int drop = 0; drop <= s.dim; ++drop) {
    Simplex face;
    face.dim = s.dim - 1;
    int w = 0;
    for (int k = 0; k <= s.dim; ++k)
      if (k != drop) face.vertex[w++] = s.vertex[k];
    const auto it = index_of.find(key_of(face));
    if (it == index_of.end() || it->second >= j)
      throw Error(ErrorKind::Internal, "filtration lists a simplex before one of its faces");
    col.push_back(it->second);
  }
  std::sort(col.begin(), col.end());
  return col;
}

}  // namespace detail

/// Standard left-to-right column reduction of the filtration's boundary
/// matrix. Each pivot (i, j) yields the pair (value_i, value_j) in dim(i);
/// unpaired simplices of dimension <= max_dim are essential.
inline PersistenceDiagramSet compute_persistence(const Filtration& f) {
  check_max_dim(f.max_dim);
  const std::size_t m = f.size();

  std::map<detail::VertexKey, std::size_t> index_of;
  for (std::size_t j = 0; j < m; ++j) {
    const Simplex& s = f.simplices[j];
    if (s.dim < 0 || s.dim > 3) throw Error(ErrorKind::Internal, "simplex dimension outside 0..3");
    if (j > 0 && s.value < f.simplices[j - 1].value)
      throw Error(ErrorKind::Internal, "filtration values decrease");
    if (!index_of.emplace(detail::key_of(s), j).second)
      throw Error(ErrorKind::Internal, "simplex listed twice");
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> reduced(m);
  std::vector<std::size_t> column_with_low(m, kNone);
  std::vector<bool> paired(m, false);
  std::vector<std::size_t> scratch;

  PersistenceDiagramSet out;
  out.threshold = f.threshold;
  out.max_dim = f.max_dim;

  for (std::size_t j = 0; j < m; ++j) {
    auto col = detail::boundary_indices(f, j, index_of);
    while (!col.empty() && column_with_low[col.back()] != kNone)
      detail::add_column(col, reduced[column_with_low[col.back()]], scratch);
    if (col.empty()) continue;
    const std::size_t low = col.back();
    column_with_low[low] = j;
    paired[low] = paired[j] = true;
    emit_pair(out, f.simplices[low].dim, f.simplices[low].value, f.simplices[j].value);
    reduced[j] = std::move(col);
  }

  for (std::size_t j = 0; j < m; ++j)
    if (!paired[j] && f.simplices[j].dim <= f.max_dim)
      out[f.simplices[j].dim].push_back({f.simplices[j].value, kInfinity});

  out.canonicalize();
  return out;
}

namespace detail {

// Rank over Z/2 by Gaussian elimination on packed rows.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  void set(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }

  std::size_t rank() {
    std::size_t rank = 0;
    const std::size_t cols = words_ * 64;
    for (std::size_t c = 0; c < cols && rank < rows_; ++c) {
      std::size_t pivot = rank;
      while (pivot < rows_ && !get(pivot, c)) ++pivot;
      if (pivot == rows_) continue;
      swap_rows(pivot, rank);
      for (std::size_t r = 0; r < rows_; ++r)
        if (r != rank && get(r, c)) xor_row(r, rank);
      ++rank;
    }
    return rank;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(bits_.begin() + static_cast<std::ptrdiff_t>(a * words_),
                     bits_.begin() + static_cast<std::ptrdiff_t>((a + 1) * words_),
                     bits_.begin() + static_cast<std::ptrdiff_t>(b * words_));
  }
  void xor_row(std::size_t target, std::size_t source) {
    for (std::size_t w = 0; w < words_; ++w) bits_[target * words_ + w] ^= bits_[source * words_ + w];
  }

  std::size_t rows_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace detail

/// Betti numbers beta_0..beta_max_dim of {sigma : value(sigma) <= epsilon},
/// from beta_q = n_q - rank d_q - rank d_{q+1}. Does not use the persistence
/// pairing, so it can serve as a check on it.
inline std::vector<std::size_t> betti_numbers_at(const Filtration& f, double epsilon) {
  if (!(epsilon >= 0.0)) throw Error(ErrorKind::Parameter, "epsilon must be nonnegative");
  constexpr int kDims = 4;
  std::array<std::vector<const Simplex*>, kDims> by_dim;
  for (const auto& s : f.simplices)
    if (s.value <= epsilon && s.dim < kDims) by_dim[static_cast<std::size_t>(s.dim)].push_back(&s);

  std::array<std::map<detail::VertexKey, std::size_t>, kDims> position;
  for (int q = 0; q < kDims; ++q)
    for (std::size_t i = 0; i < by_dim[q].size(); ++i) position[q][detail::key_of(*by_dim[q][i])] = i;

  // rank[q] = rank of the boundary map from q-chains to (q-1)-chains.
  std::array<std::size_t, kDims + 1> rank{};
  for (int q = 1; q < kDims; ++q) {
    detail::BitMatrix m(by_dim[q].size(), by_dim[q - 1].size());
    for (std::size_t i = 0; i < by_dim[q].size(); ++i) {
      const Simplex& s = *by_dim[q][i];
      for (int drop = 0; drop <= s.dim; ++drop) {
        Simplex face;
        face.dim = s.dim - 1;
        int w = 0;
        for (int k = 0; k <= s.dim; ++k)
          if (k != drop) face.vertex[w++] = s.vertex[k];
        const auto it = position[q - 1].find(detail::key_of(face));
        if (it == position[q - 1].end())
          throw Error(ErrorKind::Internal, "subcomplex is missing a face");
        m.set(i, it->second);
      }
    }
    rank[q] = m.rank();
  }

  std::vector<std::size_t> betti;
  for (int q = 0; q <= f.max_dim; ++q)
    betti.push_back(by_dim[q].size() - rank[q] - rank[q + 1]);
  return betti;
}

}  // namespace toprisk
