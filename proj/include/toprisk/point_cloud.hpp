#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "toprisk/error.hpp"
#include "toprisk/ingest.hpp"

namespace toprisk {

/// Points of equal dimension stored row-major.
class PointCloud {
 public:
  PointCloud() = default;

  PointCloud(std::size_t dimension, std::vector<double> coordinates)
      : dimension_(dimension), coords_(std::move(coordinates)) {
    if (dimension_ == 0) throw Error(ErrorKind::Parameter, "point dimension must be at least 1");
    if (coords_.size() % dimension_ != 0)
      throw Error(ErrorKind::Parameter, "coordinate count is not a multiple of the dimension");
    for (double c : coords_)
      if (!std::isfinite(c)) throw Error(ErrorKind::Value, "point coordinates must be finite");
  }

  static PointCloud from_points(const std::vector<std::vector<double>>& points) {
    if (points.empty()) return {};
    std::vector<double> flat;
    const std::size_t dim = points.front().size();
    for (const auto& p : points) {
      if (p.size() != dim) throw Error(ErrorKind::Parameter, "points have unequal dimension");
      flat.insert(flat.end(), p.begin(), p.end());
    }
    return PointCloud(dim, std::move(flat));
  }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return dimension_ == 0 ? 0 : coords_.size() / dimension_; }
  bool empty() const noexcept { return size() == 0; }

  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dimension_, dimension_);
  }

 private:
  std::size_t dimension_ = 0;
  std::vector<double> coords_;
};

/// Dense symmetric distance matrix with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  /// Builds from a full row-major n*n table, validating the metric-table
  /// invariants (symmetric, zero diagonal, finite, nonnegative).
  DistanceMatrix(std::size_t n, std::vector<double> entries) : n_(n), d_(std::move(entries)) {
    if (d_.size() != n * n) throw Error(ErrorKind::Parameter, "distance table must have n*n entries");
    for (std::size_t i = 0; i < n; ++i) {
      if (at(i, i) != 0.0) throw Error(ErrorKind::Parameter, "distance diagonal must be zero");
      for (std::size_t j = 0; j < n; ++j) {
        const double v = at(i, j);
        if (!std::isfinite(v) || v < 0.0)
          throw Error(ErrorKind::Parameter, "distances must be finite and nonnegative");
        if (v != at(j, i)) throw Error(ErrorKind::Parameter, "distance table must be symmetric");
      }
    }
  }

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double v) noexcept {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

  double max_entry() const noexcept {
    return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
  }

  /// min over v of max over u of d(v, u). At any scale at or above this value
  /// the Rips complex is a cone on some vertex.
  double enclosing_radius() const noexcept {
    double best = n_ == 0 ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < n_; ++i) {
      double row_max = 0.0;
      for (std::size_t j = 0; j < n_; ++j) row_max = std::max(row_max, at(i, j));
      best = std::min(best, row_max);
    }
    return best;
  }

  DistanceMatrix scaled(double factor) const {
    DistanceMatrix out(*this);
    for (double& v : out.d_) v *= factor;
    return out;
  }

 private:
  double at(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }

  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Overlapping windows (r_t, ..., r_{t+w-1}) for t = 0, stride, 2*stride, ...
inline PointCloud delay_embed(std::span<const double> series, std::size_t window, std::size_t stride) {
  if (window == 0) throw Error(ErrorKind::Parameter, "window must be positive");
  if (stride == 0) throw Error(ErrorKind::Parameter, "stride must be positive");
  if (series.size() < window)
    throw Error(ErrorKind::InsufficientData, "series of length " + std::to_string(series.size()) +
                                                 " is shorter than window " + std::to_string(window));
  const std::size_t count = (series.size() - window) / stride + 1;
  std::vector<double> coords;
  coords.reserve(count * window);
  for (std::size_t p = 0; p < count; ++p) {
    const auto w = series.subspan(p * stride, window);
    coords.insert(coords.end(), w.begin(), w.end());
  }
  return PointCloud(window, std::move(coords));
}

inline PointCloud delay_embed(const ReturnSeries& series, std::size_t window, std::size_t stride) {
  return delay_embed(std::span<const double>(series.returns), window, stride);
}

/// Pairwise Euclidean distances.
inline DistanceMatrix distance_matrix(const PointCloud& cloud) {
  if (cloud.empty()) throw Error(ErrorKind::InsufficientData, "point cloud is empty");
  const std::size_t n = cloud.size();
  DistanceMatrix dm(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = cloud.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = cloud.point(j);
      double sq = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sq += diff * diff;
      }
      dm.set(i, j, std::sqrt(sq));
    }
  }
  return dm;
}

}  // namespace toprisk
