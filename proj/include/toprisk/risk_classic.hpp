#pragma once

// Historical-simulation VaR and CVaR.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "toprisk/error.hpp"
#include "toprisk/ingest.hpp"

namespace toprisk {

struct TailRiskResult {
  double alpha = 0.0;
  double var = 0.0;
  double cvar = 0.0;
  std::size_t n = 0;
  std::size_t tail_count = 0;
};

// floor((1 - alpha) * n) with a small absolute slack, so that e.g.
// alpha = 0.9, n = 10 gives 1 rather than 0 from 0.9999999999999998.
inline constexpr double kTailFloorSlack = 1e-9;

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorKind::Parameter, "alpha must lie in (0, 1), got " + std::to_string(alpha));
}

/// floor((1 - alpha) * n), the zero-based VaR order statistic before clamping.
inline std::size_t tail_floor(double alpha, std::size_t n) {
  check_alpha(alpha);
  const double raw = std::floor((1.0 - alpha) * static_cast<double>(n) + kTailFloorSlack);
  return raw <= 0.0 ? 0 : std::min(static_cast<std::size_t>(raw), n);
}

inline TailRiskResult tail_risk(std::span<const double> returns, double alpha) {
  check_alpha(alpha);
  if (returns.empty()) throw Error(ErrorKind::InsufficientData, "no returns to evaluate");

  const std::size_t n = returns.size();
  const std::size_t k = tail_floor(alpha, n);
  const std::size_t var_index = std::min(k, n - 1);
  const std::size_t tail = std::max<std::size_t>(1, k);

  std::vector<double> work(returns.begin(), returns.end());
  // Tail sorted ascending; the VaR order statistic is either inside it or the
  // element right after it.
  std::partial_sort(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(tail), work.end());
  if (var_index >= tail)
    std::nth_element(work.begin() + static_cast<std::ptrdiff_t>(tail),
                     work.begin() + static_cast<std::ptrdiff_t>(var_index), work.end());

  double sum = 0.0;
  for (std::size_t i = 0; i < tail; ++i) sum += work[i];

  return TailRiskResult{alpha, work[var_index], sum / static_cast<double>(tail), n, tail};
}

/// VaR_alpha = s[floor((1 - alpha) n)], clamped to the sample.
inline double value_at_risk(std::span<const double> returns, double alpha) {
  return tail_risk(returns, alpha).var;
}

/// Mean of the max(1, floor((1 - alpha) n)) smallest returns.
inline double conditional_var(std::span<const double> returns, double alpha) {
  return tail_risk(returns, alpha).cvar;
}

inline TailRiskResult tail_risk(const ReturnSeries& series, double alpha) {
  return tail_risk(std::span<const double>(series.returns), alpha);
}
inline double value_at_risk(const ReturnSeries& series, double alpha) {
  return tail_risk(series, alpha).var;
}
inline double conditional_var(const ReturnSeries& series, double alpha) {
  return tail_risk(series, alpha).cvar;
}

}  // namespace toprisk
