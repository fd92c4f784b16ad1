#pragma once

// End-to-end per-ticker pipeline: classic tail risk plus baseline and stress
// persistence diagrams and their TVaRD.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "toprisk/bottleneck.hpp"
#include "toprisk/error.hpp"
#include "toprisk/filtration.hpp"
#include "toprisk/ingest.hpp"
#include "toprisk/persistence.hpp"
#include "toprisk/point_cloud.hpp"
#include "toprisk/rips_persistence.hpp"
#include "toprisk/risk_classic.hpp"
#include "toprisk/tvard.hpp"

namespace toprisk {

struct AnalysisParams {
  double alpha = 0.95;
  std::size_t window = 10;
  std::size_t stride = 1;
  int max_dim = 2;
  Threshold threshold = kAutoThreshold;
  StressConfig stress{};
  bool bottleneck = false;

  /// Checks every numeric field against the module preconditions.
  void validate() const {
    check_alpha(alpha);
    if (window == 0) throw Error(ErrorKind::Parameter, "window must be positive");
    if (stride == 0) throw Error(ErrorKind::Parameter, "stride must be positive");
    check_max_dim(max_dim);
    if (threshold && !(*threshold >= 0.0))
      throw Error(ErrorKind::Parameter, "threshold must be nonnegative");
    check_fraction(stress.fraction);
  }
};

struct RiskReport {
  std::string ticker;
  double alpha = 0.0;
  double var = 0.0;
  double cvar = 0.0;
  PersistenceDiagramSet baseline_diagrams;
  PersistenceDiagramSet stress_diagrams;
  double tvard = 0.0;
  std::optional<std::array<double, kMaxHomologyDim + 1>> bottleneck;
  AnalysisParams config;

  bool operator==(const RiskReport& other) const {
    return ticker == other.ticker && alpha == other.alpha && var == other.var && cvar == other.cvar &&
           baseline_diagrams == other.baseline_diagrams && stress_diagrams == other.stress_diagrams &&
           tvard == other.tvard && bottleneck == other.bottleneck;
  }
};

/// clean -> normalize -> returns, with stage labels on failure.
inline ReturnSeries prepare_returns(const PriceSeries& prices) {
  const CleanResult cleaned = in_stage("clean", [&] { return clean_series(prices); });
  const NormalizedSeries normalized = in_stage("normalize", [&] { return normalize(cleaned.series); });
  return in_stage("returns", [&] { return compute_returns(normalized); });
}

/// Delay embedding, distance matrix and Rips persistence of a return series.
inline PersistenceDiagramSet return_diagrams(const ReturnSeries& returns, const AnalysisParams& params,
                                             const char* label = "persistence") {
  const PointCloud cloud = in_stage(label, [&] { return delay_embed(returns, params.window, params.stride); });
  return in_stage(label, [&] { return rips_persistence(distance_matrix(cloud), params.max_dim, params.threshold); });
}

inline ReturnSeries stress_returns(const ReturnSeries& returns, const AnalysisParams& params) {
  return in_stage("stress sample", [&] { return stress_sample(returns, params.stress); });
}

inline RiskReport run_analysis(const PriceSeries& prices, const AnalysisParams& params) {
  in_stage("config", [&] { params.validate(); });

  RiskReport report;
  report.ticker = prices.ticker;
  report.alpha = params.alpha;
  report.config = params;

  const ReturnSeries returns = prepare_returns(prices);
  const TailRiskResult tail = in_stage("risk", [&] { return tail_risk(returns, params.alpha); });
  report.var = tail.var;
  report.cvar = tail.cvar;

  report.baseline_diagrams = return_diagrams(returns, params, "baseline persistence");
  report.stress_diagrams = return_diagrams(stress_returns(returns, params), params, "stress persistence");

  const auto [base_vec, stress_vec] = vectorize(report.baseline_diagrams, report.stress_diagrams);
  report.tvard = tvard_distance(base_vec, stress_vec);

  if (params.bottleneck) {
    std::array<double, kMaxHomologyDim + 1> per_dim{};
    for (int q = 0; q <= kMaxHomologyDim; ++q)
      per_dim[static_cast<std::size_t>(q)] = bottleneck_distance(
          cap_diagram(report.baseline_diagrams[q], base_vec.cap), cap_diagram(report.stress_diagrams[q], base_vec.cap));
    report.bottleneck = per_dim;
  }
  return report;
}

}  // namespace toprisk
