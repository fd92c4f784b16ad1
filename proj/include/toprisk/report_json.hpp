#pragma once

// RiskReport serialization. Key order is fixed.

#include <string>

#include "json.hpp"
#include "toprisk/analysis.hpp"

namespace toprisk {

inline nlohmann::ordered_json diagrams_to_json(const PersistenceDiagramSet& diagrams) {
  auto rows = nlohmann::ordered_json::array();
  for (int q = 0; q <= diagrams.max_dim; ++q)
    for (const auto& p : diagrams[q]) {
      nlohmann::ordered_json row;
      row["dim"] = q;
      row["birth"] = p.birth;
      if (p.essential())
        row["death"] = "inf";
      else
        row["death"] = p.death;
      rows.push_back(std::move(row));
    }
  return rows;
}

inline nlohmann::ordered_json to_json(const RiskReport& r) {
  nlohmann::ordered_json j;
  j["ticker"] = r.ticker;
  j["alpha"] = r.alpha;
  j["var"] = r.var;
  j["cvar"] = r.cvar;
  j["tvard"] = r.tvard;
  if (r.bottleneck) {
    j["bottleneck"] = {{"h0", (*r.bottleneck)[0]}, {"h1", (*r.bottleneck)[1]}, {"h2", (*r.bottleneck)[2]}};
  } else {
    j["bottleneck"] = nullptr;
  }
  nlohmann::ordered_json config;
  config["window"] = r.config.window;
  config["stride"] = r.config.stride;
  config["max_dim"] = r.config.max_dim;
  if (r.config.threshold)
    config["threshold"] = *r.config.threshold;
  else
    config["threshold"] = "auto";
  config["fraction"] = r.config.stress.fraction;
  config["seed"] = r.config.stress.seed;
  j["config"] = std::move(config);
  j["baseline_diagrams"] = diagrams_to_json(r.baseline_diagrams);
  j["stress_diagrams"] = diagrams_to_json(r.stress_diagrams);
  return j;
}

inline std::string report_to_json_string(const RiskReport& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace toprisk
