#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <system_error>

#include "toprisk/persistence.hpp"

namespace toprisk {

/// Round-trippable decimal (17 significant digits, trailing zeros dropped).
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Writes `dim,birth,death` rows, dimensions ascending, essential deaths as `inf`.
inline void write_diagram_csv(std::ostream& os, const PersistenceDiagramSet& diagrams) {
  os << "dim,birth,death\n";
  for (int q = 0; q <= diagrams.max_dim; ++q)
    for (const auto& p : diagrams[q])
      os << q << ',' << format_number(p.birth) << ',' << format_number(p.death) << '\n';
}

}  // namespace toprisk
