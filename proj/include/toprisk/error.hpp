#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace toprisk {

enum class ErrorKind {
  Format,            // malformed header or file layout
  Row,               // unparsable data row
  Duplicate,         // repeated date
  Value,             // non-finite or non-positive close
  InsufficientData,  // too few observations for the requested operation
  DegenerateSeries,  // zero price range
  Parameter,         // argument outside its documented domain
  Internal,          // broken structural invariant (e.g. face after coface)
  Io,                // file system failure
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Format: return "format error";
    case ErrorKind::Row: return "row error";
    case ErrorKind::Duplicate: return "duplicate error";
    case ErrorKind::Value: return "value error";
    case ErrorKind::InsufficientData: return "insufficient-data error";
    case ErrorKind::DegenerateSeries: return "degenerate-series error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Internal: return "internal invariant error";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

/// Single exception type for the library. The kind is the stable part of the
/// contract; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(compose({}, kind, message, line)),
        kind_(kind),
        detail_(message),
        line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<std::size_t>& line() const noexcept { return line_; }
  const std::string& stage() const noexcept { return stage_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Returns a copy labelled with the pipeline stage that raised it.
  Error with_stage(std::string stage) const {
    Error e(kind_, detail_, line_);
    e.stage_ = std::move(stage);
    static_cast<std::runtime_error&>(e) =
        std::runtime_error(compose(e.stage_, kind_, detail_, line_));
    return e;
  }

 private:
  static std::string compose(const std::string& stage, ErrorKind kind,
                             const std::string& message,
                             const std::optional<std::size_t>& line) {
    std::string out;
    if (!stage.empty()) out += stage + ": ";
    out += to_string(kind);
    if (line) out += " (line " + std::to_string(*line) + ")";
    out += ": " + message;
    return out;
  }

  ErrorKind kind_;
  std::string detail_;
  std::optional<std::size_t> line_;
  std::string stage_;
};

/// Runs `fn` and relabels any Error escaping it with `stage`.
template <class Fn>
decltype(auto) in_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.with_stage(stage);
  }
}

}  // namespace toprisk
