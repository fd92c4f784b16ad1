#pragma once

// Price ingestion: CSV loading, cleaning, min-max normalization and
// daily returns on the normalized series.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "toprisk/error.hpp"

namespace toprisk {

using Date = std::chrono::year_month_day;

struct PriceObservation {
  Date date;
  double close = 0.0;
};

/// Ordered closing prices for one ticker. Dates strictly increase; after
/// load_price_csv or clean_series every close is finite and positive.
struct PriceSeries {
  std::string ticker;
  std::vector<PriceObservation> observations;

  std::size_t size() const noexcept { return observations.size(); }
};

/// Min-max normalized closes; every value is in [0, 1] and both bounds occur.
struct NormalizedSeries {
  std::string ticker;
  std::vector<double> values;
};

/// Daily returns of a normalized series. Pairs whose previous value is zero
/// (to within kReturnDenominatorFloor) are skipped and counted.
struct ReturnSeries {
  std::string ticker;
  std::vector<double> returns;
  std::size_t dropped_count = 0;

  std::size_t size() const noexcept { return returns.size(); }
};

struct CleanResult {
  PriceSeries series;
  std::size_t removed = 0;
};

inline constexpr std::size_t kMinObservations = 3;
// clean_series only guarantees a usable pair; normalize enforces kMinObservations.
inline constexpr std::size_t kMinCleanObservations = 2;
inline constexpr double kReturnDenominatorFloor = 1e-12;

namespace detail {

inline std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

inline bool parse_fixed_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

// Strict YYYY-MM-DD.
inline bool parse_iso_date(std::string_view s, Date& out) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  int y = 0, m = 0, d = 0;
  if (!parse_fixed_int(s.substr(0, 4), y) || !parse_fixed_int(s.substr(5, 2), m) ||
      !parse_fixed_int(s.substr(8, 2), d))
    return false;
  out = Date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
             std::chrono::day{static_cast<unsigned>(d)}};
  return out.ok();
}

// Accepts decimal literals plus the nan/inf spellings, so that non-finite
// values are reported as value errors rather than parse errors.
inline bool parse_decimal(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec == std::errc::result_out_of_range) {
    out = HUGE_VAL;
    return ptr == last;
  }
  return ec == std::errc{} && ptr == last;
}

}  // namespace detail

inline std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

/// Parses a `date,close` CSV. Rows may arrive in any order; the result is
/// sorted by date. LF and CRLF endings are both accepted.
inline PriceSeries load_price_csv(std::istream& source, std::string ticker = {}) {
  PriceSeries series{std::move(ticker), {}};
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(source, line)) throw Error(ErrorKind::Format, "empty input, expected header `date,close`");
  ++line_no;
  std::string_view header = detail::trim_cr(line);
  if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
  if (header != "date,close")
    throw Error(ErrorKind::Format, "expected header `date,close`, got `" + std::string(header) + "`", line_no);

  while (std::getline(source, line)) {
    ++line_no;
    std::string_view row = detail::trim_cr(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
      throw Error(ErrorKind::Row, "expected two fields in `" + std::string(row) + "`", line_no);

    PriceObservation obs;
    if (!detail::parse_iso_date(row.substr(0, comma), obs.date))
      throw Error(ErrorKind::Row, "invalid date `" + std::string(row.substr(0, comma)) + "`", line_no);
    if (!detail::parse_decimal(row.substr(comma + 1), obs.close))
      throw Error(ErrorKind::Row, "invalid close `" + std::string(row.substr(comma + 1)) + "`", line_no);
    if (!std::isfinite(obs.close) || obs.close <= 0.0)
      throw Error(ErrorKind::Value, "close must be finite and positive, got `" +
                                        std::string(row.substr(comma + 1)) + "`",
                  line_no);
    series.observations.push_back(obs);
  }

  std::stable_sort(series.observations.begin(), series.observations.end(),
                   [](const PriceObservation& a, const PriceObservation& b) { return a.date < b.date; });
  const auto dup = std::adjacent_find(series.observations.begin(), series.observations.end(),
                                      [](const PriceObservation& a, const PriceObservation& b) {
                                        return a.date == b.date;
                                      });
  if (dup != series.observations.end())
    throw Error(ErrorKind::Duplicate, "date " + format_date(dup->date) + " appears more than once");
  return series;
}

/// Drops observations with non-finite closes, preserving order.
inline CleanResult clean_series(const PriceSeries& series) {
  CleanResult result{{series.ticker, {}}, 0};
  result.series.observations.reserve(series.size());
  for (const auto& obs : series.observations) {
    if (std::isfinite(obs.close))
      result.series.observations.push_back(obs);
    else
      ++result.removed;
  }
  if (result.series.size() < kMinCleanObservations)
    throw Error(ErrorKind::InsufficientData,
                std::to_string(result.series.size()) + " finite observations, need at least " +
                    std::to_string(kMinCleanObservations));
  return result;
}

/// value_t = (P_t - min P) / (max P - min P)
inline NormalizedSeries normalize(const PriceSeries& series) {
  if (series.size() < kMinObservations)
    throw Error(ErrorKind::InsufficientData,
                std::to_string(series.size()) + " observations, need at least " +
                    std::to_string(kMinObservations));
  const auto [lo_it, hi_it] = std::minmax_element(
      series.observations.begin(), series.observations.end(),
      [](const PriceObservation& a, const PriceObservation& b) { return a.close < b.close; });
  const double lo = lo_it->close;
  const double hi = hi_it->close;
  if (!(hi > lo)) throw Error(ErrorKind::DegenerateSeries, "max close equals min close");

  NormalizedSeries out{series.ticker, {}};
  out.values.reserve(series.size());
  const double range = hi - lo;
  for (const auto& obs : series.observations) out.values.push_back((obs.close - lo) / range);
  return out;
}

/// R_t = (v_t - v_{t-1}) / v_{t-1}. The normalized minimum is exactly 0, so
/// the return following it is undefined; such pairs go to dropped_count.
inline ReturnSeries compute_returns(const NormalizedSeries& series) {
  const auto& v = series.values;
  if (v.size() < 2)
    throw Error(ErrorKind::InsufficientData, "need at least 2 values to form a return");
  ReturnSeries out{series.ticker, {}, 0};
  out.returns.reserve(v.size() - 1);
  for (std::size_t t = 1; t < v.size(); ++t) {
    if (std::abs(v[t - 1]) <= kReturnDenominatorFloor) {
      ++out.dropped_count;
      continue;
    }
    out.returns.push_back((v[t] - v[t - 1]) / v[t - 1]);
  }
  if (out.returns.empty())
    throw Error(ErrorKind::InsufficientData, "every return has a zero denominator");
  return out;
}

}  // namespace toprisk
