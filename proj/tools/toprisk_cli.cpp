// toprisk: VaR, CVaR and TVaRD reports from per-ticker price CSV files.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "toprisk/toprisk.hpp"

namespace fs = std::filesystem;
using namespace toprisk;

namespace {

struct CliConfig {
  std::vector<std::string> inputs;
  double alpha = 0.95;
  std::size_t window = 10;
  std::size_t stride = 1;
  int max_dim = 2;
  std::string threshold = "auto";
  double fraction = 0.5;
  std::optional<std::uint64_t> seed;
  bool stress = false;
  bool bottleneck = false;
  std::string output;
  std::string format = "csv";
  unsigned jobs = 1;
};

Threshold parse_threshold(const std::string& text) {
  if (text == "auto") return kAutoThreshold;
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v) || v < 0.0)
    throw Error(ErrorKind::Parameter, "--threshold must be 'auto' or a nonnegative number, got '" + text + "'");
  return v;
}

AnalysisParams to_params(const CliConfig& c) {
  AnalysisParams p;
  p.alpha = c.alpha;
  p.window = c.window;
  p.stride = c.stride;
  p.max_dim = c.max_dim;
  p.threshold = parse_threshold(c.threshold);
  p.stress.fraction = c.fraction;
  p.stress.seed = c.seed.value_or(0);
  p.bottleneck = c.bottleneck;
  p.validate();
  if (c.jobs == 0) throw Error(ErrorKind::Parameter, "--jobs must be at least 1");
  return p;
}

std::string ticker_of(const std::string& path) { return fs::path(path).stem().string(); }

PriceSeries read_prices(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'").with_stage("read");
  return in_stage("ingest", [&] { return load_price_csv(in, ticker_of(path)); });
}

// Writes next to the target and renames, so a failed run never leaves a
// truncated file behind.
void write_atomically(const fs::path& target, const std::string& contents) {
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + tmp.string() + "'").with_stage("write");
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error(ErrorKind::Io, "failed writing '" + tmp.string() + "'").with_stage("write");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorKind::Io, "cannot rename onto '" + target.string() + "': " + ec.message()).with_stage("write");
  }
}

void emit(const CliConfig& c, const std::string& text) {
  if (c.output.empty())
    std::cout << text << std::flush;
  else
    write_atomically(c.output, text);
}

// Runs task(i) for every input, at most `jobs` at a time. Returns the error
// message per input (empty on success).
std::vector<std::string> for_each_input(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  std::vector<std::string> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        if (errors[i].empty()) errors[i] = "unknown error";
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  return errors;
}

int report_errors(const CliConfig& c, const std::vector<std::string>& errors) {
  int status = 0;
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty()) {
      std::cerr << "toprisk: " << c.inputs[i] << ": " << errors[i] << '\n';
      status = 1;
    }
  return status;
}

int cmd_var(const CliConfig& c, const AnalysisParams& p) {
  std::vector<TailRiskResult> results(c.inputs.size());
  const auto errors = for_each_input(c.inputs.size(), c.jobs, [&](std::size_t i) {
    const ReturnSeries returns = prepare_returns(read_prices(c.inputs[i]));
    results[i] = in_stage("risk", [&] { return tail_risk(returns, p.alpha); });
  });

  std::ostringstream out;
  if (c.format == "json") {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i)
      if (errors[i].empty())
        rows.push_back({{"ticker", ticker_of(c.inputs[i])},
                        {"alpha", p.alpha},
                        {"var", results[i].var},
                        {"cvar", results[i].cvar}});
    out << rows.dump(2) << '\n';
  } else {
    out << "ticker,var,cvar\n";
    for (std::size_t i = 0; i < results.size(); ++i)
      if (errors[i].empty())
        out << ticker_of(c.inputs[i]) << ',' << format_number(results[i].var) << ','
            << format_number(results[i].cvar) << '\n';
  }
  emit(c, out.str());
  return report_errors(c, errors);
}

int cmd_diagram(const CliConfig& c, const AnalysisParams& p) {
  if (c.inputs.size() != 1) throw Error(ErrorKind::Parameter, "diagram takes exactly one --input");
  if (c.stress && !c.seed) throw Error(ErrorKind::Parameter, "--stress requires --seed");

  const auto errors = for_each_input(1, 1, [&](std::size_t) {
    ReturnSeries returns = prepare_returns(read_prices(c.inputs[0]));
    if (c.stress) returns = stress_returns(returns, p);
    const PersistenceDiagramSet diagrams = return_diagrams(returns, p);
    std::ostringstream out;
    if (c.format == "json")
      out << diagrams_to_json(diagrams).dump(2) << '\n';
    else
      write_diagram_csv(out, diagrams);
    emit(c, out.str());
  });
  return report_errors(c, errors);
}

int cmd_analyze(const CliConfig& c, const AnalysisParams& p) {
  if (!c.seed) throw Error(ErrorKind::Parameter, "analyze requires --seed");
  std::set<std::string> seen;
  for (const auto& path : c.inputs)
    if (!seen.insert(ticker_of(path)).second)
      throw Error(ErrorKind::Parameter, "two inputs share the ticker '" + ticker_of(path) + "'");

  const fs::path dir = c.output.empty() ? fs::path(".") : fs::path(c.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(ErrorKind::Io, "cannot create output directory '" + dir.string() + "'");

  std::vector<RiskReport> reports(c.inputs.size());
  const auto errors = for_each_input(c.inputs.size(), c.jobs, [&](std::size_t i) {
    RiskReport r = run_analysis(read_prices(c.inputs[i]), p);
    write_atomically(dir / (r.ticker + ".json"), report_to_json_string(r));
    reports[i] = std::move(r);
  });

  if (c.format == "json") {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < reports.size(); ++i)
      if (errors[i].empty())
        rows.push_back({{"ticker", reports[i].ticker},
                        {"var", reports[i].var},
                        {"cvar", reports[i].cvar},
                        {"tvard", reports[i].tvard}});
    std::cout << rows.dump(2) << '\n';
  } else {
    std::cout << "ticker,var,cvar,tvard\n";
    for (std::size_t i = 0; i < reports.size(); ++i)
      if (errors[i].empty())
        std::cout << reports[i].ticker << ',' << format_number(reports[i].var) << ','
                  << format_number(reports[i].cvar) << ',' << format_number(reports[i].tvard) << '\n';
  }
  return report_errors(c, errors);
}

void add_common(CLI::App* cmd, CliConfig& c) {
  cmd->add_option("--input", c.inputs, "price CSV (date,close), one per ticker")->required()->expected(1, -1);
  cmd->add_option("--alpha", c.alpha, "confidence level")->capture_default_str();
  cmd->add_option("--window", c.window, "delay-embedding window")->capture_default_str();
  cmd->add_option("--stride", c.stride, "delay-embedding stride")->capture_default_str();
  cmd->add_option("--max-dim", c.max_dim, "highest homology dimension (0, 1 or 2)")->capture_default_str();
  cmd->add_option("--threshold", c.threshold, "Rips scale cap, or 'auto' for the largest distance")->capture_default_str();
  cmd->add_option("--stress-fraction", c.fraction, "share of returns kept in the stress sample")->capture_default_str();
  cmd->add_option("--seed", c.seed, "stress sampling seed");
  cmd->add_option("--output", c.output, "output file (var, diagram) or directory (analyze)");
  cmd->add_option("--format", c.format, "json or csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--jobs", c.jobs, "tickers processed concurrently")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Historical VaR/CVaR and topological VaR distance (TVaRD) from price CSVs"};
  app.require_subcommand(1);

  CliConfig c;
  auto* var = app.add_subcommand("var", "print ticker,var,cvar");
  auto* diagram = app.add_subcommand("diagram", "export persistence diagrams as dim,birth,death");
  auto* analyze = app.add_subcommand("analyze", "write one JSON report per ticker and print a summary");
  for (auto* cmd : {var, diagram, analyze}) add_common(cmd, c);
  diagram->add_flag("--stress", c.stress, "use the stress sample (requires --seed)");
  analyze->add_flag("--bottleneck", c.bottleneck, "also report per-dimension bottleneck distances");

  CLI11_PARSE(app, argc, argv);

  try {
    const AnalysisParams p = to_params(c);
    if (var->parsed()) return cmd_var(c, p);
    if (diagram->parsed()) return cmd_diagram(c, p);
    return cmd_analyze(c, p);
  } catch (const Error& e) {
    std::cerr << "toprisk: " << (e.stage().empty() ? e.with_stage("config").what() : e.what()) << '\n';
  } catch (const std::exception& e) {
    std::cerr << "toprisk: " << e.what() << '\n';
  }
  return 2;
}
