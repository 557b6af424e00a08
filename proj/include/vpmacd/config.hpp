#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vpmacd/backtest.hpp"
#include "vpmacd/calibration.hpp"
#include "vpmacd/market_data.hpp"
#include "vpmacd/metrics.hpp"
#include "vpmacd/stats.hpp"
#include "vpmacd/strategy.hpp"

namespace vpmacd {

struct InstrumentSpec {
  std::string symbol;
  std::filesystem::path file;
};

/// Fixed lambda (optionally per symbol) or "calibrate on the training window".
struct LambdaSetting {
  bool calibrate = false;
  std::optional<double> value;
  std::map<std::string, double> per_symbol;
  bool calibrate_unlisted = false;

  /// Empty means calibrate.
  std::optional<double> for_symbol(const std::string& symbol) const;
};

struct StrategyConfig {
  StrategySpec spec;
  LambdaSetting lambda;
};

struct PairSpec {
  std::string label;
  std::size_t newer = 0;
  std::size_t older = 0;
};

struct RunConfig {
  std::vector<InstrumentSpec> instruments;
  SplitSpec split;
  std::vector<StrategyConfig> strategies;
  BacktestConfig backtest;
  MetricOptions metrics;
  std::vector<double> grid = default_lambda_grid();
  SelectionPolicy policy;
  TestConfig tests;
  int histogram_bins = 30;
  std::vector<PairSpec> pairs;
  std::filesystem::path output_dir = "out";
  /// FNV-1a of the config text.
  std::string hash;
};

/// Parses a JSON config. Relative data and output paths resolve against `base_dir`.
/// Throws Error(Config) on schema problems and on missing data files.
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace vpmacd
