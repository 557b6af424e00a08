#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vpmacd/backtest.hpp"
#include "vpmacd/metrics.hpp"
#include "vpmacd/strategy.hpp"

namespace vpmacd {

enum class Metric { TotalTrades, WinRatio, TotalPnl, PnlRatio, Sharpe, MaxDrawdown, Expectancy };

std::string_view to_string(Metric metric) noexcept;
/// Accepts the names produced by to_string; throws Config otherwise.
Metric parse_metric(std::string_view name);
/// Empty when the report leaves the metric undefined.
std::optional<double> metric_value(const StrategyReport& report, Metric metric);
/// Drawdown is the only metric where smaller is better.
bool lower_is_better(Metric metric) noexcept;

struct GridResult {
  double lambda = 1.0;
  StrategyReport report;
};

/// {0.80, 0.82, ..., 1.00}; each value is (80 + 2k) / 100.
std::vector<double> default_lambda_grid();

/// One backtest over all of `train` per grid value, ascending by lambda.
std::vector<GridResult> sweep_lambda(const OhlcvSeries& train, const StrategySpec& strategy,
                                     std::vector<double> grid, const BacktestConfig& config,
                                     const MetricOptions& options = {});

struct SelectionPolicy {
  Metric primary = Metric::Sharpe;
  std::vector<Metric> tie_breakers = {Metric::Expectancy, Metric::MaxDrawdown};
  std::optional<double> max_drawdown;
  std::optional<std::size_t> min_trades;
};

struct Selection {
  double lambda = 1.0;
  std::vector<std::string> rationale;
};

/// Lexicographic choice: best primary metric, then each tie-breaker in
/// turn, then the smaller lambda. An undefined metric ranks below every
/// defined value. Candidates violating a constraint are skipped.
Selection select_lambda(const std::vector<GridResult>& results, const SelectionPolicy& policy);

}  // namespace vpmacd
