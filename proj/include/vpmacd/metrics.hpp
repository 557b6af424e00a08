#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

#include <Eigen/Core>

#include "vpmacd/backtest.hpp"
#include "vpmacd/error.hpp"

namespace vpmacd {

inline constexpr double kTradingDaysPerYear = 252.0;

enum class StdConvention { Sample, Population };

struct MetricOptions {
  StdConvention sharpe_std = StdConvention::Sample;
};

/// Undefined metrics stay empty; they are never filled with a sentinel.
struct StrategyReport {
  std::size_t total_trades = 0;
  std::optional<double> win_ratio;
  double total_pnl = 0.0;
  std::optional<double> pnl_ratio;
  std::optional<double> sharpe;
  double max_drawdown = 0.0;
  std::optional<double> expectancy;
};

/// Share of trades with pnl > 0; breakeven trades are not wins.
double win_ratio(std::span<const Trade> trades);

/// Average gain over average loss magnitude. Returns 0 when nothing won;
/// throws NoLosses when the loss side is empty.
double pnl_ratio(std::span<const Trade> trades);

/// win_ratio * avg_gain - (1 - win_ratio) * avg_loss. Breakeven trades count
/// toward the loss side with zero magnitude, so this equals mean pnl.
double expectancy(std::span<const Trade> trades);

double total_pnl(const EquityCurve& equity);

/// Annualized mean / std * sqrt(252) with zero risk-free rate.
template <typename Derived>
double sharpe(const Eigen::ArrayBase<Derived>& returns,
              StdConvention convention = StdConvention::Sample) {
  const Eigen::Index n = returns.size();
  if (n < 2) throw Error(ErrorCode::SeriesTooShort, "sharpe needs at least two returns");
  if ((returns == returns[0]).all()) {
    throw Error(ErrorCode::ZeroVariance, "returns have zero variance");
  }
  const double mean = returns.mean();
  const double ss = (returns - mean).square().sum();
  const double denom = convention == StdConvention::Sample ? double(n - 1) : double(n);
  const double sd = std::sqrt(ss / denom);
  if (!(sd > 0.0)) throw Error(ErrorCode::ZeroVariance, "returns have zero variance");
  return mean / sd * std::sqrt(kTradingDaysPerYear);
}

/// Largest (running_peak - value) / running_peak.
template <typename Derived>
double max_drawdown(const Eigen::ArrayBase<Derived>& values) {
  double peak = -std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index t = 0; t < values.size(); ++t) {
    peak = std::max(peak, static_cast<double>(values[t]));
    worst = std::max(worst, (peak - values[t]) / peak);
  }
  return worst;
}

inline double max_drawdown(const EquityCurve& equity) { return max_drawdown(equity.values); }

/// All seven metrics for one ledger; undefined ones are left empty.
StrategyReport build_report(const Ledger& ledger, const MetricOptions& options = {});

}  // namespace vpmacd
