#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vpmacd/date.hpp"
#include "vpmacd/market_data.hpp"
#include "vpmacd/signals.hpp"

namespace vpmacd {

struct BacktestConfig {
  double initial_capital = 100'000.0;
  /// Applied to the open on both entry (up) and exit (down).
  double one_way_cost_bps = 4.0;
  std::int64_t min_unit = 1;
};

void check(const BacktestConfig& config);

/// A completed buy-sell round trip. Prices already include costs.
struct Trade {
  Date entry_date;
  Date exit_date;
  double entry_price = 0.0;
  double exit_price = 0.0;
  std::int64_t shares = 0;
  double pnl = 0.0;
};

struct OpenPosition {
  Date entry_date;
  double entry_price = 0.0;
  std::int64_t shares = 0;
};

/// Mark-to-close portfolio value on every bar of the simulated window.
struct EquityCurve {
  std::vector<Date> dates;
  Eigen::ArrayXd values;

  Eigen::Index size() const noexcept { return values.size(); }
};

struct BacktestWarning {
  Date date;
  std::string message;
};

struct Ledger {
  std::vector<Trade> trades;
  EquityCurve equity;
  std::optional<OpenPosition> open_position;
  double final_cash = 0.0;
  std::vector<BacktestWarning> warnings;
};

/// Long-only simulation. A signal on bar t executes at the open of bar t+1:
/// a Buy while flat spends floor(cash / (open * (1 + c))) shares (rounded
/// down to min_unit), a Sell while long liquidates at open * (1 - c), where
/// c = one_way_cost_bps / 10'000. Buys while long and Sells while flat are
/// ignored, as are signals on the final bar. A position still open at the
/// end is marked to the last close but produces no Trade.
Ledger run_backtest(const OhlcvSeries& series, const std::vector<TradeSignal>& signals,
                    const BacktestConfig& config);

/// Simple returns V_t / V_{t-1} - 1.
Eigen::ArrayXd daily_returns(const EquityCurve& equity);

}  // namespace vpmacd
