#include "vpmacd/backtest.hpp"

#include <cmath>

#include "vpmacd/error.hpp"

namespace vpmacd {

void check(const BacktestConfig& config) {
  if (!(config.initial_capital > 0.0) || !(config.one_way_cost_bps >= 0.0) ||
      config.min_unit < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "backtest needs initial_capital > 0, one_way_cost_bps >= 0, min_unit >= 1");
  }
}

Ledger run_backtest(const OhlcvSeries& series, const std::vector<TradeSignal>& signals,
                    const BacktestConfig& config) {
  check(config);
  const std::size_t n = series.size();
  if (n == 0) throw Error(ErrorCode::SeriesTooShort, "backtest on an empty series");

  std::vector<bool> buy_at(n, false), sell_at(n, false);
  for (const auto& s : signals) {
    const std::size_t i = series.index_of(s.date);
    if (i == OhlcvSeries::npos) {
      throw Error(ErrorCode::SignalDateNotInSeries,
                  "signal dated " + format_date(s.date) + " is not a bar of the series");
    }
    (s.side == Side::Buy ? buy_at : sell_at)[i] = true;
  }

  const double cost = config.one_way_cost_bps / 10'000.0;
  enum class Pending { None, Buy, Sell };

  Ledger ledger;
  ledger.equity.dates = series.dates();
  ledger.equity.values.resize(static_cast<Eigen::Index>(n));

  double cash = config.initial_capital;
  std::optional<OpenPosition> position;
  Pending pending = Pending::None;

  for (std::size_t k = 0; k < n; ++k) {
    const Bar& bar = series[k];
    if (pending == Pending::Buy) {
      const double price = bar.open * (1.0 + cost);
      const double unit_price = price * static_cast<double>(config.min_unit);
      auto lots = static_cast<std::int64_t>(std::floor(cash / unit_price));
      while (lots > 0 && static_cast<double>(lots * config.min_unit) * price > cash) --lots;
      if (lots < 1) {
        ledger.warnings.push_back({bar.date, "insufficient capital for one unit; buy skipped"});
      } else {
        const std::int64_t shares = lots * config.min_unit;
        cash -= static_cast<double>(shares) * price;
        position = OpenPosition{bar.date, price, shares};
      }
    } else if (pending == Pending::Sell) {
      const double price = bar.open * (1.0 - cost);
      cash += static_cast<double>(position->shares) * price;
      ledger.trades.push_back(Trade{position->entry_date, bar.date, position->entry_price, price,
                                    position->shares,
                                    static_cast<double>(position->shares) *
                                        (price - position->entry_price)});
      position.reset();
    }
    pending = Pending::None;

    const double held = position ? static_cast<double>(position->shares) * bar.close : 0.0;
    ledger.equity.values[static_cast<Eigen::Index>(k)] = cash + held;

    if (k + 1 == n) break;
    if (!position && buy_at[k]) pending = Pending::Buy;
    if (position && sell_at[k]) pending = Pending::Sell;
  }

  ledger.open_position = position;
  ledger.final_cash = cash;
  return ledger;
}

Eigen::ArrayXd daily_returns(const EquityCurve& equity) {
  const Eigen::Index n = equity.size();
  if (n < 2) throw Error(ErrorCode::SeriesTooShort, "need at least two equity values");
  return equity.values.tail(n - 1) / equity.values.head(n - 1) - 1.0;
}

}  // namespace vpmacd
