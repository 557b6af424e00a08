#pragma once

#include <string>
#include <vector>

#include "vpmacd/backtest.hpp"
#include "vpmacd/indicators.hpp"
#include "vpmacd/market_data.hpp"
#include "vpmacd/signals.hpp"

namespace vpmacd {

enum class PriceSource { Close, Adjusted };

std::string_view to_string(PriceSource source) noexcept;

/// A rule plus the indicator pipeline that feeds it.
struct StrategySpec {
  std::string name;
  Rule rule = Rule::SignalCross;
  PriceSource price = PriceSource::Close;
  MacdParams macd;
  AdjustedPriceParams adjusted;
};

/// MACD triple of closes, or VP-MACD triple of the adjusted price.
Macd strategy_lines(const OhlcvSeries& history, const StrategySpec& spec);

/// Raw signal stream over every bar of `history`; lambda is ignored unless
/// the rule is LambdaAdjusted.
std::vector<TradeSignal> generate_signals(const OhlcvSeries& history, const StrategySpec& spec,
                                          double lambda);

std::vector<TradeSignal> signals_within(const std::vector<TradeSignal>& signals, const Date& first,
                                        const Date& last);

/// Indicators on all history up to `last` (so warm-up can use bars before
/// `first`), trading restricted to bars in [first, last].
Ledger evaluate(const OhlcvSeries& history, const Date& first, const Date& last,
                const StrategySpec& spec, double lambda, const BacktestConfig& config);

}  // namespace vpmacd
