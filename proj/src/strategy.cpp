#include "vpmacd/strategy.hpp"

namespace vpmacd {

std::string_view to_string(PriceSource source) noexcept {
  return source == PriceSource::Close ? "close" : "adjusted";
}

Macd strategy_lines(const OhlcvSeries& history, const StrategySpec& spec) {
  if (spec.price == PriceSource::Adjusted) {
    return vp_macd_lines(adjusted_price(history, spec.adjusted), spec.macd);
  }
  return macd_lines(history.closes(), spec.macd);
}

std::vector<TradeSignal> generate_signals(const OhlcvSeries& history, const StrategySpec& spec,
                                          double lambda) {
  const auto lines = strategy_lines(history, spec);
  const auto dates = history.dates();
  return apply_rule(lines, RuleConfig{spec.rule, lambda}, dates);
}

std::vector<TradeSignal> signals_within(const std::vector<TradeSignal>& signals, const Date& first,
                                        const Date& last) {
  std::vector<TradeSignal> out;
  for (const auto& s : signals) {
    if (first <= s.date && s.date <= last) out.push_back(s);
  }
  return out;
}

Ledger evaluate(const OhlcvSeries& history, const Date& first, const Date& last,
                const StrategySpec& spec, double lambda, const BacktestConfig& config) {
  const auto known = slice(history, history.bars.front().date, last);
  const auto window = slice(known, first, last);
  if (window.empty()) throw Error(ErrorCode::EmptyPartition, "evaluation window has no bars");
  const auto signals = signals_within(generate_signals(known, spec, lambda), first, last);
  return run_backtest(window, signals, config);
}

}  // namespace vpmacd
