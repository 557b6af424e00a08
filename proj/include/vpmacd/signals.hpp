#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "vpmacd/date.hpp"
#include "vpmacd/error.hpp"
#include "vpmacd/indicator_series.hpp"

namespace vpmacd {

enum class Side { Buy, Sell };

std::string_view to_string(Side side) noexcept;

/// Instruction generated at the close of `date` (bar `index`).
struct TradeSignal {
  Date date;
  Side side;
  std::size_t index = 0;

  friend bool operator==(const TradeSignal&, const TradeSignal&) = default;
};

enum class Rule { SignalCross, ZeroCross, LambdaAdjusted };

std::string_view to_string(Rule rule) noexcept;

struct RuleConfig {
  Rule rule = Rule::SignalCross;
  double lambda = 1.0;
};

inline constexpr double kLambdaMin = 0.8;
inline constexpr double kLambdaMax = 1.0;

/// Throws LambdaOutOfRange outside [0.8, 1.0] (with 1e-12 slack for grid
/// values built by repeated addition).
void check_lambda(double lambda);

namespace detail {

// Emits Buy when `line` crosses strictly above `buy_level` and Sell when it
// crosses strictly below `sell_level`, evaluated on every t with t-1 and t
// valid for every participating series. Both legs may fire on one date.
template <typename Scalar, typename BuyLevel, typename SellLevel>
std::vector<TradeSignal> scan(const IndicatorSeries<Scalar>& line,
                              const IndicatorSeries<Scalar>* reference, BuyLevel buy_level,
                              SellLevel sell_level, std::span<const Date> dates) {
  if (static_cast<Eigen::Index>(dates.size()) != line.size()) {
    throw Error(ErrorCode::InvalidArgument, "dates are not aligned with the indicator");
  }
  auto usable = [&](Eigen::Index t) {
    return line.valid[t] && (reference == nullptr || reference->valid[t]);
  };
  std::vector<TradeSignal> out;
  for (Eigen::Index t = 1; t < line.size(); ++t) {
    if (!usable(t - 1) || !usable(t)) continue;
    const Scalar prev = line.values[t - 1];
    const Scalar curr = line.values[t];
    const auto at = static_cast<std::size_t>(t);
    if (prev <= buy_level(t - 1) && curr > buy_level(t)) {
      out.push_back({dates[at], Side::Buy, at});
    }
    if (prev >= sell_level(t - 1) && curr < sell_level(t)) {
      out.push_back({dates[at], Side::Sell, at});
    }
  }
  return out;
}

}  // namespace detail

/// MACD line versus signal line crossovers.
template <typename Scalar>
std::vector<TradeSignal> crossover_signals(const MacdTriple<Scalar>& triple,
                                           std::span<const Date> dates) {
  const auto& s = triple.signal_line;
  auto level = [&](Eigen::Index t) { return s.values[t]; };
  return detail::scan(triple.macd_line, &s, level, level, dates);
}

/// MACD line versus zero.
template <typename Scalar>
std::vector<TradeSignal> zero_line_signals(const IndicatorSeries<Scalar>& macd,
                                           std::span<const Date> dates) {
  auto zero = [](Eigen::Index) { return Scalar(0); };
  return detail::scan(macd, static_cast<const IndicatorSeries<Scalar>*>(nullptr), zero, zero,
                      dates);
}

/// Buy when the line crosses above lambda * signal; sell on the plain
/// (unscaled) downward crossover. With a negative signal line lambda < 1
/// raises the buy threshold; no sign special-casing is applied.
template <typename Scalar>
std::vector<TradeSignal> lambda_adjusted_signals(const MacdTriple<Scalar>& triple, double lambda,
                                                 std::span<const Date> dates) {
  check_lambda(lambda);
  const auto& s = triple.signal_line;
  const auto lam = static_cast<Scalar>(lambda);
  auto buy = [&](Eigen::Index t) { return lam * s.values[t]; };
  auto sell = [&](Eigen::Index t) { return s.values[t]; };
  return detail::scan(triple.macd_line, &s, buy, sell, dates);
}

template <typename Scalar>
std::vector<TradeSignal> apply_rule(const MacdTriple<Scalar>& triple, const RuleConfig& config,
                                    std::span<const Date> dates) {
  switch (config.rule) {
    case Rule::SignalCross: return crossover_signals(triple, dates);
    case Rule::ZeroCross: return zero_line_signals(triple.macd_line, dates);
    case Rule::LambdaAdjusted: return lambda_adjusted_signals(triple, config.lambda, dates);
  }
  return {};
}

}  // namespace vpmacd
