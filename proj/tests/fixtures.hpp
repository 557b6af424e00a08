#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <set>
#include <tuple>
#include <vector>

#include "vpmacd/indicator_series.hpp"
#include "vpmacd/market_data.hpp"
#include "vpmacd/rng.hpp"
#include "vpmacd/signals.hpp"

namespace fixtures {

using vpmacd::Bar;
using vpmacd::Date;
using vpmacd::OhlcvSeries;

/// Consecutive weekdays starting at `first`.
inline std::vector<Date> weekdays(Date first, std::size_t n) {
  std::vector<Date> out;
  std::chrono::sys_days day{first};
  while (out.size() < n) {
    const std::chrono::weekday wd{day};
    if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) out.emplace_back(day);
    day += std::chrono::days{1};
  }
  return out;
}

/// Bars whose open/high/low hug the given closes.
inline OhlcvSeries from_closes(const std::vector<double>& closes, double volume = 1e6) {
  OhlcvSeries s{"FIX", {}};
  const auto dates = weekdays(vpmacd::make_date(2020, 1, 1), closes.size());
  for (std::size_t i = 0; i < closes.size(); ++i) {
    const double c = closes[i];
    const double o = i == 0 ? c : closes[i - 1];
    s.bars.push_back(Bar{dates[i], o, std::max(o, c) + 0.5, std::min(o, c) - 0.5, c, volume});
  }
  return s;
}

/// Geometric random walk with plausible intraday structure and volume.
inline OhlcvSeries random_walk(std::uint64_t seed, std::size_t n, double start = 100.0,
                               double vol = 0.015, double drift = 0.0) {
  vpmacd::Rng rng(seed);
  OhlcvSeries s{"RW", {}};
  const auto dates = weekdays(vpmacd::make_date(2015, 1, 5), n);
  double close = start;
  for (std::size_t i = 0; i < n; ++i) {
    const double open = close * std::exp(0.3 * vol * rng.normal());
    close = open * std::exp(drift + vol * rng.normal());
    const double high = std::max(open, close) * (1.0 + 0.5 * vol * std::abs(rng.normal()));
    const double low = std::min(open, close) * (1.0 - 0.5 * vol * std::abs(rng.normal()));
    const double volume = std::floor(1e6 * std::exp(0.4 * rng.normal()));
    s.bars.push_back(Bar{dates[i], open, high, low, close, volume});
  }
  return s;
}

inline OhlcvSeries scaled(OhlcvSeries s, double c) {
  for (auto& b : s.bars) {
    b.open *= c;
    b.high *= c;
    b.low *= c;
    b.close *= c;
  }
  return s;
}

using SignalKey = std::tuple<std::size_t, vpmacd::Side>;

/// Literal day-by-day evaluation of the two printed inequality pairs:
///   Buy  if line[t-1] <= buy_k * ref[t-1]  and line[t] > buy_k * ref[t]
///   Sell if line[t-1] >= ref[t-1]          and line[t] < ref[t]
/// `ref` empty means the zero line.
inline std::set<SignalKey> brute_force_rule(const vpmacd::Series& line, const vpmacd::Series* ref,
                                            double buy_k) {
  std::set<SignalKey> out;
  for (Eigen::Index t = 1; t < line.size(); ++t) {
    const bool ok = line.valid[t - 1] && line.valid[t] &&
                    (!ref || (ref->valid[t - 1] && ref->valid[t]));
    if (!ok) continue;
    const double r0 = ref ? ref->values[t - 1] : 0.0;
    const double r1 = ref ? ref->values[t] : 0.0;
    const double a = line.values[t - 1];
    const double b = line.values[t];
    if (a <= buy_k * r0 && b > buy_k * r1) out.insert({static_cast<std::size_t>(t), vpmacd::Side::Buy});
    if (a >= r0 && b < r1) out.insert({static_cast<std::size_t>(t), vpmacd::Side::Sell});
  }
  return out;
}

inline std::set<SignalKey> keys(const std::vector<vpmacd::TradeSignal>& signals) {
  std::set<SignalKey> out;
  for (const auto& s : signals) out.insert({s.index, s.side});
  return out;
}

/// Plain-loop EMA with SMA seed; independent of the library's runs logic.
inline std::vector<double> naive_ema(const std::vector<double>& x, int n) {
  std::vector<double> out(x.size(), std::nan(""));
  if (x.size() < static_cast<std::size_t>(n)) return out;
  double seed = 0.0;
  for (int i = 0; i < n; ++i) seed += x[static_cast<std::size_t>(i)];
  seed /= n;
  const double a = 2.0 / (n + 1.0);
  out[static_cast<std::size_t>(n - 1)] = seed;
  for (std::size_t t = static_cast<std::size_t>(n); t < x.size(); ++t) {
    out[t] = a * x[t] + (1.0 - a) * out[t - 1];
  }
  return out;
}

inline std::vector<double> to_vector(const Eigen::ArrayXd& a) {
  return std::vector<double>(a.data(), a.data() + a.size());
}

}  // namespace fixtures
