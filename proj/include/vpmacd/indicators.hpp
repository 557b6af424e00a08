#pragma once

#include <string>

#include <Eigen/Core>

#include "vpmacd/error.hpp"
#include "vpmacd/indicator_series.hpp"
#include "vpmacd/market_data.hpp"

namespace vpmacd {

struct EmaParams {
  int n = 1;

  /// Smoothing factor 2/(n+1).
  double alpha() const noexcept { return 2.0 / (n + 1.0); }
};

struct MacdParams {
  int n_fast = 12;
  int n_slow = 26;
  int n_signal = 9;
};

struct AdjustedPriceParams {
  int n_window = 20;
  int sigma_window = 20;
};

void check(const MacdParams& p);
void check(const AdjustedPriceParams& p);

/// Trailing arithmetic mean; valid from index n-1.
template <typename Derived>
IndicatorSeries<typename Derived::Scalar> sma(const Eigen::ArrayBase<Derived>& values, int n) {
  using Scalar = typename Derived::Scalar;
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sma period must be >= 1");
  if (values.size() < n) {
    throw Error(ErrorCode::WindowExceedsSeries, "sma window exceeds series length");
  }
  IndicatorSeries<Scalar> out(values.size());
  for (Eigen::Index t = n - 1; t < values.size(); ++t) {
    out.set(t, values.segment(t - n + 1, n).mean());
  }
  return out;
}

/// Exponential moving average of the valid slots of `in`.
///
/// Each maximal run of consecutive valid inputs is smoothed independently:
/// the first n values of the run seed the recursion with their simple mean
/// (placed at run_start + n - 1) and every later slot applies
/// `ema = alpha * x + (1 - alpha) * ema_prev`. Runs shorter than n produce no
/// output. For an all-valid input this gives valid_from = n - 1.
template <typename Scalar>
IndicatorSeries<Scalar> ema(const IndicatorSeries<Scalar>& in, const EmaParams& params) {
  const int n = params.n;
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "ema period must be >= 1");
  const Scalar alpha = static_cast<Scalar>(params.alpha());
  const Eigen::Index size = in.size();
  IndicatorSeries<Scalar> out(size);

  Eigen::Index t = 0;
  bool produced = false;
  while (t < size) {
    if (!in.valid[t]) {
      ++t;
      continue;
    }
    Eigen::Index run_end = t;
    while (run_end < size && in.valid[run_end]) ++run_end;
    if (run_end - t >= n) {
      Scalar prev = in.values.segment(t, n).mean();
      out.set(t + n - 1, prev);
      for (Eigen::Index k = t + n; k < run_end; ++k) {
        prev = alpha * in.values[k] + (Scalar(1) - alpha) * prev;
        out.set(k, prev);
      }
      produced = true;
    }
    t = run_end;
  }
  if (!produced) throw Error(ErrorCode::WindowExceedsSeries, "ema window exceeds series length");
  return out;
}

template <typename Derived>
IndicatorSeries<typename Derived::Scalar> ema(const Eigen::ArrayBase<Derived>& values,
                                              const EmaParams& params) {
  if (values.size() < params.n) {
    throw Error(ErrorCode::WindowExceedsSeries, "ema window exceeds series length");
  }
  return ema(IndicatorSeries<typename Derived::Scalar>::from_values(values), params);
}

/// MACD line (fast EMA minus slow EMA), its signal-line EMA, and histogram.
/// The input needs at least n_slow + n_signal valid observations from its
/// first valid slot so that two consecutive signal values exist.
template <typename Scalar>
MacdTriple<Scalar> macd_lines(const IndicatorSeries<Scalar>& prices, const MacdParams& params) {
  check(params);
  if (prices.size() - prices.valid_from < params.n_slow + params.n_signal) {
    throw Error(ErrorCode::WindowExceedsSeries, "series too short for MACD warm-up");
  }
  const auto fast = ema(prices, EmaParams{params.n_fast});
  const auto slow = ema(prices, EmaParams{params.n_slow});

  MacdTriple<Scalar> out;
  out.macd_line = IndicatorSeries<Scalar>(prices.size());
  for (Eigen::Index t = 0; t < prices.size(); ++t) {
    if (fast.valid[t] && slow.valid[t]) out.macd_line.set(t, fast.values[t] - slow.values[t]);
  }
  out.signal_line = ema(out.macd_line, EmaParams{params.n_signal});
  out.histogram = IndicatorSeries<Scalar>(prices.size());
  for (Eigen::Index t = 0; t < prices.size(); ++t) {
    if (out.signal_line.valid[t]) {
      out.histogram.set(t, out.macd_line.values[t] - out.signal_line.values[t]);
    }
  }
  return out;
}

template <typename Derived>
MacdTriple<typename Derived::Scalar> macd_lines(const Eigen::ArrayBase<Derived>& prices,
                                                const MacdParams& params) {
  return macd_lines(IndicatorSeries<typename Derived::Scalar>::from_values(prices), params);
}

/// VP-MACD: the MACD pipeline run on the volume-price adjusted series.
template <typename Scalar>
MacdTriple<Scalar> vp_macd_lines(const IndicatorSeries<Scalar>& adjusted,
                                 const MacdParams& params) {
  return macd_lines(adjusted, params);
}

/// |close - open| / (high - low); zero for a bar with no range.
double body_ratio(const Bar& bar) noexcept;

/// Rolling sample standard deviation of the daily high-low range over
/// `sigma_window` bars ending at i, divided by close_i.
Series range_volatility(const OhlcvSeries& series, int sigma_window);

/// Volume-weighted adjusted price over the N bars strictly before t:
///
///   P*_t = sum_{i=t-N}^{t-1} close_i * volume_i * sigma_i * r_i
///          / sum_{i=t-N}^{t-1} volume_i
///
/// Valid from (sigma_window - 1) + N. A window whose volume sums to zero
/// leaves that slot invalid.
Series adjusted_price(const OhlcvSeries& series, const AdjustedPriceParams& params);

}  // namespace vpmacd
