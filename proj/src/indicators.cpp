#include "vpmacd/indicators.hpp"

#include <cmath>

namespace vpmacd {

void check(const MacdParams& p) {
  if (p.n_fast < 1 || p.n_slow < 1 || p.n_signal < 1 || p.n_fast >= p.n_slow) {
    throw Error(ErrorCode::InvalidArgument, "MACD periods need 1 <= fast < slow and signal >= 1");
  }
}

void check(const AdjustedPriceParams& p) {
  if (p.n_window < 1 || p.sigma_window < 2) {
    throw Error(ErrorCode::InvalidArgument, "adjusted price needs n_window >= 1, sigma_window >= 2");
  }
}

double body_ratio(const Bar& bar) noexcept {
  const double range = bar.high - bar.low;
  if (!(range > 0.0)) return 0.0;
  return std::abs(bar.close - bar.open) / range;
}

Series range_volatility(const OhlcvSeries& series, int sigma_window) {
  if (sigma_window < 2) throw Error(ErrorCode::InvalidArgument, "sigma_window must be >= 2");
  const auto n = static_cast<Eigen::Index>(series.size());
  if (n < sigma_window) {
    throw Error(ErrorCode::WindowExceedsSeries, "sigma window exceeds series length");
  }
  const Eigen::ArrayXd range = series.highs() - series.lows();
  const Eigen::ArrayXd close = series.closes();
  Series out(n);
  for (Eigen::Index i = sigma_window - 1; i < n; ++i) {
    const auto window = range.segment(i - sigma_window + 1, sigma_window);
    const double var = (window - window.mean()).square().sum() / (sigma_window - 1);
    out.set(i, std::sqrt(var) / close[i]);
  }
  return out;
}

Series adjusted_price(const OhlcvSeries& series, const AdjustedPriceParams& params) {
  check(params);
  const auto n = static_cast<Eigen::Index>(series.size());
  if (n < params.n_window + params.sigma_window) {
    throw Error(ErrorCode::WindowExceedsSeries, "series too short for adjusted price windows");
  }
  const Series sigma = range_volatility(series, params.sigma_window);
  Eigen::ArrayXd ratio(n);
  for (Eigen::Index i = 0; i < n; ++i) ratio[i] = body_ratio(series[static_cast<std::size_t>(i)]);

  const Eigen::ArrayXd close = series.closes();
  const Eigen::ArrayXd volume = series.volumes();
  // NaN sigma slots fall outside every window used below.
  const Eigen::ArrayXd weighted = close * volume * sigma.values * ratio;

  const Eigen::Index N = params.n_window;
  Series out(n);
  for (Eigen::Index t = sigma.valid_from + N; t < n; ++t) {
    const double vol_sum = volume.segment(t - N, N).sum();
    if (vol_sum == 0.0) continue;
    out.set(t, weighted.segment(t - N, N).sum() / vol_sum);
  }
  return out;
}

}  // namespace vpmacd
