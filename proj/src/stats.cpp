#include "vpmacd/stats.hpp"

#include <algorithm>

namespace vpmacd {

std::string_view to_string(TestMethod method) noexcept {
  switch (method) {
    case TestMethod::TTest: return "t_test";
    case TestMethod::NeweyWest: return "newey_west";
    case TestMethod::BlockBootstrap: return "block_bootstrap";
  }
  return "unknown";
}

DiffSeries diff_series(const EquityCurve& newer, const EquityCurve& older) {
  if (newer.dates != older.dates || newer.size() != older.size()) {
    throw Error(ErrorCode::DateMismatch, "equity curves cover different dates");
  }
  DiffSeries out;
  out.dates.assign(newer.dates.begin() + (newer.dates.empty() ? 0 : 1), newer.dates.end());
  out.d = daily_returns(newer) - daily_returns(older);
  return out;
}

PairComparison compare_pair(const EquityCurve& newer, const EquityCurve& older,
                            const TestConfig& config) {
  PairComparison out;
  out.diff = diff_series(newer, older);
  const auto& d = out.diff.d;

  auto guarded = [](TestMethod method, TestParams params, auto&& run) {
    try {
      return run();
    } catch (const Error& e) {
      TestResult r;
      r.method = method;
      r.params = params;
      r.error = e.code();
      return r;
    }
  };

  out.results.push_back(guarded(TestMethod::TTest, {}, [&] { return one_sided_t(d); }));
  const int lag = config.nw_lag ? *config.nw_lag : newey_west_auto_lag(d.size());
  out.results.push_back(guarded(TestMethod::NeweyWest, TestParams{lag, {}, {}, {}},
                                [&] { return newey_west_t(d, lag); }));
  out.results.push_back(guarded(
      TestMethod::BlockBootstrap,
      TestParams{std::nullopt, config.resamples, config.block_len, config.seed},
      [&] { return circular_block_bootstrap(d, config.resamples, config.block_len, config.seed); }));
  return out;
}

Histogram histogram(std::span<const double> values, int bins) {
  if (bins < 1) throw Error(ErrorCode::InvalidArgument, "histogram needs at least one bin");
  Histogram h;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  double lo = 0.0, hi = 0.0;
  if (!values.empty()) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    lo = *mn;
    hi = *mx;
  }
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.edges[static_cast<std::size_t>(i)] = lo + width * i;
  h.edges.back() = hi;
  for (double v : values) {
    auto bin = static_cast<int>((v - lo) / width);
    bin = std::clamp(bin, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(bin)];
  }
  return h;
}

}  // namespace vpmacd
