#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/SpecialFunctions>

#include "vpmacd/backtest.hpp"
#include "vpmacd/error.hpp"
#include "vpmacd/rng.hpp"

namespace vpmacd {

enum class TestMethod { TTest, NeweyWest, BlockBootstrap };

std::string_view to_string(TestMethod method) noexcept;

struct TestParams {
  std::optional<int> lag;
  std::optional<int> resamples;
  std::optional<int> block_len;
  std::optional<std::uint64_t> seed;
};

/// Outcome of one one-sided test of H0: mean(d) <= 0. A test that could not
/// be evaluated carries `error` and no statistic or p-value.
struct TestResult {
  TestMethod method = TestMethod::TTest;
  std::optional<double> statistic;
  std::optional<double> p_value;
  TestParams params;
  std::optional<ErrorCode> error;
  /// Bootstrap only: resample means centered on the observed mean.
  std::vector<double> distribution;
};

/// Per-day return differences d_t = R_t(new) - R_t(old).
struct DiffSeries {
  std::vector<Date> dates;
  Eigen::ArrayXd d;
};

/// P(T > t) for Student-t with `df` degrees of freedom.
inline double student_t_upper_tail(double t, double df) {
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double x = df / (df + t * t);
  const double half = 0.5 * Eigen::numext::betainc(0.5 * df, 0.5, x);
  return t >= 0.0 ? half : 1.0 - half;
}

/// mean / (s / sqrt(T)) with sample std s; p from t(T-1).
template <typename Derived>
TestResult one_sided_t(const Eigen::ArrayBase<Derived>& d) {
  const Eigen::Index n = d.size();
  if (n < 2) throw Error(ErrorCode::SeriesTooShort, "t-test needs at least two observations");
  const double mean = d.mean();
  const double s = std::sqrt((d - mean).square().sum() / double(n - 1));
  if (!(s > 0.0) || (d == d[0]).all()) throw Error(ErrorCode::ZeroVariance, "difference series has zero variance");
  TestResult r;
  r.method = TestMethod::TTest;
  r.statistic = mean / (s / std::sqrt(double(n)));
  r.p_value = student_t_upper_tail(*r.statistic, double(n - 1));
  return r;
}

/// floor(4 * (T / 100)^(2/9)).
inline int newey_west_auto_lag(Eigen::Index n) {
  return static_cast<int>(std::floor(4.0 * std::pow(double(n) / 100.0, 2.0 / 9.0)));
}

/// Bartlett-weighted long-run variance
///   S = g0 + 2 * sum_{j=1}^{lag} (1 - j / (lag + 1)) * g_j,
/// autocovariances g_j of the demeaned series taken over T (not T - j).
template <typename Derived>
double newey_west_long_run_variance(const Eigen::ArrayBase<Derived>& d, int lag) {
  const Eigen::Index n = d.size();
  if (lag < 0) throw Error(ErrorCode::InvalidArgument, "lag must be non-negative");
  if (n < lag + 2) throw Error(ErrorCode::SeriesTooShort, "series shorter than lag + 2");
  const Eigen::ArrayXd z = d - d.mean();
  double s = z.square().sum() / double(n);
  for (int j = 1; j <= lag; ++j) {
    const double gamma = (z.tail(n - j) * z.head(n - j)).sum() / double(n);
    s += 2.0 * (1.0 - double(j) / double(lag + 1)) * gamma;
  }
  return s;
}

/// HAC t-statistic mean / sqrt(S / T); p from t(T-1). `lag` empty = auto.
template <typename Derived>
TestResult newey_west_t(const Eigen::ArrayBase<Derived>& d, std::optional<int> lag = std::nullopt) {
  const Eigen::Index n = d.size();
  const int used = lag ? *lag : newey_west_auto_lag(n);
  const double s = newey_west_long_run_variance(d, used);
  if (!(s > 0.0) || (d == d[0]).all()) {
    throw Error(ErrorCode::NonPositiveLongRunVariance, "long-run variance is not positive");
  }
  TestResult r;
  r.method = TestMethod::NeweyWest;
  r.params.lag = used;
  r.statistic = d.mean() / std::sqrt(s / double(n));
  r.p_value = student_t_upper_tail(*r.statistic, double(n - 1));
  return r;
}

/// Circular block bootstrap of the mean under H0.
///
/// Resample b uses its own generator seeded by derive_seed(seed, b), draws
/// ceil(T / block_len) uniform start positions, concatenates the wrapped
/// blocks and truncates to T. The p-value is
///   (1 + #{b : mean_b - mean(d) >= mean(d)}) / (resamples + 1).
template <typename Derived>
TestResult circular_block_bootstrap(const Eigen::ArrayBase<Derived>& d, int resamples,
                                    int block_len, std::uint64_t seed) {
  const Eigen::Index n = d.size();
  if (resamples < 1 || block_len < 1) {
    throw Error(ErrorCode::InvalidArgument, "resamples and block_len must be >= 1");
  }
  if (n < block_len) throw Error(ErrorCode::BlockLongerThanSeries, "block longer than series");

  const Eigen::ArrayXd x = d;
  const double observed = x.mean();
  const Eigen::Index blocks = (n + block_len - 1) / block_len;

  TestResult r;
  r.method = TestMethod::BlockBootstrap;
  r.params = TestParams{std::nullopt, resamples, block_len, seed};
  r.distribution.resize(static_cast<std::size_t>(resamples));

  std::size_t exceed = 0;
  for (int b = 0; b < resamples; ++b) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    double sum = 0.0;
    Eigen::Index filled = 0;
    for (Eigen::Index k = 0; k < blocks && filled < n; ++k) {
      const auto start = static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
      for (Eigen::Index j = 0; j < block_len && filled < n; ++j, ++filled) {
        sum += x[(start + j) % n];
      }
    }
    const double centered = sum / double(n) - observed;
    r.distribution[static_cast<std::size_t>(b)] = centered;
    if (centered >= observed) ++exceed;
  }
  r.p_value = double(1 + exceed) / double(resamples + 1);
  return r;
}

struct TestConfig {
  std::optional<int> nw_lag;  // empty = auto
  int resamples = 1000;
  int block_len = 5;
  std::uint64_t seed = 42;
};

/// Three results, in TTest, NeweyWest, BlockBootstrap order.
struct PairComparison {
  DiffSeries diff;
  std::vector<TestResult> results;
};

/// Daily-return differences of two curves over identical dates.
DiffSeries diff_series(const EquityCurve& newer, const EquityCurve& older);

/// Runs all three tests on new-minus-old daily returns. Per-test failures
/// (e.g. ZeroVariance) are recorded in the result, not thrown.
PairComparison compare_pair(const EquityCurve& newer, const EquityCurve& older,
                            const TestConfig& config);

struct Histogram {
  std::vector<double> edges;  // bins + 1
  std::vector<std::size_t> counts;
};

/// Equal-width bins over [min, max]; the last bin is closed on the right.
Histogram histogram(std::span<const double> values, int bins);

}  // namespace vpmacd
