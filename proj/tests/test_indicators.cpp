#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "vpmacd/indicators.hpp"

using namespace vpmacd;
using doctest::Approx;

namespace {

constexpr double kTol = 1e-9;

Eigen::ArrayXd arr(std::initializer_list<double> v) {
  Eigen::ArrayXd a(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) a[i++] = x;
  return a;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("sma") {
  const auto a = sma(arr({1, 2, 3}), 3);
  CHECK(a.valid_from == 2);
  CHECK(a[2] == Approx(2.0));

  const auto b = sma(arr({2, 4, 6, 8}), 2);
  CHECK_FALSE(b.valid[0]);
  CHECK(std::isnan(b[0]));
  CHECK(b[1] == Approx(3.0));
  CHECK(b[2] == Approx(5.0));
  CHECK(b[3] == Approx(7.0));

  const auto c = sma(Eigen::ArrayXd::Constant(10, 4.25), 4);
  for (Eigen::Index t = c.valid_from; t < c.size(); ++t) CHECK(c[t] == 4.25);

  CHECK(code_of([] { sma(arr({1, 2}), 3); }) == ErrorCode::WindowExceedsSeries);
}

TEST_CASE("ema basics") {
  CHECK(EmaParams{3}.alpha() == 0.5);
  CHECK(EmaParams{12}.alpha() == 2.0 / 13.0);

  SUBCASE("constant series is a fixed point") {
    const auto e = ema(Eigen::ArrayXd::Constant(30, 7.5), EmaParams{9});
    CHECK(e.valid_from == 8);
    for (Eigen::Index t = 8; t < 30; ++t) CHECK(e[t] == 7.5);
  }
  SUBCASE("n = 1 reproduces the input") {
    const auto x = arr({3, 1, 4, 1, 5, 9, 2, 6});
    const auto e = ema(x, EmaParams{1});
    CHECK(e.valid_from == 0);
    for (Eigen::Index t = 0; t < x.size(); ++t) CHECK(e[t] == x[t]);
  }
  SUBCASE("step with SMA seed") {
    const auto e = ema(arr({0, 0, 0, 0, 1}), EmaParams{3});
    CHECK(e.valid_from == 2);
    CHECK(e[2] == 0.0);
    CHECK(e[3] == 0.0);
    CHECK(e[4] == 0.5);
  }
  CHECK(code_of([] { ema(arr({1, 2}), EmaParams{3}); }) == ErrorCode::WindowExceedsSeries);
}

TEST_CASE("ema matches a plain-loop recursion") {
  const auto s = fixtures::random_walk(21, 200);
  const auto closes = fixtures::to_vector(s.closes());
  for (int n : {2, 5, 12, 26}) {
    const auto lib = ema(s.closes(), EmaParams{n});
    const auto ref = fixtures::naive_ema(closes, n);
    for (std::size_t t = 0; t < closes.size(); ++t) {
      if (std::isnan(ref[t])) {
        CHECK_FALSE(lib.valid[static_cast<Eigen::Index>(t)]);
      } else {
        CHECK(lib[static_cast<Eigen::Index>(t)] == Approx(ref[t]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("ema is linear and stays inside the running envelope") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::ArrayXd x(80), y(80);
    for (Eigen::Index i = 0; i < 80; ++i) {
      x[i] = rng.normal();
      y[i] = 10.0 + rng.normal();
    }
    const double a = 0.5 + rng.uniform01(), b = -2.0 + rng.uniform01();
    const int n = 2 + static_cast<int>(rng.uniform_index(20));
    const auto lhs = ema((a * x + b * y).eval(), EmaParams{n});
    const auto ex = ema(x, EmaParams{n});
    const auto ey = ema(y, EmaParams{n});
    for (Eigen::Index t = lhs.valid_from; t < 80; ++t) {
      CHECK(std::abs(lhs[t] - (a * ex[t] + b * ey[t])) < kTol);
      const double lo = x.head(t + 1).minCoeff(), hi = x.head(t + 1).maxCoeff();
      CHECK(ex[t] >= lo - kTol);
      CHECK(ex[t] <= hi + kTol);
    }
  }
}

TEST_CASE("ema restarts after an invalid gap") {
  Series in(12);
  for (Eigen::Index t = 0; t < 12; ++t) {
    if (t != 5) in.set(t, double(t));
  }
  const auto e = ema(in, EmaParams{3});
  CHECK(e.valid_from == 2);
  CHECK(e.valid[4]);
  CHECK_FALSE(e.valid[5]);
  CHECK_FALSE(e.valid[6]);
  CHECK_FALSE(e.valid[7]);
  CHECK(e[8] == Approx(7.0));  // mean of 6, 7, 8
}

TEST_CASE("macd on a constant series is identically zero") {
  const auto m = macd_lines(Eigen::ArrayXd::Constant(40, 123.0), MacdParams{});
  CHECK(m.macd_line.valid_from == 25);
  CHECK(m.signal_line.valid_from == 33);
  CHECK(m.histogram.valid_from == 33);
  for (Eigen::Index t = 33; t < 40; ++t) {
    CHECK(m.macd_line[t] == 0.0);
    CHECK(m.signal_line[t] == 0.0);
    CHECK(m.histogram[t] == 0.0);
  }
  for (Eigen::Index t = 0; t < 33; ++t) CHECK_FALSE(m.signal_line.valid[t]);
}

TEST_CASE("macd of a ramp equals the closed-form EMA lag difference") {
  // For P_t = t an SMA-seeded EMA sits exactly (n - 1) / 2 below the ramp,
  // so MACD = (26 - 1) / 2 - (12 - 1) / 2 = 7 and the histogram vanishes.
  Eigen::ArrayXd ramp = Eigen::ArrayXd::LinSpaced(200, 0.0, 199.0);
  const auto m = macd_lines(ramp, MacdParams{});
  for (Eigen::Index t = m.signal_line.valid_from; t < 200; ++t) {
    CHECK(m.macd_line[t] == Approx(7.0).epsilon(1e-12));
    CHECK(std::abs(m.histogram[t]) < kTol);
  }
}

TEST_CASE("histogram equals macd minus signal") {
  const auto s = fixtures::random_walk(31, 300);
  const auto m = macd_lines(s.closes(), MacdParams{});
  for (Eigen::Index t = 0; t < m.histogram.size(); ++t) {
    CHECK(m.histogram.valid[t] == m.signal_line.valid[t]);
    if (m.histogram.valid[t]) CHECK(m.histogram[t] == m.macd_line[t] - m.signal_line[t]);
  }
}

TEST_CASE("macd parameter and length checks") {
  CHECK(code_of([] { macd_lines(Eigen::ArrayXd::Constant(34, 1.0), MacdParams{}); }) ==
        ErrorCode::WindowExceedsSeries);
  CHECK(code_of([] { macd_lines(Eigen::ArrayXd::Constant(100, 1.0), MacdParams{26, 12, 9}); }) ==
        ErrorCode::InvalidArgument);
  CHECK_NOTHROW(macd_lines(Eigen::ArrayXd::Constant(35, 1.0), MacdParams{}));
}

TEST_CASE("body_ratio") {
  const Date d = make_date(2023, 1, 3);
  CHECK(body_ratio(Bar{d, 9, 12, 9, 12, 1}) == 1.0);
  CHECK(body_ratio(Bar{d, 10, 12, 9, 10, 1}) == 0.0);
  CHECK(body_ratio(Bar{d, 10, 12, 9, 11, 1}) == Approx(1.0 / 3.0));
  CHECK(body_ratio(Bar{d, 10, 10, 10, 10, 1}) == 0.0);
  for (const auto& b : fixtures::random_walk(2, 300).bars) {
    const double r = body_ratio(b);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("range_volatility") {
  SUBCASE("constant range gives zero") {
    auto s = fixtures::from_closes(std::vector<double>(30, 50.0));
    const auto v = range_volatility(s, 5);
    CHECK(v.valid_from == 4);
    for (Eigen::Index t = 4; t < v.size(); ++t) CHECK(v[t] == 0.0);
  }
  SUBCASE("two-bar window by hand") {
    const Date d0 = make_date(2023, 1, 3), d1 = make_date(2023, 1, 4);
    OhlcvSeries s{"X", {Bar{d0, 10, 10.5, 9.5, 10, 1}, Bar{d1, 10, 11.5, 8.5, 10, 1}}};
    const auto v = range_volatility(s, 2);
    CHECK_FALSE(v.valid[0]);
    CHECK(v[1] == Approx(std::sqrt(2.0) / 10.0).epsilon(1e-12));
    CHECK(v[1] == Approx(0.14142).epsilon(1e-4));
  }
  SUBCASE("scale free") {
    const auto s = fixtures::random_walk(17, 100);
    const auto a = range_volatility(s, 20);
    const auto b = range_volatility(fixtures::scaled(s, 7.0), 20);
    for (Eigen::Index t = a.valid_from; t < a.size(); ++t) CHECK(b[t] == Approx(a[t]).epsilon(1e-12));
  }
  CHECK(code_of([] { range_volatility(fixtures::random_walk(1, 5), 6); }) ==
        ErrorCode::WindowExceedsSeries);
}

TEST_CASE("adjusted_price with N = 1 is the previous bar's product") {
  const auto s = fixtures::random_walk(41, 60);
  const AdjustedPriceParams p{1, 5};
  const auto adj = adjusted_price(s, p);
  const auto sigma = range_volatility(s, 5);
  CHECK(adj.valid_from == 5);
  for (Eigen::Index t = 5; t < adj.size(); ++t) {
    const auto& prev = s[static_cast<std::size_t>(t - 1)];
    CHECK(adj[t] == Approx(prev.close * sigma[t - 1] * body_ratio(prev)).epsilon(1e-12));
  }
}

TEST_CASE("adjusted_price matches an independent window summation") {
  const auto s = fixtures::random_walk(43, 80);
  const AdjustedPriceParams p{3, 4};
  const auto adj = adjusted_price(s, p);
  // Brute force: recompute sigma and r from raw bars for each term.
  auto sigma_at = [&](std::size_t i) {
    double mean = 0.0;
    for (std::size_t k = i - 3; k <= i; ++k) mean += s[k].high - s[k].low;
    mean /= 4.0;
    double ss = 0.0;
    for (std::size_t k = i - 3; k <= i; ++k) ss += std::pow(s[k].high - s[k].low - mean, 2);
    return std::sqrt(ss / 3.0) / s[i].close;
  };
  for (std::size_t t = 6; t < s.size(); ++t) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = t - 3; i < t; ++i) {
      const auto& b = s[i];
      const double r = std::abs(b.close - b.open) / (b.high - b.low);
      num += b.close * b.volume * sigma_at(i) * r;
      den += b.volume;
    }
    CHECK(adj[static_cast<Eigen::Index>(t)] == Approx(num / den).epsilon(1e-12));
  }
  for (Eigen::Index t = 0; t < 6; ++t) CHECK_FALSE(adj.valid[t]);
}

TEST_CASE("adjusted_price with equal weights is an SMA of closes") {
  // Constant volume and sigma * r == 1 for every bar cancels the weights.
  // Use a hand-built series where r = 1 and the range std / close == 1.
  std::vector<Bar> bars;
  const auto dates = fixtures::weekdays(make_date(2021, 1, 4), 40);
  for (std::size_t i = 0; i < 40; ++i) {
    // Alternating ranges 1 and 3 give a two-bar sample std of sqrt(2).
    const double range = i % 2 == 0 ? 1.0 : 3.0;
    const double close = std::sqrt(2.0);
    bars.push_back(Bar{dates[i], close + range, close + range, close, close, 500.0});
  }
  // open = high, close = low: r = 1. sigma_i = sqrt(2) / sqrt(2) = 1.
  OhlcvSeries s{"EQ", bars};
  const auto adj = adjusted_price(s, AdjustedPriceParams{4, 2});
  const auto ref = sma(s.closes(), 4);
  for (Eigen::Index t = adj.valid_from; t < adj.size(); ++t) {
    CHECK(adj[t] == Approx(ref[t - 1]).epsilon(1e-12));
  }
}

TEST_CASE("adjusted_price leaves zero-volume windows invalid") {
  auto s = fixtures::random_walk(45, 40);
  for (std::size_t i = 20; i < 23; ++i) s.bars[i].volume = 0.0;
  const auto adj = adjusted_price(s, AdjustedPriceParams{3, 5});
  CHECK(adj.valid[22]);  // window 19..21 still holds bar 19
  CHECK_FALSE(adj.valid[23]);
  CHECK(adj.valid[24]);
}

TEST_CASE("adjusted_price scales linearly with prices") {
  const auto s = fixtures::random_walk(47, 120);
  const auto a = adjusted_price(s, AdjustedPriceParams{});
  const auto b = adjusted_price(fixtures::scaled(s, 10.0), AdjustedPriceParams{});
  CHECK(a.valid_from == 39);
  for (Eigen::Index t = a.valid_from; t < a.size(); ++t) {
    CHECK(b[t] == Approx(10.0 * a[t]).epsilon(1e-12));
  }
}

TEST_CASE("vp_macd_lines") {
  const auto s = fixtures::random_walk(51, 300);
  const auto adj = adjusted_price(s, AdjustedPriceParams{});

  SUBCASE("identical to macd_lines on the same input") {
    const auto a = vp_macd_lines(adj, MacdParams{});
    const auto b = macd_lines(adj, MacdParams{});
    for (Eigen::Index t = 0; t < adj.size(); ++t) {
      CHECK(a.macd_line.valid[t] == b.macd_line.valid[t]);
      CHECK(a.signal_line.valid[t] == b.signal_line.valid[t]);
      if (a.signal_line.valid[t]) {
        CHECK(a.macd_line[t] == b.macd_line[t]);
        CHECK(a.signal_line[t] == b.signal_line[t]);
      }
    }
  }
  SUBCASE("warm-up composes both windows") {
    const auto m = vp_macd_lines(adj, MacdParams{});
    CHECK(m.signal_line.valid_from == adj.valid_from + 25 + 8);
  }
  SUBCASE("scaling scales all three lines") {
    Series scaled_adj = adj;
    scaled_adj.values *= 3.0;
    const auto a = vp_macd_lines(adj, MacdParams{});
    const auto b = vp_macd_lines(scaled_adj, MacdParams{});
    for (Eigen::Index t = a.signal_line.valid_from; t < adj.size(); ++t) {
      CHECK(b.macd_line[t] == Approx(3.0 * a.macd_line[t]).epsilon(1e-12));
      CHECK(b.signal_line[t] == Approx(3.0 * a.signal_line[t]).epsilon(1e-12));
      CHECK(std::abs(b.histogram[t] - 3.0 * a.histogram[t]) < kTol);
    }
  }
  SUBCASE("constant adjusted series gives zero lines") {
    Series flat = Series::from_values(Eigen::ArrayXd::Constant(80, 0.02));
    const auto m = vp_macd_lines(flat, MacdParams{});
    for (Eigen::Index t = m.signal_line.valid_from; t < 80; ++t) {
      CHECK(m.macd_line[t] == 0.0);
      CHECK(m.histogram[t] == 0.0);
    }
  }
}
