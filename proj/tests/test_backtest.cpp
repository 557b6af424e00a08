#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "vpmacd/backtest.hpp"
#include "vpmacd/strategy.hpp"

using namespace vpmacd;
using doctest::Approx;

namespace {

// Flat bars at `price` except where overridden; high/low bracket open/close.
OhlcvSeries flat_series(std::size_t n, double price = 100.0) {
  OhlcvSeries s{"FLAT", {}};
  for (const auto& d : fixtures::weekdays(make_date(2023, 1, 2), n)) {
    s.bars.push_back(Bar{d, price, price + 1, price - 1, price, 1e6});
  }
  return s;
}

TradeSignal at(const OhlcvSeries& s, std::size_t i, Side side) { return {s[i].date, side, i}; }

}  // namespace

TEST_CASE("buy sizing floors shares and keeps the residual in cash") {
  const auto s = flat_series(5);
  const auto l = run_backtest(s, {at(s, 0, Side::Buy)}, BacktestConfig{});
  REQUIRE(l.open_position);
  CHECK(l.open_position->shares == 999);
  CHECK(l.open_position->entry_price == Approx(100.04).epsilon(1e-15));
  CHECK(l.open_position->entry_date == s[1].date);
  CHECK(l.final_cash == Approx(60.04).epsilon(1e-9));
  CHECK(l.trades.empty());
  CHECK(l.equity.values[0] == 100'000.0);
  // Marked to the close of 100 from bar 1 on.
  CHECK(l.equity.values[1] == Approx(60.04 + 999 * 100.0).epsilon(1e-12));
}

TEST_CASE("same-price round trip costs 8 bps of notional") {
  const auto s = flat_series(5);
  const auto l = run_backtest(s, {at(s, 0, Side::Buy), at(s, 1, Side::Sell)}, BacktestConfig{});
  REQUIRE(l.trades.size() == 1);
  const auto& t = l.trades[0];
  CHECK(t.shares == 999);
  CHECK(t.exit_price - t.entry_price == Approx(-0.08).epsilon(1e-12));
  CHECK(t.pnl == Approx(-0.08 * 999).epsilon(1e-12));
  CHECK(t.pnl == t.shares * (t.exit_price - t.entry_price));
  CHECK(t.entry_date == s[1].date);
  CHECK(t.exit_date == s[2].date);
  CHECK(l.equity.values[4] == Approx(100'000.0 - 79.92).epsilon(1e-12));
}

TEST_CASE("no signals leaves capital untouched") {
  const auto s = fixtures::random_walk(3, 50);
  const auto l = run_backtest(s, {}, BacktestConfig{});
  CHECK(l.trades.empty());
  CHECK_FALSE(l.open_position);
  CHECK((l.equity.values == 100'000.0).all());
  CHECK(l.equity.dates == s.dates());
}

TEST_CASE("position logic ignores redundant signals") {
  const auto s = flat_series(10);
  const std::vector<TradeSignal> sig{at(s, 0, Side::Sell),  // flat: ignored
                                     at(s, 1, Side::Buy),   at(s, 2, Side::Buy),  // long: ignored
                                     at(s, 4, Side::Sell),  at(s, 5, Side::Sell),
                                     at(s, 6, Side::Buy)};
  const auto l = run_backtest(s, sig, BacktestConfig{});
  REQUIRE(l.trades.size() == 1);
  CHECK(l.trades[0].entry_date == s[2].date);
  CHECK(l.trades[0].exit_date == s[5].date);
  REQUIRE(l.open_position);
  CHECK(l.open_position->entry_date == s[7].date);
}

TEST_CASE("same-date Buy and Sell resolve by position") {
  const auto s = flat_series(6);
  const std::vector<TradeSignal> sig{at(s, 0, Side::Buy), at(s, 0, Side::Sell),
                                     at(s, 2, Side::Buy), at(s, 2, Side::Sell)};
  const auto l = run_backtest(s, sig, BacktestConfig{});
  REQUIRE(l.trades.size() == 1);
  CHECK(l.trades[0].entry_date == s[1].date);
  CHECK(l.trades[0].exit_date == s[3].date);
}

TEST_CASE("a signal on the last bar is dropped") {
  const auto s = flat_series(4);
  const auto l = run_backtest(s, {at(s, 3, Side::Buy)}, BacktestConfig{});
  CHECK_FALSE(l.open_position);
  CHECK((l.equity.values == 100'000.0).all());
}

TEST_CASE("open position at the end is marked to market but not a trade") {
  auto s = flat_series(6);
  s.bars[5].close = 110.0;
  s.bars[5].high = 111.0;
  const auto l = run_backtest(s, {at(s, 1, Side::Buy)}, BacktestConfig{});
  CHECK(l.trades.empty());
  REQUIRE(l.open_position);
  CHECK(l.equity.values[5] == Approx(l.final_cash + 999 * 110.0));
}

TEST_CASE("buy with too little capital is skipped with a warning") {
  const auto s = flat_series(5, 500.0);
  BacktestConfig cfg;
  cfg.initial_capital = 400.0;
  const auto l = run_backtest(s, {at(s, 0, Side::Buy)}, cfg);
  CHECK_FALSE(l.open_position);
  REQUIRE(l.warnings.size() == 1);
  CHECK(l.warnings[0].date == s[1].date);
}

TEST_CASE("min_unit rounds down to whole lots") {
  const auto s = flat_series(5);
  BacktestConfig cfg;
  cfg.min_unit = 100;
  const auto l = run_backtest(s, {at(s, 0, Side::Buy)}, cfg);
  REQUIRE(l.open_position);
  CHECK(l.open_position->shares == 900);
}

TEST_CASE("signals must be dated on a bar") {
  const auto s = flat_series(5);
  try {
    run_backtest(s, {TradeSignal{make_date(1999, 1, 4), Side::Buy, 0}}, BacktestConfig{});
    FAIL("expected SignalDateNotInSeries");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SignalDateNotInSeries);
  }
  BacktestConfig bad;
  bad.initial_capital = 0.0;
  CHECK_THROWS_AS(run_backtest(s, {}, bad), Error);
}

TEST_CASE("cash conservation and pnl accounting on random strategies") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = fixtures::random_walk(seed, 300);
    StrategySpec spec{"MACD", Rule::SignalCross, PriceSource::Close, {}, {}};
    auto signals = generate_signals(s, spec, 1.0);
    // Force liquidation on the penultimate bar so every position closes.
    std::erase_if(signals, [&](const TradeSignal& g) { return g.index + 2 >= s.size(); });
    signals.push_back(at(s, s.size() - 2, Side::Sell));
    BacktestConfig cfg;
    cfg.one_way_cost_bps = 0.0;
    const auto l = run_backtest(s, signals, cfg);
    CHECK_FALSE(l.open_position);
    double pnl = 0.0;
    for (const auto& t : l.trades) {
      pnl += t.pnl;
      CHECK(t.exit_date > t.entry_date);
      CHECK(t.shares >= 1);
    }
    const double delta = l.equity.values[l.equity.size() - 1] - l.equity.values[0];
    CHECK(pnl == Approx(delta).epsilon(1e-9));
    CHECK(l.final_cash >= 0.0);
    CHECK((l.equity.values > 0.0).all());
    for (std::size_t k = 1; k < l.trades.size(); ++k) {
      CHECK(l.trades[k - 1].exit_date <= l.trades[k].entry_date);
    }
  }
}

TEST_CASE("truncating the future never changes past trades") {
  const auto s = fixtures::random_walk(99, 400);
  StrategySpec spec{"MACD", Rule::SignalCross, PriceSource::Close, {}, {}};
  const auto full = run_backtest(s, generate_signals(s, spec, 1.0), BacktestConfig{});
  for (std::size_t cut : {120u, 200u, 333u}) {
    OhlcvSeries head{s.symbol, {s.bars.begin(), s.bars.begin() + static_cast<long>(cut)}};
    const auto part = run_backtest(head, generate_signals(head, spec, 1.0), BacktestConfig{});
    for (const auto& t : part.trades) {
      bool found = false;
      for (const auto& f : full.trades) {
        found |= f.entry_date == t.entry_date && f.exit_date == t.exit_date &&
                 f.shares == t.shares && f.pnl == t.pnl;
      }
      CHECK(found);
    }
    for (Eigen::Index i = 0; i < part.equity.size(); ++i) {
      CHECK(part.equity.values[i] == full.equity.values[i]);
    }
  }
}

TEST_CASE("daily_returns") {
  EquityCurve e;
  e.values = Eigen::ArrayXd(2);
  e.values << 100, 110;
  CHECK(daily_returns(e)[0] == Approx(0.10));
  e.values = Eigen::ArrayXd(3);
  e.values << 100, 120, 90;
  const auto r = daily_returns(e);
  CHECK(r.size() == 2);
  CHECK(r[0] == Approx(0.20));
  CHECK(r[1] == Approx(-0.25));
  e.values = Eigen::ArrayXd::Constant(5, 7.0);
  CHECK((daily_returns(e) == 0.0).all());
  e.values = Eigen::ArrayXd::Constant(1, 7.0);
  CHECK_THROWS_AS(daily_returns(e), Error);
}

TEST_CASE("evaluate warms indicators up on history before the window") {
  const auto s = fixtures::random_walk(123, 400);
  StrategySpec spec{"VP", Rule::LambdaAdjusted, PriceSource::Adjusted, {}, {}};
  const Date first = s[340].date, last = s[399].date;
  const auto l = evaluate(s, first, last, spec, 0.9, BacktestConfig{});
  CHECK(l.equity.size() == 60);
  CHECK(l.equity.dates.front() == first);
  // The window alone is too short for the VP pipeline.
  CHECK_THROWS_AS(generate_signals(slice(s, first, last), spec, 0.9), Error);
}
