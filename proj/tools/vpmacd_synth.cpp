// Writes a synthetic daily OHLCV file (geometric random walk with a
// weekday calendar) for demos and smoke tests.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vpmacd/market_data.hpp"
#include "vpmacd/rng.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Synthetic OHLCV generator"};
  std::string out;
  std::string start = "2018-01-02";
  int bars = 2050;
  double price = 250.0;
  double drift = 0.0004;
  double vol = 0.011;
  std::uint64_t seed = 7;
  app.add_option("--out", out, "Output CSV path")->required();
  app.add_option("--start", start, "First trading day (YYYY-MM-DD)");
  app.add_option("--bars", bars, "Number of trading days");
  app.add_option("--price", price, "Starting price");
  app.add_option("--drift", drift, "Daily log drift");
  app.add_option("--vol", vol, "Daily log volatility");
  app.add_option("--seed", seed, "Generator seed");
  CLI11_PARSE(app, argc, argv);

  const auto first = vpmacd::parse_date(start);
  if (!first) {
    std::cerr << "bad --start\n";
    return 1;
  }
  vpmacd::Rng rng(seed);
  vpmacd::OhlcvSeries series;
  std::chrono::sys_days day{*first};
  double close = price;
  while (static_cast<int>(series.size()) < bars) {
    const std::chrono::weekday wd{day};
    if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) {
      const double open = close * std::exp(0.2 * vol * rng.normal());
      close = open * std::exp(drift + vol * rng.normal());
      const double high = std::max(open, close) * (1.0 + 0.5 * vol * std::abs(rng.normal()));
      const double low = std::min(open, close) * (1.0 - 0.5 * vol * std::abs(rng.normal()));
      const double volume = std::floor(5e7 * std::exp(0.3 * rng.normal()));
      auto round2 = [](double x) { return std::round(x * 100.0) / 100.0; };
      vpmacd::Bar bar{vpmacd::Date{day}, round2(open), round2(high), round2(low), round2(close),
                      volume};
      bar.high = std::max({bar.high, bar.open, bar.close});
      bar.low = std::min({bar.low, bar.open, bar.close});
      series.bars.push_back(bar);
    }
    day += std::chrono::days{1};
  }
  vpmacd::write_csv(series, out);
  return 0;
}
