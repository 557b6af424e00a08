#include "vpmacd/metrics.hpp"

namespace vpmacd {

namespace {

struct Split {
  std::size_t wins = 0;
  double gains = 0.0;
  double losses = 0.0;  // magnitude
};

Split partition(std::span<const Trade> trades) {
  if (trades.empty()) throw Error(ErrorCode::NoTrades, "no completed trades");
  Split s;
  for (const auto& t : trades) {
    if (t.pnl > 0.0) {
      ++s.wins;
      s.gains += t.pnl;
    } else {
      s.losses -= t.pnl;
    }
  }
  return s;
}

}  // namespace

double win_ratio(std::span<const Trade> trades) {
  const auto s = partition(trades);
  return static_cast<double>(s.wins) / static_cast<double>(trades.size());
}

double pnl_ratio(std::span<const Trade> trades) {
  const auto s = partition(trades);
  const std::size_t n_loss = trades.size() - s.wins;
  if (s.wins == 0) return 0.0;
  if (n_loss == 0 || s.losses == 0.0) {
    throw Error(ErrorCode::NoLosses, "pnl ratio undefined without losses");
  }
  return (s.gains / static_cast<double>(s.wins)) / (s.losses / static_cast<double>(n_loss));
}

double expectancy(std::span<const Trade> trades) {
  const auto s = partition(trades);
  const auto n = static_cast<double>(trades.size());
  const auto n_win = static_cast<double>(s.wins);
  const double n_loss = n - n_win;
  const double ratio = n_win / n;
  const double avg_gain = s.wins > 0 ? s.gains / n_win : 0.0;
  const double avg_loss = n_loss > 0 ? s.losses / n_loss : 0.0;
  return ratio * avg_gain - (1.0 - ratio) * avg_loss;
}

double total_pnl(const EquityCurve& equity) {
  if (equity.size() == 0) throw Error(ErrorCode::SeriesTooShort, "empty equity curve");
  return equity.values[equity.size() - 1] - equity.values[0];
}

StrategyReport build_report(const Ledger& ledger, const MetricOptions& options) {
  StrategyReport r;
  const std::span<const Trade> trades(ledger.trades);
  r.total_trades = trades.size();
  r.total_pnl = total_pnl(ledger.equity);
  r.max_drawdown = max_drawdown(ledger.equity);
  if (!trades.empty()) {
    r.win_ratio = win_ratio(trades);
    r.expectancy = expectancy(trades);
    try {
      r.pnl_ratio = pnl_ratio(trades);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoLosses) throw;
    }
  }
  if (ledger.equity.size() >= 2) {
    try {
      r.sharpe = sharpe(daily_returns(ledger.equity), options.sharpe_std);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroVariance) throw;
    }
  }
  return r;
}

}  // namespace vpmacd
