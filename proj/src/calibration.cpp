#include "vpmacd/calibration.hpp"

#include <algorithm>

#include "vpmacd/text.hpp"

namespace vpmacd {

namespace {

std::string show(std::optional<double> v) { return v ? text::shortest(*v) : "absent"; }

// >0 when `a` is better than `b` on `metric`.
int better(const StrategyReport& a, const StrategyReport& b, Metric metric) {
  const auto va = metric_value(a, metric);
  const auto vb = metric_value(b, metric);
  if (!va && !vb) return 0;
  if (!vb) return 1;
  if (!va) return -1;
  if (*va == *vb) return 0;
  const bool a_wins = lower_is_better(metric) ? *va < *vb : *va > *vb;
  return a_wins ? 1 : -1;
}

}  // namespace

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::TotalTrades: return "total_trades";
    case Metric::WinRatio: return "win_ratio";
    case Metric::TotalPnl: return "total_pnl";
    case Metric::PnlRatio: return "pnl_ratio";
    case Metric::Sharpe: return "sharpe";
    case Metric::MaxDrawdown: return "max_drawdown";
    case Metric::Expectancy: return "expectancy";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  for (auto m : {Metric::TotalTrades, Metric::WinRatio, Metric::TotalPnl, Metric::PnlRatio,
                 Metric::Sharpe, Metric::MaxDrawdown, Metric::Expectancy}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::Config, "unknown metric '" + std::string(name) + "'");
}

std::optional<double> metric_value(const StrategyReport& r, Metric metric) {
  switch (metric) {
    case Metric::TotalTrades: return static_cast<double>(r.total_trades);
    case Metric::WinRatio: return r.win_ratio;
    case Metric::TotalPnl: return r.total_pnl;
    case Metric::PnlRatio: return r.pnl_ratio;
    case Metric::Sharpe: return r.sharpe;
    case Metric::MaxDrawdown: return r.max_drawdown;
    case Metric::Expectancy: return r.expectancy;
  }
  return std::nullopt;
}

bool lower_is_better(Metric metric) noexcept { return metric == Metric::MaxDrawdown; }

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back((80.0 + 2.0 * k) / 100.0);
  return grid;
}

std::vector<GridResult> sweep_lambda(const OhlcvSeries& train, const StrategySpec& strategy,
                                     std::vector<double> grid, const BacktestConfig& config,
                                     const MetricOptions& options) {
  std::sort(grid.begin(), grid.end());
  const auto lines = strategy_lines(train, strategy);
  const auto dates = train.dates();
  std::vector<GridResult> out;
  out.reserve(grid.size());
  for (double lambda : grid) {
    check_lambda(lambda);
    const auto signals = apply_rule(lines, RuleConfig{strategy.rule, lambda}, dates);
    out.push_back({lambda, build_report(run_backtest(train, signals, config), options)});
  }
  return out;
}

Selection select_lambda(const std::vector<GridResult>& results, const SelectionPolicy& policy) {
  if (results.empty()) throw Error(ErrorCode::NoFeasibleLambda, "no calibration results");

  std::vector<Metric> keys{policy.primary};
  keys.insert(keys.end(), policy.tie_breakers.begin(), policy.tie_breakers.end());

  Selection sel;
  std::vector<const GridResult*> feasible;
  for (const auto& r : results) {
    if (policy.max_drawdown && r.report.max_drawdown > *policy.max_drawdown) {
      sel.rationale.push_back("lambda " + text::shortest(r.lambda) + " excluded: max_drawdown " +
                              text::shortest(r.report.max_drawdown) + " > " +
                              text::shortest(*policy.max_drawdown));
      continue;
    }
    if (policy.min_trades && r.report.total_trades < *policy.min_trades) {
      sel.rationale.push_back("lambda " + text::shortest(r.lambda) + " excluded: " +
                              std::to_string(r.report.total_trades) + " trades < " +
                              std::to_string(*policy.min_trades));
      continue;
    }
    feasible.push_back(&r);
  }
  if (feasible.empty()) {
    throw Error(ErrorCode::NoFeasibleLambda, "no lambda satisfies the selection constraints");
  }

  auto precedes = [&](const GridResult* a, const GridResult* b) {
    for (Metric m : keys) {
      if (const int c = better(a->report, b->report, m); c != 0) return c > 0;
    }
    return a->lambda < b->lambda;
  };
  std::sort(feasible.begin(), feasible.end(), precedes);
  const GridResult& best = *feasible.front();
  sel.lambda = best.lambda;

  for (auto it = feasible.begin() + 1; it != feasible.end(); ++it) {
    const GridResult& other = **it;
    std::string line = "lambda " + text::shortest(best.lambda) + " over " +
                       text::shortest(other.lambda) + ": ";
    bool decided = false;
    for (Metric m : keys) {
      if (better(best.report, other.report, m) != 0) {
        line += std::string(to_string(m)) + " " + show(metric_value(best.report, m)) + " vs " +
                show(metric_value(other.report, m));
        decided = true;
        break;
      }
    }
    if (!decided) line += "all keys tied, smaller lambda";
    sel.rationale.push_back(std::move(line));
  }
  return sel;
}

}  // namespace vpmacd
