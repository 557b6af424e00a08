#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vpmacd/backtest.hpp"
#include "vpmacd/calibration.hpp"
#include "vpmacd/metrics.hpp"
#include "vpmacd/stats.hpp"

namespace vpmacd {

inline constexpr const char* kEngineVersion = "1.0.0";

/// `# vpmacd <version> config=<hash> seed=<seed>`; first line of every output.
std::string provenance_line(const std::string& config_hash, std::uint64_t seed);

using LabeledReport = std::pair<std::string, StrategyReport>;

/// Strategy,Trades,Win Rate,Total PnL,PnL Ratio,Sharpe,Max DD,Expectancy.
/// Absent metrics are empty fields.
void write_report_csv(std::ostream& out, const std::vector<LabeledReport>& rows);
/// Aligned table; absent metrics render as an em dash.
void write_report_text(std::ostream& out, const std::vector<LabeledReport>& rows);

void write_trades_csv(std::ostream& out, const std::vector<Trade>& trades);
void write_equity_csv(std::ostream& out, const EquityCurve& equity);

/// lambda,win_ratio,total_pnl,pnl_ratio,sharpe,max_drawdown,expectancy.
void write_sweep_csv(std::ostream& out, const std::vector<GridResult>& results);

void write_histogram_csv(std::ostream& out, const Histogram& h);

/// Right-pads each column to its widest cell.
void write_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& rows);

/// "$13,612.34" / "-$1,000.00".
std::string money(double value);
/// 0.5 -> "50.00%".
std::string percent(double fraction);

}  // namespace vpmacd
