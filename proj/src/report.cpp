#include "vpmacd/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "vpmacd/text.hpp"

namespace vpmacd {

namespace {

std::string opt(const std::optional<double>& v) { return v ? text::shortest(*v) : ""; }

const char* const kAbsent = "\xE2\x80\x94";  // em dash

std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s) w += (c & 0xC0) != 0x80;
  return w;
}

}  // namespace

std::string provenance_line(const std::string& config_hash, std::uint64_t seed) {
  return std::string("# vpmacd ") + kEngineVersion + " config=" + config_hash +
         " seed=" + std::to_string(seed);
}

std::string money(double value) {
  const std::string digits = text::fixed(std::abs(value), 2);
  const auto dot = digits.find('.');
  std::string whole = digits.substr(0, dot);
  for (auto i = static_cast<std::ptrdiff_t>(whole.size()) - 3; i > 0; i -= 3) {
    whole.insert(static_cast<std::size_t>(i), ",");
  }
  return (value < 0 && digits != "0.00" ? "-$" : "$") + whole + digits.substr(dot);
}

std::string percent(double fraction) { return text::fixed(fraction * 100.0, 2) + "%"; }

void write_report_csv(std::ostream& out, const std::vector<LabeledReport>& rows) {
  out << "Strategy,Trades,Win Rate,Total PnL,PnL Ratio,Sharpe,Max DD,Expectancy\n";
  for (const auto& [label, r] : rows) {
    out << label << ',' << r.total_trades << ',' << opt(r.win_ratio) << ','
        << text::shortest(r.total_pnl) << ',' << opt(r.pnl_ratio) << ',' << opt(r.sharpe) << ','
        << text::shortest(r.max_drawdown) << ',' << opt(r.expectancy) << '\n';
  }
}

void write_report_text(std::ostream& out, const std::vector<LabeledReport>& rows) {
  std::vector<std::vector<std::string>> cells{
      {"Strategy", "Trades", "Win Rate", "Total PnL", "PnL Ratio", "Sharpe", "Max DD",
       "Expectancy"}};
  for (const auto& [label, r] : rows) {
    auto fmt = [](const std::optional<double>& v, auto f) { return v ? f(*v) : std::string(kAbsent); };
    cells.push_back({label, std::to_string(r.total_trades), fmt(r.win_ratio, percent),
                     money(r.total_pnl),
                     fmt(r.pnl_ratio, [](double x) { return text::fixed(x, 2); }),
                     fmt(r.sharpe, [](double x) { return text::fixed(x, 2); }),
                     r.max_drawdown > 0 ? "-" + percent(r.max_drawdown) : percent(0.0),
                     fmt(r.expectancy, money)});
  }
  write_aligned(out, cells);
}

void write_trades_csv(std::ostream& out, const std::vector<Trade>& trades) {
  out << "entry_date,exit_date,shares,entry_price,exit_price,pnl\n";
  for (const auto& t : trades) {
    out << format_date(t.entry_date) << ',' << format_date(t.exit_date) << ',' << t.shares << ','
        << text::shortest(t.entry_price) << ',' << text::shortest(t.exit_price) << ','
        << text::shortest(t.pnl) << '\n';
  }
}

void write_equity_csv(std::ostream& out, const EquityCurve& equity) {
  out << "date,value\n";
  for (Eigen::Index i = 0; i < equity.size(); ++i) {
    out << format_date(equity.dates[static_cast<std::size_t>(i)]) << ','
        << text::shortest(equity.values[i]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<GridResult>& results) {
  out << "lambda,win_ratio,total_pnl,pnl_ratio,sharpe,max_drawdown,expectancy\n";
  for (const auto& g : results) {
    const auto& r = g.report;
    out << text::fixed(g.lambda, 2) << ',' << opt(r.win_ratio) << ','
        << text::shortest(r.total_pnl) << ',' << opt(r.pnl_ratio) << ',' << opt(r.sharpe) << ','
        << text::shortest(r.max_drawdown) << ',' << opt(r.expectancy) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << text::shortest(h.edges[i]) << ',' << text::shortest(h.edges[i + 1]) << ','
        << h.counts[i] << '\n';
  }
}

void write_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], display_width(row[c]));
    }
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line.append(width[c] - display_width(row[c]) + 2, ' ');
    }
    out << line << '\n';
  }
}

}  // namespace vpmacd
