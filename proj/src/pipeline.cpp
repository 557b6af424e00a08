#include "vpmacd/pipeline.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "vpmacd/report.hpp"
#include "vpmacd/text.hpp"

namespace vpmacd {

namespace fs = std::filesystem;

namespace {

std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      out += static_cast<char>(std::tolower(u));
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "strategy" : out;
}

std::string policy_description(const SelectionPolicy& p) {
  std::string s(to_string(p.primary));
  for (Metric m : p.tie_breakers) s += " > " + std::string(to_string(m));
  return s;
}

struct Instrument {
  InstrumentSpec spec;
  OhlcvSeries history;
  OhlcvSeries train;
  OhlcvSeries test;
};

struct Calibration {
  std::vector<GridResult> sweep;
  Selection selection;
};

class Session {
 public:
  Session(const RunConfig& config, fs::path out) : cfg_(config), out_(std::move(out)) {
    for (const auto& spec : cfg_.instruments) {
      Instrument inst{spec, parse_csv(spec.file, spec.symbol), {}, {}};
      for (const auto& v : validate(inst.history)) {
        if (v.rule == BarRule::ZeroVolume) continue;
        throw Error(ErrorCode::InvalidBar, spec.file.string() + ": bar " + format_date(v.date) +
                                               " violates " + std::string(to_string(v.rule)));
      }
      auto [train, test] = split(inst.history, cfg_.split);
      inst.train = std::move(train);
      inst.test = std::move(test);
      instruments_.push_back(std::move(inst));
    }
  }

  void write(const fs::path& rel, const std::function<void(std::ostream&)>& body) const {
    const fs::path path = out_ / rel;
    fs::create_directories(path.parent_path());
    std::ostringstream buf;
    buf << provenance_line(cfg_.hash, cfg_.tests.seed) << '\n';
    body(buf);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + path.string());
    f << buf.str();
  }

  const Calibration& calibration(std::size_t inst, std::size_t strat) {
    const auto key = std::make_pair(inst, strat);
    if (auto it = calibrations_.find(key); it != calibrations_.end()) return it->second;
    const auto& spec = cfg_.strategies[strat].spec;
    Calibration c;
    c.sweep = sweep_lambda(instruments_[inst].train, spec, cfg_.grid, cfg_.backtest, cfg_.metrics);
    c.selection = select_lambda(c.sweep, cfg_.policy);
    return calibrations_.emplace(key, std::move(c)).first->second;
  }

  double lambda(std::size_t inst, std::size_t strat) {
    const auto& sc = cfg_.strategies[strat];
    if (sc.spec.rule != Rule::LambdaAdjusted) return 1.0;
    if (const auto fixed = sc.lambda.for_symbol(instruments_[inst].spec.symbol)) return *fixed;
    return calibration(inst, strat).selection.lambda;
  }

  const Ledger& ledger(std::size_t inst, std::size_t strat) {
    const auto key = std::make_pair(inst, strat);
    if (auto it = ledgers_.find(key); it != ledgers_.end()) return it->second;
    const auto& i = instruments_[inst];
    Ledger l = evaluate(i.history, i.test.bars.front().date, i.test.bars.back().date,
                        cfg_.strategies[strat].spec, lambda(inst, strat), cfg_.backtest);
    return ledgers_.emplace(key, std::move(l)).first->second;
  }

  std::string label(std::size_t inst, std::size_t strat) {
    const auto& sc = cfg_.strategies[strat];
    if (sc.spec.rule != Rule::LambdaAdjusted) return sc.spec.name;
    return sc.spec.name + " (lambda = " + text::fixed(lambda(inst, strat), 2) + ")";
  }

  std::vector<LabeledReport> reports(std::size_t inst) {
    std::vector<LabeledReport> rows;
    for (std::size_t s = 0; s < cfg_.strategies.size(); ++s) {
      rows.emplace_back(label(inst, s), build_report(ledger(inst, s), cfg_.metrics));
    }
    return rows;
  }

  const RunConfig& cfg_;
  fs::path out_;
  std::vector<Instrument> instruments_;
  std::map<std::pair<std::size_t, std::size_t>, Calibration> calibrations_;
  std::map<std::pair<std::size_t, std::size_t>, Ledger> ledgers_;
};

void run_backtest_outputs(Session& s) {
  for (std::size_t i = 0; i < s.instruments_.size(); ++i) {
    const fs::path dir = s.instruments_[i].spec.symbol;
    const auto rows = s.reports(i);
    s.write(dir / "report.csv", [&](std::ostream& o) { write_report_csv(o, rows); });
    s.write(dir / "report.txt", [&](std::ostream& o) { write_report_text(o, rows); });
    for (std::size_t k = 0; k < s.cfg_.strategies.size(); ++k) {
      const auto& l = s.ledger(i, k);
      const auto name = slug(s.cfg_.strategies[k].spec.name);
      s.write(dir / ("trades_" + name + ".csv"), [&](std::ostream& o) { write_trades_csv(o, l.trades); });
      s.write(dir / ("equity_" + name + ".csv"), [&](std::ostream& o) { write_equity_csv(o, l.equity); });
    }
  }
}

std::vector<std::vector<std::string>> lambda_table(Session& s) {
  std::vector<std::vector<std::string>> rows{{"Index"}};
  std::vector<std::size_t> lam;
  for (std::size_t k = 0; k < s.cfg_.strategies.size(); ++k) {
    if (s.cfg_.strategies[k].spec.rule == Rule::LambdaAdjusted) {
      lam.push_back(k);
      rows[0].push_back(s.cfg_.strategies[k].spec.name);
    }
  }
  rows[0].push_back("Primary Selection Criterion");
  for (std::size_t i = 0; i < s.instruments_.size(); ++i) {
    std::vector<std::string> row{s.instruments_[i].spec.symbol};
    for (std::size_t k : lam) row.push_back(text::fixed(s.calibration(i, k).selection.lambda, 2));
    row.push_back(policy_description(s.cfg_.policy));
    rows.push_back(std::move(row));
  }
  return rows;
}

void run_calibrate_outputs(Session& s) {
  for (std::size_t i = 0; i < s.instruments_.size(); ++i) {
    const fs::path dir = s.instruments_[i].spec.symbol;
    for (std::size_t k = 0; k < s.cfg_.strategies.size(); ++k) {
      if (s.cfg_.strategies[k].spec.rule != Rule::LambdaAdjusted) continue;
      const auto& c = s.calibration(i, k);
      const auto name = slug(s.cfg_.strategies[k].spec.name);
      s.write(dir / ("sweep_" + name + ".csv"), [&](std::ostream& o) { write_sweep_csv(o, c.sweep); });
      s.write(dir / ("selection_" + name + ".txt"), [&](std::ostream& o) {
        o << "chosen lambda " << text::fixed(c.selection.lambda, 2) << " by "
          << policy_description(s.cfg_.policy) << '\n';
        for (const auto& line : c.selection.rationale) o << line << '\n';
      });
    }
  }
  const auto rows = lambda_table(s);
  s.write("lambda_summary.csv", [&](std::ostream& o) {
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) o << (c ? "," : "") << row[c];
      o << '\n';
    }
  });
  s.write("lambda_summary.txt", [&](std::ostream& o) { write_aligned(o, rows); });
}

struct PairRun {
  std::string label;
  PairComparison comparison;
};

std::vector<std::vector<PairRun>> run_pairs(Session& s) {
  if (s.cfg_.pairs.empty()) {
    throw Error(ErrorCode::Config, "compare needs at least two strategies");
  }
  std::vector<std::vector<PairRun>> all;
  for (std::size_t i = 0; i < s.instruments_.size(); ++i) {
    std::vector<PairRun> runs;
    for (const auto& p : s.cfg_.pairs) {
      const auto& newer = s.ledger(i, p.newer);
      const auto& older = s.ledger(i, p.older);
      try {
        runs.push_back({p.label, compare_pair(newer.equity, older.equity, s.cfg_.tests)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DateMismatch) throw;
        throw Error(ErrorCode::DateMismatch,
                    s.instruments_[i].spec.symbol + ": '" + s.cfg_.strategies[p.newer].spec.name +
                        "' and '" + s.cfg_.strategies[p.older].spec.name +
                        "' cover different dates");
      }
    }
    all.push_back(std::move(runs));
  }
  return all;
}

std::string cell(const std::optional<double>& v, int digits) {
  return v ? text::fixed(*v, digits) : "";
}

std::vector<std::vector<std::string>> method_table(Session& s,
                                                   const std::vector<std::vector<PairRun>>& all,
                                                   std::size_t method, bool with_statistic) {
  std::vector<std::vector<std::string>> rows{{"Comparison"}};
  for (const auto& inst : s.instruments_) {
    if (with_statistic) rows[0].push_back(inst.spec.symbol + " (t)");
    rows[0].push_back(inst.spec.symbol + " (p)");
  }
  for (std::size_t p = 0; p < s.cfg_.pairs.size(); ++p) {
    const auto& ps = s.cfg_.pairs[p];
    std::vector<std::string> row{ps.label + ": " + s.cfg_.strategies[ps.newer].spec.name +
                                 " vs. " + s.cfg_.strategies[ps.older].spec.name};
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto& r = all[i][p].comparison.results[method];
      if (with_statistic) row.push_back(cell(r.statistic, 4));
      row.push_back(cell(r.p_value, 4));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_rows_csv(std::ostream& o, const std::vector<std::vector<std::string>>& rows) {
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) o << (c ? "," : "") << row[c];
    o << '\n';
  }
}

void run_compare_outputs(Session& s, std::ostream* summary) {
  const auto all = run_pairs(s);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const fs::path dir = s.instruments_[i].spec.symbol;
    s.write(dir / "tests.csv", [&](std::ostream& o) {
      o << "pair,new,old,method,statistic,p_value,lag,resamples,block_len,seed,error\n";
      for (std::size_t p = 0; p < all[i].size(); ++p) {
        const auto& ps = s.cfg_.pairs[p];
        for (const auto& r : all[i][p].comparison.results) {
          auto num = [](const auto& v) { return v ? std::to_string(*v) : std::string(); };
          o << all[i][p].label << ',' << s.cfg_.strategies[ps.newer].spec.name << ','
            << s.cfg_.strategies[ps.older].spec.name << ',' << to_string(r.method) << ','
            << (r.statistic ? text::shortest(*r.statistic) : "") << ','
            << (r.p_value ? text::shortest(*r.p_value) : "") << ',' << num(r.params.lag) << ','
            << num(r.params.resamples) << ',' << num(r.params.block_len) << ','
            << num(r.params.seed) << ',' << (r.error ? to_string(*r.error) : "") << '\n';
        }
      }
    });
    for (std::size_t p = 0; p < all[i].size(); ++p) {
      const auto& boot = all[i][p].comparison.results[2];
      const auto h = histogram(boot.distribution, s.cfg_.histogram_bins);
      s.write(dir / ("bootstrap_hist_" + slug(all[i][p].label) + ".csv"),
              [&](std::ostream& o) { write_histogram_csv(o, h); });
    }
  }
  const std::array<std::pair<const char*, bool>, 3> methods{
      {{"tests_t_test", true}, {"tests_newey_west", true}, {"tests_block_bootstrap", false}}};
  for (std::size_t m = 0; m < methods.size(); ++m) {
    const auto rows = method_table(s, all, m, methods[m].second);
    s.write(std::string(methods[m].first) + ".csv", [&](std::ostream& o) { write_rows_csv(o, rows); });
    s.write(std::string(methods[m].first) + ".txt", [&](std::ostream& o) { write_aligned(o, rows); });
    if (summary) {
      *summary << '\n' << to_string(static_cast<TestMethod>(m)) << '\n';
      write_aligned(*summary, rows);
    }
  }
}

}  // namespace

void cmd_backtest(const RunConfig& config, const fs::path& out) {
  Session s(config, out);
  run_backtest_outputs(s);
}

void cmd_calibrate(const RunConfig& config, const fs::path& out) {
  Session s(config, out);
  run_calibrate_outputs(s);
}

void cmd_compare(const RunConfig& config, const fs::path& out) {
  Session s(config, out);
  run_compare_outputs(s, nullptr);
}

void cmd_report(const RunConfig& config, const fs::path& out) {
  Session s(config, out);
  std::ostringstream summary;
  bool any_lambda = false;
  for (const auto& sc : config.strategies) any_lambda |= sc.spec.rule == Rule::LambdaAdjusted;
  if (any_lambda) {
    run_calibrate_outputs(s);
    summary << "Calibrated lambda (training window)\n";
    write_aligned(summary, lambda_table(s));
  }
  run_backtest_outputs(s);
  for (std::size_t i = 0; i < s.instruments_.size(); ++i) {
    summary << '\n' << s.instruments_[i].spec.symbol << " (testing window)\n";
    write_report_text(summary, s.reports(i));
  }
  if (!config.pairs.empty()) run_compare_outputs(s, &summary);
  s.write("summary.txt", [&](std::ostream& o) { o << summary.str(); });
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::InvalidArgument:
    case ErrorCode::LambdaOutOfRange:
      return 1;
    default:
      return 2;
  }
}

}  // namespace vpmacd
