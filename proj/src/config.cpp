#include "vpmacd/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vpmacd/text.hpp"

namespace vpmacd {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Config, what); }

Date date_field(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_string()) fail(std::string("split.") + key + " missing");
  const auto d = parse_date(obj[key].get<std::string>());
  if (!d) fail(std::string("split.") + key + " is not YYYY-MM-DD");
  return *d;
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.is_object() || !obj.contains(key) || obj[key].is_null()) return fallback;
  try {
    return obj[key].get<T>();
  } catch (const json::exception&) {
    fail(std::string("bad value for '") + key + "'");
  }
}

double checked_lambda(const json& v) {
  if (!v.is_number()) fail("lambda must be a number or \"calibrate\"");
  const double lambda = v.get<double>();
  try {
    check_lambda(lambda);
  } catch (const Error& e) {
    fail(e.what());
  }
  return lambda;
}

Rule parse_rule(const std::string& s) {
  if (s == "signal_cross") return Rule::SignalCross;
  if (s == "zero_cross") return Rule::ZeroCross;
  if (s == "lambda_adjusted") return Rule::LambdaAdjusted;
  fail("unknown rule '" + s + "'");
}

StrategyConfig parse_strategy(const json& j) {
  StrategyConfig sc;
  auto& s = sc.spec;
  s.name = get_or<std::string>(j, "name", "");
  if (s.name.empty()) fail("every strategy needs a name");
  s.rule = parse_rule(get_or<std::string>(j, "rule", "signal_cross"));
  const auto price = get_or<std::string>(j, "price", "close");
  if (price == "close") {
    s.price = PriceSource::Close;
  } else if (price == "adjusted") {
    s.price = PriceSource::Adjusted;
  } else {
    fail("unknown price source '" + price + "'");
  }
  if (j.contains("macd")) {
    const auto& m = j["macd"];
    s.macd = {get_or(m, "fast", 12), get_or(m, "slow", 26), get_or(m, "signal", 9)};
  }
  if (j.contains("adjusted")) {
    const auto& a = j["adjusted"];
    s.adjusted = {get_or(a, "n_window", 20), get_or(a, "sigma_window", 20)};
  }
  try {
    check(s.macd);
    check(s.adjusted);
  } catch (const Error& e) {
    fail(s.name + ": " + e.what());
  }

  if (s.rule != Rule::LambdaAdjusted) {
    sc.lambda.value = 1.0;
    return sc;
  }
  if (!j.contains("lambda")) fail(s.name + ": lambda_adjusted rule needs 'lambda'");
  const auto& l = j["lambda"];
  if (l.is_string()) {
    if (l.get<std::string>() != "calibrate") fail(s.name + ": lambda string must be \"calibrate\"");
    sc.lambda.calibrate = true;
  } else if (l.is_object()) {
    for (const auto& [sym, v] : l.items()) {
      if (sym == "default") {
        if (v.is_string() && v.get<std::string>() == "calibrate") {
          sc.lambda.calibrate_unlisted = true;
        } else {
          sc.lambda.value = checked_lambda(v);
        }
      } else {
        sc.lambda.per_symbol[sym] = checked_lambda(v);
      }
    }
    if (!sc.lambda.value && !sc.lambda.calibrate_unlisted) sc.lambda.calibrate_unlisted = true;
  } else {
    sc.lambda.value = checked_lambda(l);
  }
  return sc;
}

}  // namespace

std::optional<double> LambdaSetting::for_symbol(const std::string& symbol) const {
  if (calibrate) return std::nullopt;
  if (const auto it = per_symbol.find(symbol); it != per_symbol.end()) return it->second;
  if (value) return value;
  return std::nullopt;
}

RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("config root must be an object");

  RunConfig cfg;
  cfg.hash = text::fnv1a_hex(json_text);

  if (!j.contains("instruments") || !j["instruments"].is_array() || j["instruments"].empty()) {
    fail("config needs a non-empty 'instruments' array");
  }
  for (const auto& inst : j["instruments"]) {
    InstrumentSpec spec;
    spec.file = get_or<std::string>(inst, "file", "");
    if (spec.file.empty()) fail("instrument without 'file'");
    if (spec.file.is_relative()) spec.file = base_dir / spec.file;
    spec.symbol = get_or<std::string>(inst, "symbol", spec.file.stem().string());
    if (!std::filesystem::exists(spec.file)) fail("input file not found: " + spec.file.string());
    cfg.instruments.push_back(std::move(spec));
  }

  if (!j.contains("split")) fail("config needs 'split'");
  const auto& sp = j["split"];
  cfg.split = {date_field(sp, "train_start"), date_field(sp, "train_end"),
               date_field(sp, "test_start"), date_field(sp, "test_end")};
  if (!(cfg.split.train_end < cfg.split.test_start)) fail("train window must end before test");

  if (!j.contains("strategies") || !j["strategies"].is_array() || j["strategies"].empty()) {
    fail("config needs a non-empty 'strategies' array");
  }
  for (const auto& s : j["strategies"]) cfg.strategies.push_back(parse_strategy(s));

  if (j.contains("backtest")) {
    const auto& b = j["backtest"];
    cfg.backtest.initial_capital = get_or(b, "initial_capital", cfg.backtest.initial_capital);
    cfg.backtest.one_way_cost_bps = get_or(b, "one_way_cost_bps", cfg.backtest.one_way_cost_bps);
    cfg.backtest.min_unit = get_or<std::int64_t>(b, "min_unit", cfg.backtest.min_unit);
    try {
      check(cfg.backtest);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  if (j.contains("metrics")) {
    const auto conv = get_or<std::string>(j["metrics"], "sharpe_std", "sample");
    if (conv == "sample") {
      cfg.metrics.sharpe_std = StdConvention::Sample;
    } else if (conv == "population") {
      cfg.metrics.sharpe_std = StdConvention::Population;
    } else {
      fail("metrics.sharpe_std must be sample or population");
    }
  }

  if (j.contains("calibration")) {
    const auto& c = j["calibration"];
    if (c.contains("grid")) {
      const auto& g = c["grid"];
      if (!g.is_array() || g.empty()) fail("calibration.grid must be a non-empty array");
      cfg.grid.clear();
      for (const auto& v : g) cfg.grid.push_back(checked_lambda(v));
    }
    if (c.contains("policy")) {
      const auto& p = c["policy"];
      try {
        cfg.policy.primary = parse_metric(get_or<std::string>(p, "primary", "sharpe"));
        if (p.contains("tie_breakers")) {
          cfg.policy.tie_breakers.clear();
          for (const auto& m : p["tie_breakers"]) {
            cfg.policy.tie_breakers.push_back(parse_metric(m.get<std::string>()));
          }
        }
      } catch (const json::exception&) {
        fail("calibration.policy.tie_breakers must be metric names");
      }
      if (p.contains("max_drawdown") && !p["max_drawdown"].is_null()) {
        cfg.policy.max_drawdown = get_or(p, "max_drawdown", 1.0);
      }
      if (p.contains("min_trades") && !p["min_trades"].is_null()) {
        cfg.policy.min_trades = get_or<std::size_t>(p, "min_trades", 0);
      }
    }
  }

  if (j.contains("tests")) {
    const auto& t = j["tests"];
    if (t.contains("nw_lag") && !(t["nw_lag"].is_string() && t["nw_lag"] == "auto")) {
      cfg.tests.nw_lag = get_or(t, "nw_lag", 0);
      if (*cfg.tests.nw_lag < 0) fail("tests.nw_lag must be >= 0 or \"auto\"");
    }
    cfg.tests.resamples = get_or(t, "resamples", cfg.tests.resamples);
    cfg.tests.block_len = get_or(t, "block_len", cfg.tests.block_len);
    cfg.tests.seed = get_or<std::uint64_t>(t, "seed", cfg.tests.seed);
    cfg.histogram_bins = get_or(t, "histogram_bins", cfg.histogram_bins);
    if (cfg.tests.resamples < 1 || cfg.tests.block_len < 1 || cfg.histogram_bins < 1) {
      fail("tests.resamples, tests.block_len and tests.histogram_bins must be >= 1");
    }
  }

  auto strategy_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
      if (cfg.strategies[i].spec.name == name) return i;
    }
    fail("comparison names unknown strategy '" + name + "'");
  };
  if (j.contains("comparisons")) {
    for (const auto& c : j["comparisons"]) {
      PairSpec p;
      p.newer = strategy_index(get_or<std::string>(c, "new", ""));
      p.older = strategy_index(get_or<std::string>(c, "old", ""));
      p.label = get_or<std::string>(c, "label", "Pair " + std::to_string(cfg.pairs.size() + 1));
      cfg.pairs.push_back(std::move(p));
    }
  } else {
    for (std::size_t n = 1; n < cfg.strategies.size(); ++n) {
      for (std::size_t o = 0; o < n; ++o) {
        cfg.pairs.push_back({"Pair " + std::to_string(cfg.pairs.size() + 1), n, o});
      }
    }
  }

  if (j.contains("output_dir")) cfg.output_dir = get_or<std::string>(j, "output_dir", "out");
  if (cfg.output_dir.is_relative()) cfg.output_dir = base_dir / cfg.output_dir;
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace vpmacd
