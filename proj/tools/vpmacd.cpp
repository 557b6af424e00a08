#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vpmacd/config.hpp"
#include "vpmacd/error.hpp"
#include "vpmacd/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Volume-price adjusted MACD backtesting engine"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;

  struct Command {
    const char* name;
    const char* help;
    void (*run)(const vpmacd::RunConfig&, const std::filesystem::path&);
  };
  const Command commands[] = {
      {"backtest", "Backtest every strategy on the testing window", vpmacd::cmd_backtest},
      {"calibrate", "Grid-search lambda on the training window", vpmacd::cmd_calibrate},
      {"compare", "Pairwise significance tests between strategies", vpmacd::cmd_compare},
      {"report", "Calibrate, backtest and compare, with a combined summary", vpmacd::cmd_report},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    sub->add_option("--seed", seed, "Bootstrap seed (overrides tests.seed)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    auto config = vpmacd::load_config(config_path);
    if (seed) config.tests.seed = *seed;
    const std::filesystem::path out =
        out_dir.empty() ? config.output_dir : std::filesystem::path(out_dir);
    for (const auto& c : commands) {
      if (app.got_subcommand(c.name)) c.run(config, out);
    }
  } catch (const vpmacd::Error& e) {
    std::cerr << "vpmacd: " << vpmacd::to_string(e.code()) << ": " << e.what() << '\n';
    return vpmacd::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "vpmacd: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
