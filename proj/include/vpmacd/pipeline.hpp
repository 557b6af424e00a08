#pragma once

#include <filesystem>

#include "vpmacd/config.hpp"

namespace vpmacd {

/// Test-window reports, trade blotters and equity curves per instrument.
void cmd_backtest(const RunConfig& config, const std::filesystem::path& out);

/// Training-window lambda sweeps and the chosen-lambda summary.
void cmd_calibrate(const RunConfig& config, const std::filesystem::path& out);

/// Pairwise significance tests and bootstrap histograms.
void cmd_compare(const RunConfig& config, const std::filesystem::path& out);

/// Everything above plus a combined summary.txt.
void cmd_report(const RunConfig& config, const std::filesystem::path& out);

/// 1 for usage/config problems, 2 for data problems.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace vpmacd
