#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vpmacd {

enum class ErrorCode {
  MissingColumn,
  UnparsableRow,
  EmptyFile,
  DuplicateDate,
  EmptyPartition,
  WindowExceedsSeries,
  LambdaOutOfRange,
  SignalDateNotInSeries,
  SeriesTooShort,
  NoTrades,
  NoWins,
  NoLosses,
  ZeroVariance,
  NonPositiveLongRunVariance,
  BlockLongerThanSeries,
  DateMismatch,
  NoFeasibleLambda,
  InvalidBar,
  InvalidArgument,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure the engine raises carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(what), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  /// 1-based input line for parse errors.
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace vpmacd
