#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "vpmacd/date.hpp"

namespace vpmacd {

struct Bar {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double volume = 0.0;

  friend bool operator==(const Bar&, const Bar&) = default;
};

/// Daily bars for one instrument, strictly increasing by date.
struct OhlcvSeries {
  std::string symbol;
  std::vector<Bar> bars;

  std::size_t size() const noexcept { return bars.size(); }
  bool empty() const noexcept { return bars.empty(); }
  const Bar& operator[](std::size_t i) const { return bars[i]; }

  std::vector<Date> dates() const;
  Eigen::ArrayXd opens() const;
  Eigen::ArrayXd highs() const;
  Eigen::ArrayXd lows() const;
  Eigen::ArrayXd closes() const;
  Eigen::ArrayXd volumes() const;

  /// Index of the bar dated `date`, or npos.
  std::size_t index_of(const Date& date) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const OhlcvSeries&, const OhlcvSeries&) = default;
};

/// Inclusive calendar windows for calibration and evaluation.
struct SplitSpec {
  Date train_start;
  Date train_end;
  Date test_start;
  Date test_end;
};

enum class BarRule {
  NonPositivePrice,
  NegativeVolume,
  ZeroVolume,
  RangeInverted,
  OpenOutsideRange,
  CloseOutsideRange,
};

std::string_view to_string(BarRule rule) noexcept;

struct Violation {
  Date date;
  BarRule rule;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Reads a `Date,Open,High,Low,Close,Volume` file. Columns are matched by
/// header name, case-insensitively, in any order; extra columns are ignored.
/// The result is sorted ascending by date.
OhlcvSeries parse_csv(const std::filesystem::path& path, std::string symbol = {});
OhlcvSeries parse_csv(std::istream& in, std::string symbol = {});

/// Writes the canonical header and round-trip exact decimal values.
void write_csv(const OhlcvSeries& series, std::ostream& out);
void write_csv(const OhlcvSeries& series, const std::filesystem::path& path);

/// One entry per broken bar invariant. Zero-volume bars are reported but
/// are not errors for the indicator pipeline.
std::vector<Violation> validate(const OhlcvSeries& series);

/// Bars within [first, last], inclusive on both ends.
OhlcvSeries slice(const OhlcvSeries& series, const Date& first, const Date& last);

/// Train and test partitions; both must be non-empty.
std::pair<OhlcvSeries, OhlcvSeries> split(const OhlcvSeries& series,
                                          const SplitSpec& spec);

}  // namespace vpmacd
