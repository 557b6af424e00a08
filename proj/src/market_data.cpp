#include "vpmacd/market_data.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "vpmacd/error.hpp"
#include "vpmacd/text.hpp"

namespace vpmacd {

namespace {

constexpr std::array<std::string_view, 6> kColumns = {"date", "open", "high",
                                                      "low",  "close", "volume"};

template <typename Field>
Eigen::ArrayXd column(const std::vector<Bar>& bars, Field field) {
  Eigen::ArrayXd out(static_cast<Eigen::Index>(bars.size()));
  for (std::size_t i = 0; i < bars.size(); ++i) out[static_cast<Eigen::Index>(i)] = bars[i].*field;
  return out;
}

}  // namespace

std::vector<Date> OhlcvSeries::dates() const {
  std::vector<Date> out;
  out.reserve(bars.size());
  for (const auto& b : bars) out.push_back(b.date);
  return out;
}

Eigen::ArrayXd OhlcvSeries::opens() const { return column(bars, &Bar::open); }
Eigen::ArrayXd OhlcvSeries::highs() const { return column(bars, &Bar::high); }
Eigen::ArrayXd OhlcvSeries::lows() const { return column(bars, &Bar::low); }
Eigen::ArrayXd OhlcvSeries::closes() const { return column(bars, &Bar::close); }
Eigen::ArrayXd OhlcvSeries::volumes() const { return column(bars, &Bar::volume); }

std::size_t OhlcvSeries::index_of(const Date& date) const {
  const auto it = std::lower_bound(bars.begin(), bars.end(), date,
                                   [](const Bar& b, const Date& d) { return b.date < d; });
  if (it == bars.end() || it->date != date) return npos;
  return static_cast<std::size_t>(it - bars.begin());
}

std::string_view to_string(BarRule rule) noexcept {
  switch (rule) {
    case BarRule::NonPositivePrice: return "NonPositivePrice";
    case BarRule::NegativeVolume: return "NegativeVolume";
    case BarRule::ZeroVolume: return "ZeroVolume";
    case BarRule::RangeInverted: return "RangeInverted";
    case BarRule::OpenOutsideRange: return "OpenOutsideRange";
    case BarRule::CloseOutsideRange: return "CloseOutsideRange";
  }
  return "Unknown";
}

OhlcvSeries parse_csv(const std::filesystem::path& path, std::string symbol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  if (symbol.empty()) symbol = path.stem().string();
  return parse_csv(in, std::move(symbol));
}

OhlcvSeries parse_csv(std::istream& in, std::string symbol) {
  std::string line;
  std::size_t line_no = 0;

  // Header: first non-blank line, optionally prefixed by a UTF-8 BOM.
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!text::trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header) throw Error(ErrorCode::EmptyFile, "empty file");

  std::array<std::size_t, kColumns.size()> pos;
  pos.fill(static_cast<std::size_t>(-1));
  const auto header = text::split(line);
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = text::lower(text::trim(header[i]));
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      if (name == kColumns[c] && pos[c] == static_cast<std::size_t>(-1)) pos[c] = i;
    }
  }
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    if (pos[c] == static_cast<std::size_t>(-1)) {
      throw Error(ErrorCode::MissingColumn, "missing column " + std::string(kColumns[c]));
    }
  }
  const std::size_t needed = *std::max_element(pos.begin(), pos.end()) + 1;

  OhlcvSeries series{std::move(symbol), {}};
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto fields = text::split(line);
    auto fail = [&] {
      return Error(ErrorCode::UnparsableRow,
                   "unparsable row at line " + std::to_string(line_no), line_no);
    };
    if (fields.size() < needed) throw fail();
    const auto date = parse_date(text::trim(fields[pos[0]]));
    if (!date) throw fail();
    std::array<double, 5> v{};
    for (std::size_t c = 1; c < kColumns.size(); ++c) {
      const auto x = text::parse_double(fields[pos[c]]);
      if (!x) throw fail();
      v[c - 1] = *x;
    }
    series.bars.push_back(Bar{*date, v[0], v[1], v[2], v[3], v[4]});
  }
  if (series.bars.empty()) throw Error(ErrorCode::EmptyFile, "no data rows");

  std::stable_sort(series.bars.begin(), series.bars.end(),
                   [](const Bar& a, const Bar& b) { return a.date < b.date; });
  const auto dup = std::adjacent_find(series.bars.begin(), series.bars.end(),
                                      [](const Bar& a, const Bar& b) { return a.date == b.date; });
  if (dup != series.bars.end()) {
    throw Error(ErrorCode::DuplicateDate, "duplicate date " + format_date(dup->date));
  }
  return series;
}

void write_csv(const OhlcvSeries& series, std::ostream& out) {
  out << "Date,Open,High,Low,Close,Volume\n";
  for (const auto& b : series.bars) {
    out << format_date(b.date) << ',' << text::shortest(b.open) << ',' << text::shortest(b.high)
        << ',' << text::shortest(b.low) << ',' << text::shortest(b.close) << ','
        << text::shortest(b.volume) << '\n';
  }
}

void write_csv(const OhlcvSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  write_csv(series, out);
}

std::vector<Violation> validate(const OhlcvSeries& series) {
  std::vector<Violation> out;
  for (const auto& b : series.bars) {
    auto flag = [&](BarRule r) { out.push_back({b.date, r}); };
    if (!(b.open > 0.0 && b.high > 0.0 && b.low > 0.0 && b.close > 0.0)) {
      flag(BarRule::NonPositivePrice);
    }
    if (b.volume < 0.0) flag(BarRule::NegativeVolume);
    if (b.volume == 0.0) flag(BarRule::ZeroVolume);
    if (b.high < b.low) {
      flag(BarRule::RangeInverted);
      continue;
    }
    if (b.open > b.high || b.open < b.low) flag(BarRule::OpenOutsideRange);
    if (b.close > b.high || b.close < b.low) flag(BarRule::CloseOutsideRange);
  }
  return out;
}

OhlcvSeries slice(const OhlcvSeries& series, const Date& first, const Date& last) {
  OhlcvSeries out{series.symbol, {}};
  for (const auto& b : series.bars) {
    if (first <= b.date && b.date <= last) out.bars.push_back(b);
  }
  return out;
}

std::pair<OhlcvSeries, OhlcvSeries> split(const OhlcvSeries& series, const SplitSpec& spec) {
  if (!(spec.train_start <= spec.train_end) || !(spec.test_start <= spec.test_end) ||
      !(spec.train_end < spec.test_start)) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent split windows");
  }
  auto train = slice(series, spec.train_start, spec.train_end);
  auto test = slice(series, spec.test_start, spec.test_end);
  if (train.empty()) throw Error(ErrorCode::EmptyPartition, "training window has no bars");
  if (test.empty()) throw Error(ErrorCode::EmptyPartition, "testing window has no bars");
  return {std::move(train), std::move(test)};
}

}  // namespace vpmacd
