#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace vpmacd {

/// Timezone-free trading day.
using Date = std::chrono::year_month_day;

/// Strict `YYYY-MM-DD`; returns nullopt for anything else, including
/// impossible calendar dates such as 2023-02-30.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(const Date& date);

inline Date make_date(int y, unsigned m, unsigned d) {
  return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

}  // namespace vpmacd
