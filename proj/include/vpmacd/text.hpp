#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vpmacd::text {

std::string_view trim(std::string_view s) noexcept;
std::string lower(std::string_view s);
std::vector<std::string_view> split(std::string_view line, char sep = ',');

std::optional<double> parse_double(std::string_view s);

/// Shortest decimal string that reads back to the same double. Fixed
/// notation unless the magnitude is tiny or huge.
std::string shortest(double value);

/// Fixed-point with `digits` decimals ("%.*f").
std::string fixed(double value, int digits);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace vpmacd::text
