#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace rabi::csv {

/// Shortest round-trip-safe rendering with 17 significant digits, independent of locale.
std::string format_real(double value);

/// Renders sign * exp(log_abs) in decimal scientific notation, also beyond the double range.
std::string format_log_value(int sign, double log_abs);

/// Exact rational rounded to 17 significant digits.
std::string format_rational(const mpq_class& value);

/// Locale-independent parse; throws std::invalid_argument on malformed input.
double parse_real(std::string_view text);

std::vector<std::string> split_row(std::string_view line);

}  // namespace rabi::csv
