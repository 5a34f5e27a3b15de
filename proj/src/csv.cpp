#include "rabi/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace rabi::csv {

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string scientific(int sign, const std::string& digits, long exponent10) {
  std::string out;
  if (sign < 0) out += '-';
  out += digits.empty() ? '0' : digits[0];
  if (digits.size() > 1) {
    out += '.';
    out.append(digits, 1, std::string::npos);
  }
  out += 'e';
  out += exponent10 < 0 ? '-' : '+';
  const long mag = std::labs(exponent10);
  if (mag < 10) out += '0';
  out += std::to_string(mag);
  return out;
}

}  // namespace

std::string format_log_value(int sign, double log_abs) {
  if (sign == 0 || log_abs == -INFINITY) return "0";
  if (std::fabs(log_abs) < 700.0) return format_real(sign * std::exp(log_abs));
  const double log10v = log_abs / std::log(10.0);
  long e10 = static_cast<long>(std::floor(log10v));
  double mantissa = std::pow(10.0, log10v - static_cast<double>(e10));
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    ++e10;
  }
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), mantissa, std::chars_format::fixed, 16);
  std::string digits;
  for (const char* p = buf.data(); p != res.ptr; ++p)
    if (*p != '.') digits += *p;
  return scientific(sign, digits, e10);
}

std::string format_rational(const mpq_class& value) {
  if (value == 0) return "0";
  const mpf_class f(value, 256);
  mp_exp_t exp10 = 0;
  std::string digits = f.get_str(exp10, 10, 17);
  int sign = 1;
  if (!digits.empty() && digits[0] == '-') {
    sign = -1;
    digits.erase(0, 1);
  }
  // get_str yields 0.d1d2... x 10^exp10
  return scientific(sign, digits, static_cast<long>(exp10) - 1);
}

double parse_real(std::string_view text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::invalid_argument("not a real number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace rabi::csv
