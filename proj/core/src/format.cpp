#include "maskkit/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "maskkit/error.hpp"

namespace maskkit {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string format_fixed(double value, int decimals) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed, decimals);
  return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& text, const char* what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(value)) {
    throw Error(Errc::parse_error, std::string("invalid ") + what + ": '" + text + "'");
  }
  return value;
}

long long parse_integer(const std::string& text, const char* what) {
  long long value = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw Error(Errc::parse_error, std::string("invalid ") + what + ": '" + text + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(const std::string& text, const char* what) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw Error(Errc::parse_error, std::string("invalid ") + what + ": '" + text + "'");
  }
  return value;
}

}  // namespace maskkit
