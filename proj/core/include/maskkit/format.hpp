#pragma once

#include <cstdint>
#include <string>

namespace maskkit {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// Strict full-string parse; throws Errc::parse_error naming `what`.
double parse_double(const std::string& text, const char* what);
long long parse_integer(const std::string& text, const char* what);
std::uint64_t parse_unsigned(const std::string& text, const char* what);

}  // namespace maskkit
