#pragma once

#include <string>
#include <string_view>

namespace flora {

// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

// Fixed-point text with `decimals` digits; negative `decimals` falls back to format_number.
std::string format_fixed(double value, int decimals);

// Strict parsers: the whole field must be consumed.
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, long long& out);

std::string_view trim(std::string_view text);

}  // namespace flora
