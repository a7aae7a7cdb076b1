#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pneumo {

// "%.17g": enough digits to round-trip any double.
std::string format_g17(double value);

// Shortest decimal text that parses back to exactly `value`.
std::string format_shortest(double value);

// Strict decimal parse: the whole view must be consumed and the result finite.
std::optional<double> parse_double(std::string_view text);

}  // namespace pneumo
