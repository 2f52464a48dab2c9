#pragma once

#include <string>
#include <utility>

#include "stripcert/reals/exact_value.hpp"

namespace stripcert::cli {

/// Parses an exact expression: integers, decimals (taken exactly), `pi`,
/// `sqrt(...)`, `+ - * / ( )` and `^` with an integer exponent.
/// Throws InvalidArgument on malformed input.
reals::ExactValue parse_exact(const std::string& text);

/// Parses "lo,hi" where both sides are exact expressions.
std::pair<reals::ExactValue, reals::ExactValue> parse_range(const std::string& text);

/// Splits on commas outside parentheses.
std::vector<std::string> split_top_level(const std::string& text);

}  // namespace stripcert::cli
