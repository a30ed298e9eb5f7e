#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace treesearch {

// All cost arithmetic is exact: rationals over arbitrary-precision integers.
// cpp_rational keeps itself in lowest terms with a positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p" or "p/q" (q > 0, ASCII digits, optional leading '-' on p).
// Returns false on anything else; no whitespace is accepted.
bool try_parse_rational(std::string_view text, Rat& out);

// Inverse of try_parse_rational: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rat& value);

}  // namespace treesearch
