#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace weiljet {

// Exact arbitrary-precision arithmetic. cpp_rational keeps itself in lowest
// terms with a positive denominator, which is exactly the invariant we need.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// "5", "-5", "3/4", "-3/4". Throws ParseError on anything else.
Rat rat_parse(const std::string& text);

// Inverse of rat_parse: integer form when the denominator is 1, "p/q" otherwise.
std::string rat_to_string(const Rat& value);

// n! as an exact integer (used for divided-power coefficient extraction).
Rat factorial(int n);

} // namespace weiljet
