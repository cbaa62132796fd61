#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boost {

// boost::rational's mixed `int == rational<long>` template recurses forever
// under the C++20 rewritten-comparison rules. Exact non-template overloads
// win overload resolution (found by ADL) and sidestep it.
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(int a, const rational<std::int64_t>& b) { return b == rational<std::int64_t>(a); }

} // namespace boost

namespace lupoly {

using Rational = boost::rational<std::int64_t>;

// Parses "3", "-1/6", "0.125" or "1e-3" into an exact fraction. Decimal input is
// taken at face value: "0.1" is 1/10. Throws InvalidInput on malformed text or
// denominators beyond 10^12.
Rational parse_rational(std::string_view text);

// Comma separated list of parse_rational tokens.
std::vector<Rational> parse_rational_list(std::string_view text);

double to_double(const Rational& value);

std::string to_string(const Rational& value);

// Rank of a dense rational matrix (rows of equal length) by exact elimination.
std::size_t exact_rank(std::vector<std::vector<Rational>> rows);

// Solves the square system A x = b exactly. Returns false when A is singular.
bool solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                 std::vector<Rational>& x);

} // namespace lupoly
