#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tsimp {

/// Exact coordinate and height type. Canonical form is maintained by gmpxx.
using Rational = mpq_class;

/// Parses "12", "-3.25", "1.5e-3" or "7/4" exactly. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace tsimp
