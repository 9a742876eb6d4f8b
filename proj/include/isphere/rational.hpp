#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace isphere {

using Rational = mpq_class;

/// Parses "p/q", "-p/q" or "n". The result is canonical (lowest terms, q > 0).
Rational parse_rational(std::string_view text);

/// "p/q" with q > 0 and gcd(p, q) = 1, or "n" when the denominator is 1.
std::string format_rational(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

} // namespace isphere
