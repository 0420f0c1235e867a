#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace stablci {

/// Arbitrary-precision rational number; always kept canonical
/// (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "7", "-3/4", "0.25", "-1.5e-3" exactly. Returns nullopt on
/// malformed input.
std::optional<Rational> parse_rational(std::string_view text);

/// Correctly rounded (round-to-nearest-even) conversion to binary64.
double to_double(const Rational& q);

/// Exact conversion of a finite double.
Rational from_double(double v);

/// Best rational approximation with denominator <= max_den
/// (continued-fraction convergents plus the best semiconvergent).
Rational best_rational(const Rational& x, const Integer& max_den);
Rational best_rational(double x, const Integer& max_den);

std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace stablci
