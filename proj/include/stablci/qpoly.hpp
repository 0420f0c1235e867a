#pragma once

#include <span>
#include <vector>

#include "stablci/poly.hpp"

namespace stablci {

/// Multivariate polynomial over Q kept in DegRevLex order. This is the raw
/// representation behind ExactPoly and the numerator/denominator of
/// ParamRational.
using QPoly = Poly<Rational>;

namespace qpoly {

inline const TermOrder& order() {
  static const TermOrder kOrder = TermOrder::degrevlex();
  return kOrder;
}

inline QPoly constant(const Rational& c) { return QPoly::constant(c); }
inline QPoly variable(int index) { return QPoly::monomial(Monomial::variable(index), Rational(1)); }

inline QPoly add(const QPoly& a, const QPoly& b) { return stablci::add(a, b, order()); }
inline QPoly sub(const QPoly& a, const QPoly& b) { return stablci::sub(a, b, order()); }
inline QPoly mul(const QPoly& a, const QPoly& b) { return stablci::mul(a, b, order()); }
QPoly pow(const QPoly& a, int e);

/// Exact quotient a / b; throws kNotExactDivision if b does not divide a.
QPoly exact_div(const QPoly& a, const QPoly& b);
bool divides(const QPoly& b, const QPoly& a);

/// Coefficients of p viewed as a polynomial in `var`; entry k multiplies var^k.
std::vector<QPoly> coefficients_in(const QPoly& p, int var);
QPoly from_coefficients(std::span<const QPoly> coeffs, int var);

/// Scales p to integer coefficients with gcd 1 and positive leading
/// coefficient. Returns the factor s with result = s * p.
Rational make_primitive(QPoly& p);
QPoly primitive(QPoly p);

/// Content of p with respect to `var`, i.e. gcd of its coefficients.
QPoly content_in(const QPoly& p, int var);

/// Greatest common divisor over Q[vars], canonical (primitive, lc > 0).
/// gcd(0, q) = canonical q; gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly lcm(const QPoly& a, const QPoly& b);

/// Squarefree part of a univariate polynomial in `var` (gcd with derivative
/// removed); canonical.
QPoly squarefree_part(const QPoly& p, int var);

QPoly derivative(const QPoly& p, int var);

/// Evaluates p at `point` (indexed by variable); variables past the end of
/// `point` must not occur.
Rational evaluate(const QPoly& p, std::span<const Rational> point);

/// Substitutes values for the variables flagged in `which` (same indexing as
/// `values`); other variables are kept.
QPoly substitute(const QPoly& p, std::span<const Rational> values, std::span<const bool> which);

}  // namespace qpoly
}  // namespace stablci
