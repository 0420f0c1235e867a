#pragma once

#include <string>

#include "stablci/qpoly.hpp"

namespace stablci {

class Ring;

/// Element of the rational function field Q(a). Numerator and denominator
/// are parameter-only polynomials with gcd 1; the denominator has integer
/// coefficients with content 1 and a positive DegRevLex leading coefficient.
class ParamRational {
 public:
  ParamRational() : num_(), den_(qpoly::constant(1)) {}
  ParamRational(const Rational& c) : num_(qpoly::constant(c)), den_(qpoly::constant(1)) {}  // NOLINT
  explicit ParamRational(QPoly num) : num_(std::move(num)), den_(qpoly::constant(1)) {}
  /// Normalizes; throws kInvalidArgument if den is zero.
  ParamRational(QPoly num, QPoly den);

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }

  ParamRational inverse() const;

  ParamRational& operator+=(const ParamRational& o);
  ParamRational& operator-=(const ParamRational& o);
  ParamRational& operator*=(const ParamRational& o);
  ParamRational& operator/=(const ParamRational& o);

  friend ParamRational operator+(ParamRational a, const ParamRational& b) { return a += b; }
  friend ParamRational operator-(ParamRational a, const ParamRational& b) { return a -= b; }
  friend ParamRational operator*(ParamRational a, const ParamRational& b) { return a *= b; }
  friend ParamRational operator/(ParamRational a, const ParamRational& b) { return a /= b; }
  ParamRational operator-() const;

  friend bool operator==(const ParamRational& a, const ParamRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Re-applies the canonical form; idempotent.
  ParamRational normalized() const { return ParamRational(num_, den_); }

  std::string to_string(const Ring& ring) const;

 private:
  struct Trusted {};
  ParamRational(QPoly num, QPoly den, Trusted) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize_scale();

  QPoly num_;
  QPoly den_;
};

template <>
struct CoeffTraits<ParamRational> {
  static bool is_zero(const ParamRational& c) { return c.is_zero(); }
  static bool is_one(const ParamRational& c) {
    return c.den().is_constant() && c.num().is_constant() && !c.num().is_zero() && c.num().lead_coeff() == 1;
  }
  static ParamRational zero() { return {}; }
  static ParamRational one() { return ParamRational(Rational(1)); }
};

using ParamPoly = Poly<ParamRational>;

}  // namespace stablci
