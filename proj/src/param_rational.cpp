#include "stablci/param_rational.hpp"

#include "stablci/error.hpp"
#include "stablci/polycore.hpp"

namespace stablci {

ParamRational::ParamRational(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  if (num_.is_zero()) {
    den_ = qpoly::constant(1);
    return;
  }
  if (!den_.is_constant()) {
    QPoly g = qpoly::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = qpoly::exact_div(num_, g);
      den_ = qpoly::exact_div(den_, g);
    }
  }
  canonicalize_scale();
}

void ParamRational::canonicalize_scale() {
  if (num_.is_zero()) {
    den_ = qpoly::constant(1);
    return;
  }
  Rational s = qpoly::make_primitive(den_);
  if (s != 1) num_ = num_.scaled(s);
}

ParamRational ParamRational::inverse() const {
  if (num_.is_zero()) throw Error(ErrorCode::kInvalidArgument, "inverse of zero");
  ParamRational r(den_, num_, Trusted{});
  r.canonicalize_scale();
  return r;
}

ParamRational ParamRational::operator-() const { return ParamRational(-num_, den_, Trusted{}); }

ParamRational& ParamRational::operator+=(const ParamRational& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    QPoly n = qpoly::add(num_, o.num_);
    *this = ParamRational(std::move(n), den_);
    return *this;
  }
  if (den_.is_constant() && o.den_.is_constant()) {
    // Both denominators are 1 after canonicalization.
    num_ = qpoly::add(num_, o.num_);
    canonicalize_scale();
    return *this;
  }
  QPoly g = qpoly::gcd(den_, o.den_);
  QPoly d1 = qpoly::exact_div(den_, g);
  QPoly d2 = qpoly::exact_div(o.den_, g);
  QPoly n = qpoly::add(qpoly::mul(num_, d2), qpoly::mul(o.num_, d1));
  QPoly d = qpoly::mul(d1, o.den_);
  *this = ParamRational(std::move(n), std::move(d));
  return *this;
}

ParamRational& ParamRational::operator-=(const ParamRational& o) { return *this += -o; }

ParamRational& ParamRational::operator*=(const ParamRational& o) {
  if (is_zero() || o.is_zero()) return *this = ParamRational();
  if (o.is_rational()) {
    num_ = num_.scaled(o.num_.lead_coeff() / o.den_.lead_coeff());
    return *this;
  }
  // Cross-cancel so that the product stays reduced without a full gcd.
  QPoly g1 = den_.is_constant() ? qpoly::constant(1) : qpoly::gcd(den_, o.num_);
  QPoly g2 = o.den_.is_constant() ? qpoly::constant(1) : qpoly::gcd(num_, o.den_);
  QPoly n1 = g2.is_constant() ? num_ : qpoly::exact_div(num_, g2);
  QPoly d2 = g2.is_constant() ? o.den_ : qpoly::exact_div(o.den_, g2);
  QPoly n2 = g1.is_constant() ? o.num_ : qpoly::exact_div(o.num_, g1);
  QPoly d1 = g1.is_constant() ? den_ : qpoly::exact_div(den_, g1);
  num_ = qpoly::mul(n1, n2);
  den_ = qpoly::mul(d1, d2);
  canonicalize_scale();
  return *this;
}

ParamRational& ParamRational::operator/=(const ParamRational& o) { return *this *= o.inverse(); }

std::string ParamRational::to_string(const Ring& ring) const {
  const auto& order = qpoly::order();
  std::string n = format_poly(num_, ring, order);
  if (den_.is_constant()) return num_.size() <= 1 ? n : "(" + n + ")";
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = format_poly(den_, ring, order);
  const bool bare = den_.size() == 1 && den_.lead_mono().degree() == 1 && den_.lead_coeff() == 1;
  return n + "/" + (bare ? d : "(" + d + ")");
}

}  // namespace stablci
