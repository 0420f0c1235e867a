#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stablci/qpoly.hpp"

namespace stablci {

/// Variable roster: parameters a_1..a_m occupy indices [0, m), unknowns
/// x_1..x_n occupy [m, m + n).
class Ring {
 public:
  Ring(std::vector<std::string> params, std::vector<std::string> unknowns);

  int num_params() const { return static_cast<int>(params_.size()); }
  int num_unknowns() const { return static_cast<int>(unknowns_.size()); }
  int num_vars() const { return num_params() + num_unknowns(); }

  const std::vector<std::string>& params() const { return params_; }
  const std::vector<std::string>& unknowns() const { return unknowns_; }
  const std::string& name(int var) const;
  /// Ring index of unknown i.
  int unknown_var(int i) const { return num_params() + i; }
  std::optional<int> find(std::string_view name) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.params_ == b.params_ && a.unknowns_ == b.unknowns_;
  }

 private:
  std::vector<std::string> params_;
  std::vector<std::string> unknowns_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> params, std::vector<std::string> unknowns);
/// Same unknowns, no parameters.
RingPtr unknowns_ring(const Ring& ring);
/// Same parameters, no unknowns.
RingPtr params_ring(const Ring& ring);

/// Polynomial with rational coefficients over a Ring. Immutable value type.
class ExactPoly {
 public:
  explicit ExactPoly(RingPtr ring) : ring_(std::move(ring)) {}
  /// `terms` must be sorted in DegRevLex and use only the ring's variables.
  ExactPoly(RingPtr ring, QPoly terms);

  static ExactPoly constant(RingPtr ring, const Rational& c);
  static ExactPoly variable(RingPtr ring, int var);

  const RingPtr& ring() const { return ring_; }
  const QPoly& raw() const { return poly_; }

  bool is_zero() const { return poly_.is_zero(); }
  bool is_constant() const { return poly_.is_constant(); }
  bool has_params() const;
  /// True if no unknown occurs.
  bool params_only() const;
  int total_degree() const { return poly_.total_degree(); }
  int degree_in(int var) const { return poly_.degree_in(var); }

  friend ExactPoly operator+(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator-(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator*(const Rational& c, const ExactPoly& p);
  ExactPoly operator-() const { return ExactPoly(ring_, -poly_); }

  friend bool operator==(const ExactPoly& a, const ExactPoly& b);

  /// Human-readable form, terms descending in `order`.
  std::string to_string(const TermOrder& order = TermOrder::degrevlex()) const;

 private:
  RingPtr ring_;
  QPoly poly_;
};

using PolySystem = std::vector<ExactPoly>;
using PolyMatrix = std::vector<std::vector<ExactPoly>>;

enum class ArithOp { kAdd, kSub, kMul };

/// Exact sum, difference or product; throws kRingMismatch.
ExactPoly poly_arith(const ExactPoly& p, const ExactPoly& q, ArithOp op);

/// Value of p at a point of unknowns; p must not involve parameters.
Rational evaluate(const ExactPoly& p, std::span<const Rational> point);

/// Formal derivative with respect to unknown `unknown` (0-based).
ExactPoly partial_derivative(const ExactPoly& p, int unknown);

/// n x n matrix of partials with respect to the unknowns only.
PolyMatrix jacobian_symbolic(std::span<const ExactPoly> system);

/// Determinant of a square polynomial matrix: cofactor expansion for
/// n < 4, Bareiss fraction-free elimination otherwise.
ExactPoly determinant(const PolyMatrix& m);
ExactPoly jacobian_det(std::span<const ExactPoly> system);

/// Substitutes parameter values; the result lives in the unknowns-only ring.
ExactPoly specialize_params(const ExactPoly& p, std::span<const Rational> alpha);
PolySystem specialize_params(std::span<const ExactPoly> system, std::span<const Rational> alpha);

/// g(p) - Jac_g(p) * p, which equals the constant-plus-linear part of the
/// Taylor expansion of g around p evaluated back at the origin.
Rational linear_part_at_zero(const ExactPoly& g, std::span<const Rational> p);

/// gcd of parameter-only polynomials (canonical: integer primitive, lc > 0).
ExactPoly param_gcd(const ExactPoly& p, const ExactPoly& q);

/// Canonical representative up to a nonzero rational scalar.
ExactPoly canonical(const ExactPoly& p);

std::string format_poly(const QPoly& p, const Ring& ring, const TermOrder& order);
std::string format_rational_coeff(const Rational& c);

void require_same_ring(const ExactPoly& a, const ExactPoly& b);

}  // namespace stablci
