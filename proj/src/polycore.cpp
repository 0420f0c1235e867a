#include "stablci/polycore.hpp"

#include <sstream>

#include "stablci/error.hpp"

namespace stablci {

Ring::Ring(std::vector<std::string> params, std::vector<std::string> unknowns)
    : params_(std::move(params)), unknowns_(std::move(unknowns)) {
  if (num_vars() > kMaxVars) {
    throw Error(ErrorCode::kInvalidArgument, "ring has more than " + std::to_string(kMaxVars) + " variables");
  }
}

const std::string& Ring::name(int var) const {
  if (var < num_params()) return params_.at(static_cast<std::size_t>(var));
  return unknowns_.at(static_cast<std::size_t>(var - num_params()));
}

std::optional<int> Ring::find(std::string_view name) const {
  for (int i = 0; i < num_vars(); ++i) {
    if (this->name(i) == name) return i;
  }
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> params, std::vector<std::string> unknowns) {
  return std::make_shared<const Ring>(std::move(params), std::move(unknowns));
}

RingPtr unknowns_ring(const Ring& ring) { return make_ring({}, ring.unknowns()); }
RingPtr params_ring(const Ring& ring) { return make_ring(ring.params(), {}); }

void require_same_ring(const ExactPoly& a, const ExactPoly& b) {
  if (a.ring() != b.ring() && !(*a.ring() == *b.ring())) {
    throw Error(ErrorCode::kRingMismatch, "polynomials belong to different rings");
  }
}

ExactPoly::ExactPoly(RingPtr ring, QPoly terms) : ring_(std::move(ring)), poly_(std::move(terms)) {
  const std::uint32_t allowed = ring_->num_vars() >= 32 ? ~0u : ((1u << ring_->num_vars()) - 1u);
  if ((poly_.support() & ~allowed) != 0) {
    throw Error(ErrorCode::kRingMismatch, "polynomial uses variables outside its ring");
  }
}

ExactPoly ExactPoly::constant(RingPtr ring, const Rational& c) {
  return ExactPoly(std::move(ring), qpoly::constant(c));
}

ExactPoly ExactPoly::variable(RingPtr ring, int var) {
  if (var < 0 || var >= ring->num_vars()) throw Error(ErrorCode::kArityMismatch, "variable index out of range");
  return ExactPoly(std::move(ring), qpoly::variable(var));
}

bool ExactPoly::has_params() const {
  const std::uint32_t mask = (1u << ring_->num_params()) - 1u;
  return (poly_.support() & mask) != 0;
}

bool ExactPoly::params_only() const {
  const std::uint32_t mask = (1u << ring_->num_params()) - 1u;
  return (poly_.support() & ~mask) == 0;
}

ExactPoly operator+(const ExactPoly& a, const ExactPoly& b) {
  require_same_ring(a, b);
  return ExactPoly(a.ring_, qpoly::add(a.poly_, b.poly_));
}

ExactPoly operator-(const ExactPoly& a, const ExactPoly& b) {
  require_same_ring(a, b);
  return ExactPoly(a.ring_, qpoly::sub(a.poly_, b.poly_));
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
  require_same_ring(a, b);
  return ExactPoly(a.ring_, qpoly::mul(a.poly_, b.poly_));
}

ExactPoly operator*(const Rational& c, const ExactPoly& p) { return ExactPoly(p.ring_, p.poly_.scaled(c)); }

bool operator==(const ExactPoly& a, const ExactPoly& b) {
  return (a.ring_ == b.ring_ || *a.ring_ == *b.ring_) && a.poly_ == b.poly_;
}

std::string format_rational_coeff(const Rational& c) { return c.get_str(10); }

std::string format_poly(const QPoly& p, const Ring& ring, const TermOrder& order) {
  if (p.is_zero()) return "0";
  QPoly sorted = resorted(p, order);
  std::ostringstream out;
  bool first = true;
  for (const auto& t : sorted.terms()) {
    const bool negative = sgn(t.coeff) < 0;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    Rational mag = abs(t.coeff);
    std::string mono;
    for (int i = 0; i < ring.num_vars(); ++i) {
      int e = t.mono[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring.name(i);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out << format_rational_coeff(mag);
    } else if (mag == 1) {
      out << mono;
    } else {
      out << format_rational_coeff(mag) << "*" << mono;
    }
  }
  return out.str();
}

std::string ExactPoly::to_string(const TermOrder& order) const { return format_poly(poly_, *ring_, order); }

ExactPoly poly_arith(const ExactPoly& p, const ExactPoly& q, ArithOp op) {
  switch (op) {
    case ArithOp::kAdd: return p + q;
    case ArithOp::kSub: return p - q;
    case ArithOp::kMul: return p * q;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown arithmetic operation");
}

Rational evaluate(const ExactPoly& p, std::span<const Rational> point) {
  const Ring& ring = *p.ring();
  if (static_cast<int>(point.size()) != ring.num_unknowns()) {
    throw Error(ErrorCode::kArityMismatch, "point has " + std::to_string(point.size()) + " coordinates, ring has " +
                                               std::to_string(ring.num_unknowns()) + " unknowns");
  }
  if (p.has_params()) throw Error(ErrorCode::kArityMismatch, "polynomial still depends on parameters");
  std::vector<Rational> full(static_cast<std::size_t>(ring.num_vars()));
  for (int i = 0; i < ring.num_unknowns(); ++i) full[static_cast<std::size_t>(ring.unknown_var(i))] = point[static_cast<std::size_t>(i)];
  return qpoly::evaluate(p.raw(), full);
}

ExactPoly partial_derivative(const ExactPoly& p, int unknown) {
  if (unknown < 0 || unknown >= p.ring()->num_unknowns()) {
    throw Error(ErrorCode::kArityMismatch, "unknown index out of range");
  }
  return ExactPoly(p.ring(), qpoly::derivative(p.raw(), p.ring()->unknown_var(unknown)));
}

PolyMatrix jacobian_symbolic(std::span<const ExactPoly> system) {
  if (system.empty()) throw Error(ErrorCode::kNonSquare, "empty system");
  const int n = system.front().ring()->num_unknowns();
  if (static_cast<int>(system.size()) != n) {
    throw Error(ErrorCode::kNonSquare, std::to_string(system.size()) + " equations in " + std::to_string(n) + " unknowns");
  }
  PolyMatrix jac;
  jac.reserve(system.size());
  for (const auto& f : system) {
    require_same_ring(f, system.front());
    std::vector<ExactPoly> row;
    row.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) row.push_back(partial_derivative(f, j));
    jac.push_back(std::move(row));
  }
  return jac;
}

namespace {

ExactPoly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  ExactPoly det(m[0][0].ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<ExactPoly> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) row.push_back(m[i][k]);
      }
      minor.push_back(std::move(row));
    }
    ExactPoly term = m[0][j] * cofactor_det(minor);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

ExactPoly bareiss_det(PolyMatrix m) {
  const std::size_t n = m.size();
  RingPtr ring = m[0][0].ring();
  QPoly prev = qpoly::constant(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return ExactPoly(ring);
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        QPoly num = qpoly::sub(qpoly::mul(m[k][k].raw(), m[i][j].raw()), qpoly::mul(m[i][k].raw(), m[k][j].raw()));
        m[i][j] = ExactPoly(ring, qpoly::exact_div(num, prev));
      }
    }
    prev = m[k][k].raw();
  }
  ExactPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

}  // namespace

ExactPoly determinant(const PolyMatrix& m) {
  if (m.empty()) throw Error(ErrorCode::kNonSquare, "empty matrix");
  for (const auto& row : m) {
    if (row.size() != m.size()) throw Error(ErrorCode::kNonSquare, "matrix is not square");
  }
  return m.size() < 4 ? cofactor_det(m) : bareiss_det(m);
}

ExactPoly jacobian_det(std::span<const ExactPoly> system) { return determinant(jacobian_symbolic(system)); }

ExactPoly specialize_params(const ExactPoly& p, std::span<const Rational> alpha) {
  const Ring& ring = *p.ring();
  if (static_cast<int>(alpha.size()) != ring.num_params()) {
    throw Error(ErrorCode::kArityMismatch, "expected " + std::to_string(ring.num_params()) + " parameter values, got " +
                                               std::to_string(alpha.size()));
  }
  const int m = ring.num_params();
  std::vector<Term<Rational>> out;
  out.reserve(p.raw().size());
  for (const auto& t : p.raw().terms()) {
    Rational c = t.coeff;
    Monomial mono;
    for (int i = 0; i < ring.num_vars(); ++i) {
      int e = t.mono[i];
      if (e == 0) continue;
      if (i < m) {
        Rational pw;
        mpz_pow_ui(pw.get_num_mpz_t(), alpha[static_cast<std::size_t>(i)].get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(pw.get_den_mpz_t(), alpha[static_cast<std::size_t>(i)].get_den_mpz_t(), static_cast<unsigned long>(e));
        c *= pw;
      } else {
        mono.set(i - m, e);
      }
    }
    out.push_back({mono, c});
  }
  return ExactPoly(unknowns_ring(ring), QPoly::from_terms(std::move(out), qpoly::order()));
}

PolySystem specialize_params(std::span<const ExactPoly> system, std::span<const Rational> alpha) {
  PolySystem out;
  out.reserve(system.size());
  for (const auto& f : system) out.push_back(specialize_params(f, alpha));
  return out;
}

Rational linear_part_at_zero(const ExactPoly& g, std::span<const Rational> p) {
  Rational value = evaluate(g, p);
  for (int i = 0; i < g.ring()->num_unknowns(); ++i) {
    value -= evaluate(partial_derivative(g, i), p) * p[static_cast<std::size_t>(i)];
  }
  return value;
}

ExactPoly param_gcd(const ExactPoly& p, const ExactPoly& q) {
  require_same_ring(p, q);
  if (!p.params_only() || !q.params_only()) {
    throw Error(ErrorCode::kInvalidArgument, "param_gcd expects parameter-only polynomials");
  }
  return ExactPoly(p.ring(), qpoly::gcd(p.raw(), q.raw()));
}

ExactPoly canonical(const ExactPoly& p) { return ExactPoly(p.ring(), qpoly::primitive(p.raw())); }

}  // namespace stablci
