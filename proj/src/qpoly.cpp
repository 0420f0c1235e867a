#include "stablci/qpoly.hpp"

#include <algorithm>

#include "stablci/error.hpp"

namespace stablci::qpoly {

namespace {

/// Strips the monomial content common to every term (returns it; p is
/// divided in place).
Monomial monomial_content(const QPoly& p) {
  Monomial g = p.lead_mono();
  for (const auto& t : p.terms()) {
    Monomial next;
    for (int i = 0; i < kMaxVars; ++i) {
      if (int e = std::min(g[i], t.mono[i]); e > 0) next.set(i, e);
    }
    g = next;
    if (g.is_one()) break;
  }
  return g;
}

QPoly divide_by_monomial(const QPoly& p, const Monomial& m) {
  std::vector<Term<Rational>> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.mono / m, t.coeff});
  return QPoly::from_sorted(std::move(out));
}

int first_variable(std::uint32_t support) {
  for (int i = 0; i < kMaxVars; ++i) {
    if (support & (1u << i)) return i;
  }
  return -1;
}

/// Pseudo-remainder of a by b in `var`, without the leading-coefficient
/// power normalization (only the primitive part is used downstream).
QPoly pseudo_remainder(QPoly a, const QPoly& b, int var) {
  auto bc = coefficients_in(b, var);
  const int db = static_cast<int>(bc.size()) - 1;
  const QPoly& lcb = bc.back();
  while (!a.is_zero()) {
    int da = a.degree_in(var);
    if (da < db) break;
    auto ac = coefficients_in(a, var);
    QPoly shifted_lca = mul(ac.back(), QPoly::monomial(Monomial::variable(var, da - db), Rational(1)));
    a = sub(mul(lcb, a), mul(shifted_lca, b));
  }
  return a;
}

QPoly primitive_in(const QPoly& p, int var) {
  QPoly c = content_in(p, var);
  return primitive(exact_div(p, c));
}

/// gcd of two canonical nonzero polynomials.
QPoly gcd_nonzero(const QPoly& a, const QPoly& b) {
  if (a.is_constant() || b.is_constant()) return constant(1);
  if (a == b) return a;

  Monomial ma = monomial_content(a), mb = monomial_content(b);
  Monomial mg;
  for (int i = 0; i < kMaxVars; ++i) {
    if (int e = std::min(ma[i], mb[i]); e > 0) mg.set(i, e);
  }
  QPoly mono_gcd = QPoly::monomial(mg, Rational(1));
  QPoly ar = ma.is_one() ? a : divide_by_monomial(a, ma);
  QPoly br = mb.is_one() ? b : divide_by_monomial(b, mb);
  if (ar.is_constant() || br.is_constant()) return mono_gcd;

  std::uint32_t sa = ar.support(), sb = br.support();
  int var = first_variable(sa & sb);
  // A common factor can only involve variables occurring in both.
  if (var < 0) return mono_gcd;

  QPoly ca = content_in(ar, var), cb = content_in(br, var);
  QPoly pa = primitive(exact_div(ar, ca));
  QPoly pb = primitive(exact_div(br, cb));
  QPoly c = gcd(ca, cb);

  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  QPoly g;
  while (true) {
    QPoly r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(var) <= 0) {
      g = constant(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, var);
  }
  if (!g.is_constant()) g = primitive_in(g, var);
  return primitive(mul(mul(mono_gcd, c), g));
}

}  // namespace

QPoly pow(const QPoly& a, int e) {
  QPoly result = constant(1);
  QPoly base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

QPoly exact_div(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::kNotExactDivision, "division by zero polynomial");
  if (b.is_constant()) return a.scaled(Rational(1) / b.lead_coeff());
  std::vector<Term<Rational>> quotient;
  QPoly r = a;
  while (!r.is_zero()) {
    if (!b.lead_mono().divides(r.lead_mono())) {
      throw Error(ErrorCode::kNotExactDivision, "polynomial division is not exact");
    }
    Monomial m = r.lead_mono() / b.lead_mono();
    Rational c = r.lead_coeff() / b.lead_coeff();
    quotient.push_back({m, c});
    r = axpy(r, Rational(-c), m, b, order());
  }
  return QPoly::from_sorted(std::move(quotient));
}

bool divides(const QPoly& b, const QPoly& a) {
  try {
    (void)exact_div(a, b);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<QPoly> coefficients_in(const QPoly& p, int var) {
  int deg = std::max(p.degree_in(var), 0);
  std::vector<std::vector<Term<Rational>>> buckets(static_cast<std::size_t>(deg) + 1);
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    int k = m[var];
    m.set(var, 0);
    buckets[static_cast<std::size_t>(k)].push_back({m, t.coeff});
  }
  std::vector<QPoly> out;
  out.reserve(buckets.size());
  // Removing one variable preserves relative DegRevLex order only within a
  // fixed power of that variable, which is exactly how buckets are filled.
  for (auto& b : buckets) {
    QPoly q = QPoly::from_sorted(std::move(b));
    q.sort(order());
    out.push_back(std::move(q));
  }
  return out;
}

QPoly from_coefficients(std::span<const QPoly> coeffs, int var) {
  std::vector<Term<Rational>> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& t : coeffs[k].terms()) {
      terms.push_back({t.mono * Monomial::variable(var, static_cast<int>(k)), t.coeff});
    }
  }
  return QPoly::from_terms(std::move(terms), order());
}

Rational make_primitive(QPoly& p) {
  if (p.is_zero()) return Rational(1);
  Integer den_lcm = 1, num_gcd = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rational s(den_lcm, num_gcd);
  s.canonicalize();
  if (sgn(p.lead_coeff()) < 0) s = -s;
  if (s != 1) {
    for (auto& t : p.mutable_terms()) t.coeff *= s;
  }
  return s;
}

QPoly primitive(QPoly p) {
  make_primitive(p);
  return p;
}

QPoly content_in(const QPoly& p, int var) {
  auto coeffs = coefficients_in(p, var);
  QPoly g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero()) return primitive(b);
  if (b.is_zero()) return primitive(a);
  return gcd_nonzero(primitive(a), primitive(b));
}

QPoly lcm(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  QPoly g = gcd(a, b);
  return primitive(mul(exact_div(a, g), b));
}

QPoly derivative(const QPoly& p, int var) {
  std::vector<Term<Rational>> out;
  for (const auto& t : p.terms()) {
    int e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back({m, t.coeff * e});
  }
  return QPoly::from_terms(std::move(out), order());
}

QPoly squarefree_part(const QPoly& p, int var) {
  if (p.is_zero()) return p;
  QPoly g = gcd(p, derivative(p, var));
  return primitive(exact_div(p, g));
}

Rational evaluate(const QPoly& p, std::span<const Rational> point) {
  Rational sum = 0;
  const int n = static_cast<int>(point.size());
  for (const auto& t : p.terms()) {
    Rational v = t.coeff;
    for (int i = 0; i < kMaxVars; ++i) {
      int e = t.mono[i];
      if (e == 0) continue;
      if (i >= n) throw Error(ErrorCode::kArityMismatch, "evaluation point too short");
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), point[static_cast<std::size_t>(i)].get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(pw.get_den_mpz_t(), point[static_cast<std::size_t>(i)].get_den_mpz_t(), static_cast<unsigned long>(e));
      v *= pw;
    }
    sum += v;
  }
  return sum;
}

QPoly substitute(const QPoly& p, std::span<const Rational> values, std::span<const bool> which) {
  std::vector<Term<Rational>> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    Monomial m = t.mono;
    for (std::size_t i = 0; i < which.size(); ++i) {
      int e = m[static_cast<int>(i)];
      if (!which[i] || e == 0) continue;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), values[i].get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(pw.get_den_mpz_t(), values[i].get_den_mpz_t(), static_cast<unsigned long>(e));
      c *= pw;
      m.set(static_cast<int>(i), 0);
    }
    out.push_back({m, c});
  }
  return QPoly::from_terms(std::move(out), order());
}

}  // namespace stablci::qpoly
