#include "stablci/realcount.hpp"

#include <algorithm>
#include <random>

#include "stablci/error.hpp"
#include "stablci/ideal.hpp"

namespace stablci {

namespace {


// Dense univariate polynomial with integer coefficients, lowest degree first,
// no trailing zeros.
struct UPoly {
  std::vector<Integer> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Integer& lead() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

// Divides by the positive gcd of the coefficients.
void make_content_free(UPoly& p) {
  Integer g = 0;
  for (const auto& x : p.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (auto& x : p.c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (int k = 1; k <= p.degree(); ++k) d.c.push_back(p.c[static_cast<std::size_t>(k)] * k);
  d.trim();
  return d;
}

// Remainder of |lc(b)|^(deg a - deg b + 1) * a by b; a positive multiple of
// the true remainder, so signs are preserved.
UPoly positive_prem(UPoly a, const UPoly& b) {
  const int db = b.degree();
  const Integer lb = b.lead();
  const Integer abs_lb = abs(lb);
  while (!a.is_zero() && a.degree() >= db) {
    const int shift = a.degree() - db;
    const Integer la = a.lead();
    // a <- |lb| * a - sign(lb) * la * x^shift * b
    for (auto& x : a.c) x *= abs_lb;
    const Integer f = sgn(lb) > 0 ? la : Integer(-la);
    for (int k = 0; k <= db; ++k) a.c[static_cast<std::size_t>(k + shift)] -= f * b.c[static_cast<std::size_t>(k)];
    a.trim();
    make_content_free(a);
  }
  return a;
}

std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain{p};
  UPoly d = derivative(p);
  make_content_free(d);
  if (d.is_zero()) return chain;
  chain.push_back(d);
  for (;;) {
    UPoly r = positive_prem(chain[chain.size() - 2], chain.back());
    if (r.is_zero()) break;
    for (auto& x : r.c) x = -x;
    make_content_free(r);
    chain.push_back(std::move(r));
  }
  return chain;
}

// Sign of p(q), computed as the sign of den(q)^deg * p(q).
int sign_at(const UPoly& p, const Rational& q) {
  if (p.is_zero()) return 0;
  const Integer& n = q.get_num();
  const Integer& d = q.get_den();
  Integer acc = 0;
  Integer dpow = 1;
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * n + p.c[static_cast<std::size_t>(k)] * dpow;
    dpow *= d;
  }
  // acc = sum c_k n^k d^(deg-k) by Horner with the den powers folded in.
  return sgn(acc);
}

int sign_at_infinity(const UPoly& p, bool positive) {
  if (p.is_zero()) return 0;
  int s = sgn(p.lead());
  return (positive || p.degree() % 2 == 0) ? s : -s;
}

int variations(const std::vector<UPoly>& chain, const Bound& x, bool upper) {
  int count = 0;
  int prev = 0;
  for (const auto& p : chain) {
    int s = x ? sign_at(p, *x) : sign_at_infinity(p, upper);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

int find_single_var(const QPoly& p) {
  const std::uint32_t support = p.support();
  if (support == 0) return -1;
  if ((support & (support - 1)) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "expected a univariate polynomial");
  }
  int v = 0;
  while (((support >> v) & 1u) == 0) ++v;
  return v;
}

UPoly to_upoly(const QPoly& p, int var) {
  std::vector<Rational> coeffs;
  for (const auto& t : p.terms()) {
    const int e = var < 0 ? 0 : t.mono[var];
    if (static_cast<int>(coeffs.size()) <= e) coeffs.resize(static_cast<std::size_t>(e) + 1, Rational(0));
    coeffs[static_cast<std::size_t>(e)] = t.coeff;
  }
  Integer l = 1;
  for (const auto& q : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  UPoly out;
  for (const auto& q : coeffs) {
    Rational s = q * l;
    out.c.push_back(s.get_num());
  }
  out.trim();
  make_content_free(out);
  return out;
}

ExactPoly from_upoly(const UPoly& p, int var, const RingPtr& ring) {
  std::vector<Term<Rational>> terms;
  for (int k = 0; k <= p.degree(); ++k) {
    const Integer& c = p.c[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    terms.push_back({var < 0 || k == 0 ? Monomial() : Monomial::variable(var, k), Rational(c)});
  }
  return ExactPoly(ring, QPoly::from_terms(std::move(terms), qpoly::order()));
}

UPoly squarefree(const UPoly& p, const QPoly& source, int var) {
  if (p.degree() <= 1 || var < 0) return p;
  return to_upoly(qpoly::squarefree_part(source, var), var);
}

// Bound strictly above |root| for every root (Cauchy).
Rational root_bound(const UPoly& p) {
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    Rational r(abs(p.c[static_cast<std::size_t>(k)]), abs(p.lead()));
    r.canonicalize();
    m = std::max(m, r);
  }
  return m + 1;
}

Rational determinant_q(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det;
}

// Shape test shared by the Q and Q(a) bases: n generators, the first in the
// last variable only, generator k (k >= 1) led by x_{n-1-k} with a tail in
// the last variable.
template <class C>
bool has_shape(const GroebnerBasis<C>& gb, int n) {
  if (static_cast<int>(gb.gens.size()) != n || gb.is_unit()) return false;
  const std::uint32_t last = 1u << (n - 1);
  if ((gb.gens[0].support() & ~last) != 0) return false;
  for (int k = 1; k < n; ++k) {
    const auto& g = gb.gens[static_cast<std::size_t>(k)];
    if (!(g.lead_mono() == Monomial::variable(n - 1 - k))) return false;
    for (std::size_t t = 1; t < g.terms().size(); ++t) {
      if ((g.terms()[t].mono.support() & ~last) != 0) return false;
    }
  }
  return true;
}

}  // namespace

SturmSequence sturm_sequence(const ExactPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::kInvalidArgument, "Sturm sequence of the zero polynomial");
  const int var = find_single_var(p.raw());
  SturmSequence out{{}, p};
  for (const auto& q : sturm_chain(to_upoly(p.raw(), var))) out.polys.push_back(from_upoly(q, var, p.ring()));
  return out;
}

int sturm_count(const ExactPoly& p, const Bound& lo, const Bound& hi) {
  if (p.is_zero()) throw Error(ErrorCode::kInvalidArgument, "root count of the zero polynomial");
  if (lo && hi && !(*lo < *hi)) throw Error(ErrorCode::kInvalidArgument, "empty interval");
  const int var = find_single_var(p.raw());
  if (var < 0) return 0;
  const auto chain = sturm_chain(squarefree(to_upoly(p.raw(), var), p.raw(), var));
  return variations(chain, lo, false) - variations(chain, hi, true);
}

std::vector<RootInterval> isolate_real_roots(const ExactPoly& p, const Rational& width) {
  if (p.is_zero()) throw Error(ErrorCode::kInvalidArgument, "root isolation of the zero polynomial");
  if (width <= 0) throw Error(ErrorCode::kInvalidArgument, "isolation width must be positive");
  const int var = find_single_var(p.raw());
  std::vector<RootInterval> out;
  if (var < 0) return out;
  const UPoly sq = squarefree(to_upoly(p.raw(), var), p.raw(), var);
  const auto chain = sturm_chain(sq);
  auto count = [&](const Rational& a, const Rational& b) {
    return variations(chain, Bound(a), false) - variations(chain, Bound(b), true);
  };

  const Rational bound = root_bound(sq);
  struct Job {
    Rational lo, hi;
    int n;
  };
  std::vector<Job> stack{{-bound, bound, count(-bound, bound)}};
  while (!stack.empty()) {
    Job job = stack.back();
    stack.pop_back();
    if (job.n == 0) continue;
    if (job.n == 1) {
      int s_hi = sign_at(sq, job.hi);
      if (s_hi == 0) {
        out.push_back({job.hi, job.hi});
        continue;
      }
      int s_lo = sign_at(sq, job.lo);
      if (s_lo != 0) {
        // Plain bisection on the sign change.
        Rational lo = job.lo, hi = job.hi;
        while (hi - lo > width) {
          Rational mid = (lo + hi) / 2;
          int s = sign_at(sq, mid);
          if (s == 0) {
            lo = hi = mid;
            break;
          }
          if (s == s_lo) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        out.push_back({lo, hi});
        continue;
      }
      if (job.hi - job.lo <= width) {
        out.push_back({job.lo, job.hi});
        continue;
      }
    }
    Rational mid = (job.lo + job.hi) / 2;
    int left = count(job.lo, mid);
    stack.push_back({mid, job.hi, job.n - left});
    stack.push_back({job.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.hi < b.hi; });
  return out;
}

NearestRoots nearest_roots(const ExactPoly& p, const Rational& center, const Rational& width) {
  const int var = find_single_var(p.raw());
  if (var >= 0 && sign_at(to_upoly(p.raw(), var), center) == 0) {
    throw Error(ErrorCode::kOnBoundary, "the center is a root");
  }
  NearestRoots out;
  for (RootInterval iv : isolate_real_roots(p, width)) {
    if (iv.lo < center && center < iv.hi) {
      if (sturm_count(p, center, iv.hi) == 1) {
        iv.lo = center;
      } else {
        iv.hi = center;
      }
    }
    // Bisect until the centre lies strictly outside the closed interval.
    while (iv.lo == center || iv.hi == center) {
      const Rational mid = iv.midpoint();
      if (sturm_count(p, mid, iv.hi) == 1) {
        iv.lo = mid;
      } else {
        iv.hi = mid;
      }
    }
    if (iv.hi <= center) {
      out.below = iv;
    } else if (!out.above) {
      out.above = iv;
    }
  }
  return out;
}

std::optional<ShapeForm> shape_lemma_extract(const GroebnerBasis<Rational>& gb, const RingPtr& ring) {
  const int n = ring->num_unknowns();
  if (n == 0 || !has_shape(gb, n)) return std::nullopt;
  auto lift = [&](const QPoly& p) {
    // Basis variable i is unknown i of the ring.
    std::vector<Term<Rational>> terms;
    for (const auto& t : p.terms()) {
      Monomial m;
      for (int i = 0; i < n; ++i) {
        if (t.mono[i] != 0) m.set(ring->unknown_var(i), t.mono[i]);
      }
      terms.push_back({m, t.coeff});
    }
    return ExactPoly(ring, QPoly::from_terms(std::move(terms), qpoly::order()));
  };
  QPoly h = gb.gens[0];
  Rational lc = h.lead_coeff();
  for (auto& t : h.mutable_terms()) t.coeff /= lc;
  ShapeForm out{lift(h), {}};
  for (int i = 0; i + 1 < n; ++i) out.back_subs.push_back(lift(gb.gens[static_cast<std::size_t>(n - 1 - i)]));
  return out;
}

PolySystem linear_change(std::span<const ExactPoly> system, const std::vector<std::vector<Rational>>& m) {
  PolySystem out;
  if (system.empty()) return out;
  const RingPtr& ring = system.front().ring();
  const int n = ring->num_unknowns();
  if (static_cast<int>(m.size()) != n) throw Error(ErrorCode::kArityMismatch, "coordinate change has the wrong size");
  std::vector<QPoly> forms;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[static_cast<std::size_t>(i)].size()) != n) {
      throw Error(ErrorCode::kArityMismatch, "coordinate change is not square");
    }
    std::vector<Term<Rational>> terms;
    for (int j = 0; j < n; ++j) {
      terms.push_back({Monomial::variable(ring->unknown_var(j)), m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
    }
    forms.push_back(QPoly::from_terms(std::move(terms), qpoly::order()));
  }
  std::vector<std::vector<QPoly>> powers(static_cast<std::size_t>(n));
  auto power = [&](int i, int e) -> const QPoly& {
    auto& cache = powers[static_cast<std::size_t>(i)];
    if (cache.empty()) cache.push_back(qpoly::constant(1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(qpoly::mul(cache.back(), forms[static_cast<std::size_t>(i)]));
    return cache[static_cast<std::size_t>(e)];
  };
  for (const auto& f : system) {
    require_same_ring(f, system.front());
    QPoly acc;
    for (const auto& t : f.raw().terms()) {
      Monomial rest;
      QPoly term = qpoly::constant(t.coeff);
      for (int v = 0; v < ring->num_vars(); ++v) {
        int e = t.mono[v];
        if (e == 0) continue;
        if (v < ring->num_params()) {
          rest.set(v, e);
        } else {
          term = qpoly::mul(term, power(v - ring->num_params(), e));
        }
      }
      acc = qpoly::add(acc, term.times_term(rest, Rational(1)));
    }
    acc.sort(qpoly::order());
    out.push_back(ExactPoly(ring, std::move(acc)));
  }
  return out;
}

RealCountReport real_fiber_count(std::span<const ExactPoly> system, std::uint64_t seed) {
  if (system.empty()) throw Error(ErrorCode::kInvalidArgument, "empty system");
  const RingPtr& ring = system.front().ring();
  if (ring->num_params() != 0) throw Error(ErrorCode::kInvalidArgument, "specialize the parameters before counting");
  const int n = ring->num_unknowns();
  auto attempt = [&](std::span<const ExactPoly> sys) -> std::optional<ShapeForm> {
    auto gb = groebner_rational(sys, TermOrder::lex());
    if (gb.is_unit()) return ShapeForm{ExactPoly::constant(ring, Rational(1)), {}};
    if (!is_zero_dimensional(gb)) throw Error(ErrorCode::kNotZeroDim, "the fiber is not zero-dimensional");
    return shape_lemma_extract(gb, ring);
  };
  auto finish = [&](const ShapeForm& shape) {
    return RealCountReport{shape.h.is_constant() ? 0 : sturm_count(shape.h), shape.h, std::nullopt};
  };
  if (auto shape = attempt(system)) return finish(*shape);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int retry = 0; retry < 5; ++retry) {
    std::vector<std::vector<Rational>> m;
    do {
      m.assign(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
      for (auto& row : m) {
        for (auto& x : row) x = entry(rng);
      }
    } while (determinant_q(m) == 0);
    PolySystem changed = linear_change(system, m);
    if (auto shape = attempt(changed)) {
      RealCountReport report = finish(*shape);
      report.coordinate_change = m;
      return report;
    }
  }
  throw Error(ErrorCode::kShapeFailed, "no coordinate change reached shape position");
}

std::vector<ExactPoly> sturm_habicht_param(const ParamPoly& h, int var, const RingPtr& ring) {
  auto pring = params_ring(*ring);
  if (h.is_zero()) throw Error(ErrorCode::kInvalidArgument, "Sturm-Habicht sequence of zero");
  std::vector<ParamRational> coeffs;
  for (const auto& t : h.terms()) {
    if ((t.mono.support() & ~(1u << var)) != 0) throw Error(ErrorCode::kInvalidArgument, "expected a univariate polynomial");
    const int e = t.mono[var];
    if (static_cast<int>(coeffs.size()) <= e) coeffs.resize(static_cast<std::size_t>(e) + 1);
    coeffs[static_cast<std::size_t>(e)] = t.coeff;
  }
  const int p = static_cast<int>(coeffs.size()) - 1;
  QPoly d = qpoly::constant(1);
  for (const auto& c : coeffs) d = qpoly::lcm(d, c.den());
  std::vector<ExactPoly> pc;  // P_k, coefficients after clearing denominators
  std::vector<ExactPoly> qc;  // coefficients of P'
  for (const auto& c : coeffs) {
    pc.push_back(ExactPoly(pring, qpoly::mul(c.num(), qpoly::exact_div(d, c.den()))));
  }
  for (int k = 1; k <= p; ++k) qc.push_back(Rational(k) * pc[static_cast<std::size_t>(k)]);

  auto positive_scale = [&](const ExactPoly& x) {
    QPoly q = x.raw();
    Rational s = qpoly::make_primitive(q);
    if (sgn(s) < 0) q = -q;
    return ExactPoly(pring, std::move(q));
  };

  std::vector<ExactPoly> out;
  out.push_back(positive_scale(pc[static_cast<std::size_t>(p)]));
  if (p >= 1) out.push_back(positive_scale(qc[static_cast<std::size_t>(p - 1)]));
  const int q = p - 1;
  const ExactPoly zero(pring);
  for (int j = p - 2; j >= 0; --j) {
    const int size = p + q - 2 * j;
    const int top = p + q - j - 1;  // exponent of the first column
    PolyMatrix m(static_cast<std::size_t>(size), std::vector<ExactPoly>(static_cast<std::size_t>(size), zero));
    int row = 0;
    auto fill = [&](const std::vector<ExactPoly>& poly, int shift) {
      const int deg = static_cast<int>(poly.size()) - 1;
      for (int col = 0; col < size; ++col) {
        int e = top - col - shift;
        if (e >= 0 && e <= deg) m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = poly[static_cast<std::size_t>(e)];
      }
      ++row;
    };
    for (int i = q - j - 1; i >= 0; --i) fill(pc, i);
    for (int i = 0; i <= p - j - 1; ++i) fill(qc, i);
    ExactPoly det = determinant(m);
    if (det.is_zero()) {
      throw Error(ErrorCode::kDegenerate, "principal Sturm-Habicht coefficient " + std::to_string(j) + " vanishes identically");
    }
    out.push_back(positive_scale(det));
  }
  return out;
}

int permanences_minus_variations(std::span<const int> signs) {
  int total = 0;
  for (std::size_t k = 1; k < signs.size(); ++k) total += signs[k] == signs[k - 1] ? 1 : -1;
  return total;
}

ParamPoly parametric_shape_poly(const Family& fam) {
  auto gb = groebner_parametric(fam.gens, TermOrder::lex());
  if (!has_shape(gb, fam.num_unknowns())) {
    throw Error(ErrorCode::kShapeFailed, "the generic lex basis is not in shape position");
  }
  return gb.gens[0];
}

RegionClass classify_region(std::span<const ExactPoly> principal, std::span<const Rational> alpha) {
  RegionClass out;
  for (const auto& c : principal) {
    int s = sgn(qpoly::evaluate(c.raw(), alpha));
    if (s == 0) throw Error(ErrorCode::kOnBoundary, "a principal coefficient vanishes at the parameter point");
    out.signs.push_back(s);
  }
  out.real_count = permanences_minus_variations(out.signs);
  return out;
}

RegionClass classify_region(const Family& fam, std::span<const Rational> alpha) {
  if (static_cast<int>(alpha.size()) != fam.num_params()) {
    throw Error(ErrorCode::kArityMismatch, "parameter point has the wrong number of coordinates");
  }
  const auto principal = sturm_habicht_param(parametric_shape_poly(fam), fam.num_unknowns() - 1, fam.ring);
  return classify_region(principal, alpha);
}

}  // namespace stablci
