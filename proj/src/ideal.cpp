#include "stablci/ideal.hpp"

#include <map>
#include <sstream>

namespace stablci {

namespace {

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return qpoly::order().compare(a, b) < 0; }
};

/// Degree orders are cheap; for zero-dimensional ideals the target basis is
/// recovered from the degrevlex one by change of ordering.
template <class C>
GroebnerBasis<C> change_order_or_recompute(std::vector<Poly<C>> polys, const TermOrder& order, int num_vars) {
  const TermOrder drl = TermOrder::degrevlex();
  for (auto& p : polys) p.sort(drl);
  GroebnerBasis<C> gb = buchberger(polys, drl, num_vars);
  if (order == drl) return gb;
  if (is_zero_dimensional(gb)) return fglm(gb, order);
  for (auto& p : polys) p.sort(order);
  return buchberger(std::move(polys), order, num_vars);
}

}  // namespace

GroebnerBasis<Rational> groebner_rational(std::span<const ExactPoly> gens, const TermOrder& order) {
  std::vector<Poly<Rational>> polys;
  int num_vars = 0;
  for (const auto& g : gens) {
    num_vars = g.ring()->num_vars();
    polys.push_back(g.raw());
  }
  return change_order_or_recompute(std::move(polys), order, num_vars);
}

ParamPoly to_param_poly(const ExactPoly& p, const TermOrder& order) {
  const int m = p.ring()->num_params();
  const int nv = p.ring()->num_vars();
  std::map<Monomial, std::vector<Term<Rational>>, MonomialLess> groups;
  for (const auto& t : p.raw().terms()) {
    Monomial x_part, a_part;
    for (int i = 0; i < nv; ++i) {
      int e = t.mono[i];
      if (e == 0) continue;
      if (i < m) {
        a_part.set(i, e);
      } else {
        x_part.set(i - m, e);
      }
    }
    groups[x_part].push_back({a_part, t.coeff});
  }
  std::vector<Term<ParamRational>> terms;
  for (auto& [mono, coeff_terms] : groups) {
    terms.push_back({mono, ParamRational(QPoly::from_terms(std::move(coeff_terms), qpoly::order()))});
  }
  ParamPoly out = ParamPoly::from_sorted(std::move(terms));
  out.sort(order);
  return out;
}

GroebnerBasis<ParamRational> groebner_parametric(std::span<const ExactPoly> gens, const TermOrder& order) {
  std::vector<ParamPoly> polys;
  int num_vars = 0;
  for (const auto& g : gens) {
    num_vars = g.ring()->num_unknowns();
    polys.push_back(to_param_poly(g, TermOrder::degrevlex()));
  }
  return change_order_or_recompute(std::move(polys), order, num_vars);
}

ExactPoly from_rational_poly(const Poly<Rational>& p, const RingPtr& ring) {
  return ExactPoly(ring, resorted(p, qpoly::order()));
}

std::vector<ExactPoly> elimination_ideal(std::span<const ExactPoly> gens, std::span<const int> drop) {
  if (gens.empty()) return {};
  const RingPtr& ring = gens.front().ring();
  const int nv = ring->num_vars();
  std::vector<bool> dropped(static_cast<std::size_t>(nv), false);
  for (int d : drop) {
    if (d < 0 || d >= nv) throw Error(ErrorCode::kArityMismatch, "elimination variable out of range");
    dropped[static_cast<std::size_t>(d)] = true;
  }
  // Permutation: dropped variables first (in ring order), kept ones after.
  std::vector<int> to_new(static_cast<std::size_t>(nv));
  std::vector<int> to_old;
  for (int pass = 0; pass < 2; ++pass) {
    for (int v = 0; v < nv; ++v) {
      if (dropped[static_cast<std::size_t>(v)] == (pass == 0)) {
        to_new[static_cast<std::size_t>(v)] = static_cast<int>(to_old.size());
        to_old.push_back(v);
      }
    }
  }
  const int k = static_cast<int>(drop.size());
  const TermOrder order = TermOrder::block_elim(k);
  auto permute = [&](const QPoly& p, const std::vector<int>& map) {
    std::vector<Term<Rational>> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
      Monomial m;
      for (int v = 0; v < nv; ++v) {
        if (t.mono[v] != 0) m.set(map[static_cast<std::size_t>(v)], t.mono[v]);
      }
      terms.push_back({m, t.coeff});
    }
    return QPoly::from_sorted(std::move(terms));
  };
  std::vector<Poly<Rational>> polys;
  for (const auto& g : gens) {
    require_same_ring(g, gens.front());
    polys.push_back(permute(g.raw(), to_new));
  }
  auto gb = change_order_or_recompute(std::move(polys), order, nv);
  const std::uint32_t dropped_mask = k >= 32 ? ~0u : ((1u << k) - 1u);
  std::vector<ExactPoly> out;
  for (const auto& g : gb.gens) {
    if ((g.support() & dropped_mask) != 0) continue;
    QPoly back = resorted(permute(g, to_old), qpoly::order());
    out.push_back(ExactPoly(ring, qpoly::primitive(std::move(back))));
  }
  return out;
}

std::string format_param_poly(const ParamPoly& p, const Ring& ring, const TermOrder& order) {
  if (p.is_zero()) return "0";
  auto pring = params_ring(ring);
  ParamPoly sorted = resorted(p, order);
  std::ostringstream out;
  bool first = true;
  for (const auto& t : sorted.terms()) {
    std::string mono;
    for (int i = 0; i < ring.num_unknowns(); ++i) {
      int e = t.mono[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring.unknowns()[static_cast<std::size_t>(i)];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    ParamRational c = t.coeff;
    bool negative = false;
    if (c.num().size() == 1 && sgn(c.num().lead_coeff()) < 0) {
      negative = true;
      c = -c;
    }
    std::string coeff;
    if (!(c.is_rational() && c.num().lead_coeff() == 1 && !mono.empty())) coeff = c.to_string(*pring);
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (coeff.empty()) {
      out << mono;
    } else if (mono.empty()) {
      out << coeff;
    } else {
      out << coeff << "*" << mono;
    }
  }
  return out.str();
}

std::vector<std::string> format_basis(const GroebnerBasis<ParamRational>& gb, const Ring& ring) {
  std::vector<std::string> out;
  for (const auto& g : gb.gens) out.push_back(format_param_poly(g, ring, gb.order));
  return out;
}

std::vector<std::string> format_basis(const GroebnerBasis<Rational>& gb, const Ring& ring) {
  std::vector<std::string> out;
  for (const auto& g : gb.gens) out.push_back(format_poly(g, ring, gb.order));
  return out;
}

}  // namespace stablci
