#pragma once

#include <algorithm>
#include <unordered_map>
#include <optional>
#include <span>
#include <vector>

#include "stablci/error.hpp"
#include "stablci/poly.hpp"

namespace stablci {

/// Reduced Groebner basis over a coefficient field C. Generators are monic
/// and sorted ascending by leading monomial. `num_vars` is the number of
/// variables the basis lives in (needed for staircase questions).
template <class C>
struct GroebnerBasis {
  TermOrder order = TermOrder::degrevlex();
  int num_vars = 0;
  std::vector<Poly<C>> gens;

  bool is_unit() const { return gens.size() == 1 && gens[0].is_constant(); }
};

/// Result of staircase extraction. `monomials` is only filled when the
/// staircase is finite.
struct Staircase {
  std::vector<Monomial> monomials;
  std::optional<long> multiplicity;  // nullopt means infinite
  bool finite() const { return multiplicity.has_value(); }
};

struct BuchbergerStats {
  long pairs_processed = 0;
  long pairs_skipped = 0;
  long zero_reductions = 0;
};

namespace detail {

template <class C>
struct Reducer {
  const Poly<C>* poly;
  Monomial lead;
};

template <class C>
const Poly<C>* find_reducer(const std::vector<Reducer<C>>& reducers, const Monomial& m) {
  for (const auto& r : reducers) {
    if (r.lead.divides(m)) return r.poly;
  }
  return nullptr;
}

/// Full reduction of f against monic reducers.
template <class C>
Poly<C> reduce_full(Poly<C> f, const std::vector<Reducer<C>>& reducers, const TermOrder& order) {
  std::vector<Term<C>> remainder;
  while (!f.is_zero()) {
    const Poly<C>* g = find_reducer(reducers, f.lead_mono());
    if (g != nullptr) {
      C c = -f.lead_coeff();
      Monomial m = f.lead_mono() / g->lead_mono();
      f = axpy(f, c, m, *g, order);
      continue;
    }
    remainder.push_back(f.lead());
    auto& t = f.mutable_terms();
    t.erase(t.begin());
  }
  return Poly<C>::from_sorted(std::move(remainder));
}

template <class C>
Poly<C> make_monic(Poly<C> p) {
  if (p.is_zero() || CoeffTraits<C>::is_one(p.lead_coeff())) return p;
  C inv = CoeffTraits<C>::one() / p.lead_coeff();
  for (auto& t : p.mutable_terms()) t.coeff *= inv;
  return p;
}

}  // namespace detail

/// Remainder of p modulo `basis` (basis elements need not be monic). No term
/// of the result is divisible by a leading monomial of the basis.
template <class C>
Poly<C> normal_form(const Poly<C>& p, std::span<const Poly<C>> basis, const TermOrder& order) {
  std::vector<Poly<C>> monic;
  monic.reserve(basis.size());
  for (const auto& b : basis) {
    if (!b.is_zero()) monic.push_back(detail::make_monic(b));
  }
  std::vector<detail::Reducer<C>> reducers;
  for (const auto& b : monic) reducers.push_back({&b, b.lead_mono()});
  return detail::reduce_full(p, reducers, order);
}

template <class C>
Poly<C> s_polynomial(const Poly<C>& f, const Poly<C>& g, const TermOrder& order) {
  Monomial l = f.lead_mono().lcm(g.lead_mono());
  Poly<C> a = f.times_term(l / f.lead_mono(), CoeffTraits<C>::one() / f.lead_coeff());
  return axpy(a, C(-(CoeffTraits<C>::one() / g.lead_coeff())), l / g.lead_mono(), g, order);
}

/// Buchberger's algorithm with the sugar-degree normal selection strategy
/// and the Gebauer-Moeller installation of Buchberger's two criteria.
template <class C>
class BuchbergerEngine {
 public:
  BuchbergerEngine(const TermOrder& order, int num_vars) : order_(order), num_vars_(num_vars) {}

  GroebnerBasis<C> run(std::vector<Poly<C>> gens) {
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      g.sort(order_);
      const int degree = g.total_degree();
      g = detail::reduce_full(std::move(g), reducers(), order_);
      if (g.is_zero()) continue;
      if (g.is_constant()) return unit_basis();
      add_generator(detail::make_monic(std::move(g)), degree);
    }
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = order_.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
      });
      Pair pair = *best;
      pairs_.erase(best);
      ++stats_.pairs_processed;
      Poly<C> s = s_polynomial(polys_[pair.i], polys_[pair.j], order_);
      Poly<C> h = detail::reduce_full(std::move(s), reducers(), order_);
      if (h.is_zero()) {
        ++stats_.zero_reductions;
        continue;
      }
      if (h.is_constant()) return unit_basis();
      add_generator(detail::make_monic(std::move(h)), pair.sugar);
    }
    return finish();
  }

  const BuchbergerStats& stats() const { return stats_; }

 private:
  struct Pair {
    int i;
    int j;
    Monomial lcm;
    int sugar;
  };

  std::vector<detail::Reducer<C>> reducers() const {
    std::vector<detail::Reducer<C>> r;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) r.push_back({&polys_[k], polys_[k].lead_mono()});
    }
    return r;
  }

  int pair_sugar(int i, int j, const Monomial& l) const {
    int si = sugar_[static_cast<std::size_t>(i)] + (l.degree() - polys_[static_cast<std::size_t>(i)].lead_mono().degree());
    int sj = sugar_[static_cast<std::size_t>(j)] + (l.degree() - polys_[static_cast<std::size_t>(j)].lead_mono().degree());
    return std::max(si, sj);
  }

  void add_generator(Poly<C> h, int sugar) {
    const int t = static_cast<int>(polys_.size());
    const Monomial lt_h = h.lead_mono();
    polys_.push_back(std::move(h));
    sugar_.push_back(sugar);
    active_.push_back(true);

    // Candidate pairs (g, h) for active g.
    struct Cand {
      int g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> cands;
    for (int g = 0; g < t; ++g) {
      if (!active_[static_cast<std::size_t>(g)]) continue;
      const Monomial& lt_g = polys_[static_cast<std::size_t>(g)].lead_mono();
      cands.push_back({g, lt_g.lcm(lt_h), lt_g.coprime(lt_h)});
    }
    // Chain criterion among the new pairs: (g, h) is dropped when another
    // new pair's lcm divides its lcm. Among equal lcms one representative
    // survives, a coprime one if present (the product criterion then removes
    // the whole class).
    auto better = [&](std::size_t b, std::size_t a) {
      if (cands[b].coprime != cands[a].coprime) return cands[b].coprime;
      return b < a;
    };
    std::vector<bool> keep(cands.size(), true);
    for (std::size_t a = 0; a < cands.size(); ++a) {
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || !cands[b].lcm.divides(cands[a].lcm)) continue;
        if (!(cands[b].lcm == cands[a].lcm) || better(b, a)) {
          keep[a] = false;
          break;
        }
      }
    }
    // Old pairs (i, j) whose lcm is divisible by LT(h) strictly.
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (const auto& p : pairs_) {
      if (lt_h.divides(p.lcm)) {
        Monomial li = polys_[static_cast<std::size_t>(p.i)].lead_mono().lcm(lt_h);
        Monomial lj = polys_[static_cast<std::size_t>(p.j)].lead_mono().lcm(lt_h);
        if (!(li == p.lcm) && !(lj == p.lcm)) {
          ++stats_.pairs_skipped;
          continue;
        }
      }
      kept.push_back(p);
    }
    pairs_ = std::move(kept);
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (!keep[a]) {
        ++stats_.pairs_skipped;
        continue;
      }
      if (cands[a].coprime) {
        ++stats_.pairs_skipped;
        continue;
      }
      pairs_.push_back({cands[a].g, t, cands[a].lcm, pair_sugar(cands[a].g, t, cands[a].lcm)});
    }
    // Retire generators whose leading monomial is now redundant.
    for (int g = 0; g < t; ++g) {
      if (active_[static_cast<std::size_t>(g)] && lt_h.divides(polys_[static_cast<std::size_t>(g)].lead_mono())) {
        active_[static_cast<std::size_t>(g)] = false;
      }
    }
  }

  GroebnerBasis<C> unit_basis() const {
    GroebnerBasis<C> gb;
    gb.order = order_;
    gb.num_vars = num_vars_;
    gb.gens.push_back(Poly<C>::constant(CoeffTraits<C>::one()));
    return gb;
  }

  GroebnerBasis<C> finish() {
    std::vector<Poly<C>> minimal;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) minimal.push_back(polys_[k]);
    }
    std::sort(minimal.begin(), minimal.end(),
              [&](const Poly<C>& a, const Poly<C>& b) { return order_.greater(b.lead_mono(), a.lead_mono()); });
    // Inter-reduce: tails against every other generator.
    std::vector<Poly<C>> reduced;
    reduced.reserve(minimal.size());
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<detail::Reducer<C>> others;
      for (std::size_t o = 0; o < minimal.size(); ++o) {
        if (o != k) others.push_back({&minimal[o], minimal[o].lead_mono()});
      }
      std::vector<Term<C>> tail(minimal[k].terms().begin() + 1, minimal[k].terms().end());
      Poly<C> rest = detail::reduce_full(Poly<C>::from_sorted(std::move(tail)), others, order_);
      std::vector<Term<C>> terms;
      terms.reserve(rest.size() + 1);
      terms.push_back(minimal[k].lead());
      for (const auto& t : rest.terms()) terms.push_back(t);
      reduced.push_back(Poly<C>::from_sorted(std::move(terms)));
    }
    GroebnerBasis<C> gb;
    gb.order = order_;
    gb.num_vars = num_vars_;
    gb.gens = std::move(reduced);
    return gb;
  }

  TermOrder order_;
  int num_vars_;
  std::vector<Poly<C>> polys_;
  std::vector<int> sugar_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  BuchbergerStats stats_;
};

/// Reduced Groebner basis of the ideal generated by `gens`.
template <class C>
GroebnerBasis<C> buchberger(std::vector<Poly<C>> gens, const TermOrder& order, int num_vars) {
  BuchbergerEngine<C> engine(order, num_vars);
  return engine.run(std::move(gens));
}

/// Checks both reduced-basis axioms directly: every S-polynomial reduces to
/// zero, generators are monic and no term of a generator is divisible by
/// another generator's leading monomial.
template <class C>
bool verify_reduced_basis(const GroebnerBasis<C>& gb) {
  const auto& g = gb.gens;
  for (const auto& p : g) {
    if (p.is_zero() || !CoeffTraits<C>::is_one(p.lead_coeff())) return false;
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : g[i].terms()) {
        if (g[j].lead_mono().divides(t.mono)) return false;
      }
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      Poly<C> s = s_polynomial(g[i], g[j], gb.order);
      if (!normal_form<C>(s, g, gb.order).is_zero()) return false;
    }
  }
  return true;
}

template <class C>
bool is_zero_dimensional(const GroebnerBasis<C>& gb) {
  if (gb.is_unit()) return true;
  for (int v = 0; v < gb.num_vars; ++v) {
    bool found = false;
    for (const auto& p : gb.gens) {
      if (p.lead_mono().support() == (1u << v)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Monomials outside the leading-term ideal, ascending in the basis order.
template <class C>
Staircase staircase(const GroebnerBasis<C>& gb) {
  Staircase out;
  if (gb.is_unit()) {
    out.multiplicity = 0;
    return out;
  }
  if (!is_zero_dimensional(gb)) return out;
  std::vector<int> bound(static_cast<std::size_t>(gb.num_vars), 0);
  for (const auto& p : gb.gens) {
    const Monomial& m = p.lead_mono();
    for (int v = 0; v < gb.num_vars; ++v) {
      if (m.support() == (1u << v)) bound[static_cast<std::size_t>(v)] = m[v];
    }
  }
  // Enumerate the box below the pure powers and keep the standard monomials.
  std::vector<int> e(static_cast<std::size_t>(gb.num_vars), 0);
  while (true) {
    Monomial m(e);
    bool standard = true;
    for (const auto& p : gb.gens) {
      if (p.lead_mono().divides(m)) {
        standard = false;
        break;
      }
    }
    if (standard) out.monomials.push_back(m);
    int v = 0;
    while (v < gb.num_vars) {
      if (++e[static_cast<std::size_t>(v)] < bound[static_cast<std::size_t>(v)]) break;
      e[static_cast<std::size_t>(v)] = 0;
      ++v;
    }
    if (v == gb.num_vars) break;
  }
  std::sort(out.monomials.begin(), out.monomials.end(),
            [&](const Monomial& a, const Monomial& b) { return gb.order.greater(b, a); });
  out.multiplicity = static_cast<long>(out.monomials.size());
  return out;
}

/// Change of ordering for a zero-dimensional reduced basis (Faugere, Gianni,
/// Lazard, Mora). Linear algebra happens on normal forms over the source
/// staircase; the result is the reduced basis for `target`.
template <class C>
GroebnerBasis<C> fglm(const GroebnerBasis<C>& gb, const TermOrder& target) {
  using Traits = CoeffTraits<C>;
  GroebnerBasis<C> out;
  out.order = target;
  out.num_vars = gb.num_vars;
  if (gb.is_unit()) {
    out.gens.push_back(Poly<C>::constant(Traits::one()));
    return out;
  }
  const Staircase source = staircase(gb);
  if (!source.finite()) throw Error(ErrorCode::kNotZeroDim, "change of ordering needs a zero-dimensional ideal");
  const std::size_t mu = source.monomials.size();
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t k = 0; k < mu; ++k) index.emplace(source.monomials[k], k);

  auto to_vector = [&](const Poly<C>& nf) {
    std::vector<C> v(mu, Traits::zero());
    for (const auto& t : nf.terms()) v[index.at(t.mono)] = t.coeff;
    return v;
  };

  struct Row {
    std::size_t pivot;
    std::vector<C> vec;
    std::vector<C> combo;  // coefficients on the new staircase
  };
  std::vector<Row> rows;
  std::vector<Monomial> new_stairs;
  std::vector<Poly<C>> new_stairs_nf;  // NF in the source order
  std::vector<Monomial> leads;
  std::vector<Monomial> candidates{Monomial()};
  std::vector<Poly<C>> candidate_nf{Poly<C>::constant(Traits::one())};

  auto divisible_by_lead = [&](const Monomial& m) {
    for (const auto& l : leads) {
      if (l.divides(m)) return true;
    }
    return false;
  };

  while (!candidates.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < candidates.size(); ++k) {
      if (target.compare(candidates[k], candidates[best]) < 0) best = k;
    }
    const Monomial m = candidates[best];
    const Poly<C> nf = candidate_nf[best];
    candidates.erase(candidates.begin() + static_cast<long>(best));
    candidate_nf.erase(candidate_nf.begin() + static_cast<long>(best));
    if (divisible_by_lead(m)) continue;
    bool seen = false;
    for (const auto& s : new_stairs) seen = seen || s == m;
    if (seen) continue;

    std::vector<C> v = to_vector(nf);
    std::vector<C> combo(new_stairs.size() + 1, Traits::zero());
    combo.back() = Traits::one();
    for (const auto& row : rows) {
      if (Traits::is_zero(v[row.pivot])) continue;
      C c = v[row.pivot] / row.vec[row.pivot];
      for (std::size_t k = 0; k < mu; ++k) {
        if (!Traits::is_zero(row.vec[k])) v[k] -= c * row.vec[k];
      }
      for (std::size_t k = 0; k < row.combo.size(); ++k) {
        if (!Traits::is_zero(row.combo[k])) combo[k] -= c * row.combo[k];
      }
    }
    std::size_t pivot = mu;
    for (std::size_t k = 0; k < mu; ++k) {
      if (!Traits::is_zero(v[k])) {
        pivot = k;
        break;
      }
    }
    if (pivot == mu) {
      // m + sum combo_k * s_k lies in the ideal.
      std::vector<Term<C>> terms{{m, Traits::one()}};
      for (std::size_t k = 0; k + 1 < combo.size(); ++k) {
        if (!Traits::is_zero(combo[k])) terms.push_back({new_stairs[k], combo[k]});
      }
      out.gens.push_back(Poly<C>::from_terms(std::move(terms), target));
      leads.push_back(m);
      continue;
    }
    rows.push_back({pivot, std::move(v), std::move(combo)});
    new_stairs.push_back(m);
    new_stairs_nf.push_back(nf);
    for (int var = 0; var < gb.num_vars; ++var) {
      Monomial next = m * Monomial::variable(var);
      if (divisible_by_lead(next)) continue;
      Poly<C> shifted = nf.times_term(Monomial::variable(var), Traits::one());
      shifted.sort(gb.order);
      candidates.push_back(next);
      candidate_nf.push_back(normal_form<C>(shifted, gb.gens, gb.order));
    }
  }
  std::sort(out.gens.begin(), out.gens.end(),
            [&](const Poly<C>& a, const Poly<C>& b) { return target.greater(b.lead_mono(), a.lead_mono()); });
  return out;
}

}  // namespace stablci
