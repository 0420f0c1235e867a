#pragma once

#include <algorithm>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stablci/monomial.hpp"
#include "stablci/rational.hpp"

namespace stablci {

/// Minimal field interface used by the generic polynomial and Groebner code.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static bool is_one(const Rational& c) { return c == 1; }
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
};

template <class C>
struct Term {
  Monomial mono;
  C coeff;
};

/// Sparse polynomial whose terms are kept sorted strictly descending under
/// some TermOrder chosen by the caller, with no zero coefficients. The order
/// is not stored; every operation that depends on it takes it explicitly.
template <class C>
class Poly {
 public:
  using Traits = CoeffTraits<C>;

  Poly() = default;

  static Poly constant(const C& c) {
    Poly p;
    if (!Traits::is_zero(c)) p.terms_.push_back({Monomial(), c});
    return p;
  }
  static Poly monomial(const Monomial& m, const C& c) {
    Poly p;
    if (!Traits::is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  /// Combines like terms, drops zeros and sorts.
  static Poly from_terms(std::vector<Term<C>> terms, const TermOrder& order) {
    std::unordered_map<Monomial, C, MonomialHash> acc;
    acc.reserve(terms.size());
    for (auto& t : terms) {
      auto [it, inserted] = acc.try_emplace(t.mono, t.coeff);
      if (!inserted) it->second += t.coeff;
    }
    Poly p;
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) {
      if (!Traits::is_zero(c)) p.terms_.push_back({m, std::move(c)});
    }
    p.sort(order);
    return p;
  }
  /// Trusts the caller: terms already sorted and nonzero.
  static Poly from_sorted(std::vector<Term<C>> terms) {
    Poly p;
    p.terms_ = std::move(terms);
    return p;
  }

  const std::vector<Term<C>>& terms() const { return terms_; }
  std::vector<Term<C>>& mutable_terms() { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  const Term<C>& lead() const { return terms_.front(); }
  const Monomial& lead_mono() const { return terms_.front().mono; }
  const C& lead_coeff() const { return terms_.front().coeff; }

  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }
  int degree_in(int var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
  }
  /// Bitmask of variables occurring in some term.
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (const auto& t : terms_) s |= t.mono.support();
    return s;
  }

  void sort(const TermOrder& order) {
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term<C>& a, const Term<C>& b) { return order.greater(a.mono, b.mono); });
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    }
    return true;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Poly scaled(const C& c) const {
    if (Traits::is_zero(c)) return {};
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// Multiplication by c * m; preserves the sort under any multiplicative order.
  Poly times_term(const Monomial& m, const C& c) const {
    if (Traits::is_zero(c)) return {};
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;
  }

 private:
  std::vector<Term<C>> terms_;
};

/// a + sign * c * m * b, merged in one pass. Used by reduction steps.
template <class C>
Poly<C> axpy(const Poly<C>& a, const C& c, const Monomial& m, const Poly<C>& b, const TermOrder& order) {
  using Traits = CoeffTraits<C>;
  std::vector<Term<C>> out;
  out.reserve(a.size() + b.size());
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size()) {
      out.push_back(ta[i++]);
      continue;
    }
    Monomial mb = tb[j].mono * m;
    int cmp = i == ta.size() ? -1 : order.compare(ta[i].mono, mb);
    if (cmp > 0) {
      out.push_back(ta[i++]);
    } else if (cmp < 0) {
      out.push_back({mb, c * tb[j].coeff});
      ++j;
    } else {
      C s = ta[i].coeff + c * tb[j].coeff;
      if (!Traits::is_zero(s)) out.push_back({mb, std::move(s)});
      ++i;
      ++j;
    }
  }
  return Poly<C>::from_sorted(std::move(out));
}

template <class C>
Poly<C> add(const Poly<C>& a, const Poly<C>& b, const TermOrder& order) {
  return axpy(a, CoeffTraits<C>::one(), Monomial(), b, order);
}

template <class C>
Poly<C> sub(const Poly<C>& a, const Poly<C>& b, const TermOrder& order) {
  return axpy(a, C(-CoeffTraits<C>::one()), Monomial(), b, order);
}

template <class C>
Poly<C> mul(const Poly<C>& a, const Poly<C>& b, const TermOrder& order) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b.times_term(a.lead_mono(), a.lead_coeff());
  if (b.size() == 1) return a.times_term(b.lead_mono(), b.lead_coeff());
  std::vector<Term<C>> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) terms.push_back({ta.mono * tb.mono, ta.coeff * tb.coeff});
  }
  return Poly<C>::from_terms(std::move(terms), order);
}

template <class C>
Poly<C> resorted(Poly<C> p, const TermOrder& order) {
  p.sort(order);
  return p;
}

}  // namespace stablci
