#pragma once

#include <random>
#include <string>
#include <vector>

#include "stablci/error.hpp"
#include "stablci/polycore.hpp"
#include "stablci/system_file.hpp"

namespace testutil {

using namespace stablci;

inline ExactPoly P(const std::string& text, const RingPtr& ring) { return parse_poly(text, ring); }

inline Rational Q(const std::string& text) { return *parse_rational(text); }

inline SystemFile load(const std::string& name) { return load_system_file(std::string(STABLCI_DATA_DIR) + "/" + name); }

/// a = c * b for some rational c > 0.
inline bool positively_proportional(const ExactPoly& a, const ExactPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  Rational c = a.raw().lead_coeff() / b.raw().lead_coeff();
  return sgn(c) > 0 && a == c * b;
}

/// Same polynomial up to a nonzero rational factor.
inline bool proportional(const ExactPoly& a, const ExactPoly& b) { return canonical(a) == canonical(b); }

inline ExactPoly random_poly(std::mt19937_64& rng, const RingPtr& ring, int terms, int max_deg) {
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<int> exp(0, max_deg);
  ExactPoly acc(ring);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int budget = max_deg;
    for (int v = 0; v < ring->num_vars(); ++v) {
      int e = std::min(exp(rng), budget);
      budget -= e;
      m.set(v, e);
    }
    Rational c(coeff(rng), den(rng));
    c.canonicalize();
    acc = acc + ExactPoly(ring, QPoly::monomial(m, c));
  }
  return acc;
}

}  // namespace testutil
