#include <functional>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "stablci/ideal.hpp"

using namespace stablci;
using testutil::P;

namespace {

std::vector<Poly<Rational>> raw(const PolySystem& sys, const TermOrder& order) {
  std::vector<Poly<Rational>> out;
  for (const auto& p : sys) out.push_back(resorted(p.raw(), order));
  return out;
}

/// Rank over Q of a list of polynomials viewed as coefficient vectors.
int rank_of(std::vector<Poly<Rational>> rows, const TermOrder& order) {
  int rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].is_zero()) continue;
    ++rank;
    const Poly<Rational> pivot = rows[i];
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      for (const auto& t : rows[j].terms()) {
        if (t.mono == pivot.lead_mono()) {
          Rational c = -t.coeff / pivot.lead_coeff();
          rows[j] = axpy(rows[j], c, Monomial(), pivot, order);
          break;
        }
      }
    }
    // Keep rows sorted so the next pivot has a fresh leading monomial.
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      for (std::size_t k = j + 1; k < rows.size(); ++k) {
        if (!rows[k].is_zero() && (rows[j].is_zero() || order.greater(rows[k].lead_mono(), rows[j].lead_mono()))) {
          std::swap(rows[j], rows[k]);
        }
      }
    }
  }
  return rank;
}

/// dim_Q span{NF(m) : deg m <= bound}, which equals mu once bound exceeds
/// the staircase.
int brute_force_mu(const GroebnerBasis<Rational>& gb, int bound) {
  std::vector<Poly<Rational>> nfs;
  std::vector<int> e(static_cast<std::size_t>(gb.num_vars), 0);
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == gb.num_vars) {
      Poly<Rational> m = Poly<Rational>::monomial(Monomial(e), Rational(1));
      nfs.push_back(normal_form<Rational>(m, gb.gens, gb.order));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[static_cast<std::size_t>(v)] = k;
      rec(v + 1, left - k);
    }
    e[static_cast<std::size_t>(v)] = 0;
  };
  rec(0, bound);
  std::sort(nfs.begin(), nfs.end(), [&](const auto& a, const auto& b) {
    if (b.is_zero()) return !a.is_zero();
    if (a.is_zero()) return false;
    return gb.order.greater(a.lead_mono(), b.lead_mono());
  });
  return rank_of(nfs, gb.order);
}

}  // namespace

TEST_CASE("normal_form") {
  auto r = make_ring({}, {"x"});
  const auto order = TermOrder::degrevlex();
  auto nf = normal_form<Rational>(P("x^2", r).raw(), raw({P("x^2-1", r)}, order), order);
  CHECK(nf == P("1", r).raw());

  auto r2 = make_ring({}, {"x", "y"});
  const auto lex = TermOrder::lex();
  PolySystem sys{P("x*y+1", r2), P("x^2+y^2-5", r2)};
  auto gb = groebner_rational(sys, lex);
  auto y3 = resorted(P("y^3", r2).raw(), lex);
  auto once = normal_form<Rational>(y3, gb.gens, lex);
  auto twice = normal_form<Rational>(once, gb.gens, lex);
  CHECK(once == twice);
  for (const auto& t : once.terms()) {
    for (const auto& g : gb.gens) CHECK_FALSE(g.lead_mono().divides(t.mono));
  }
  // Ideal members reduce to zero.
  auto member = mul(resorted((P("x^3-y", r2) * sys[0] + P("7", r2) * sys[1]).raw(), lex), Poly<Rational>::constant(1), lex);
  CHECK(normal_form<Rational>(member, gb.gens, lex).is_zero());
}

TEST_CASE("buchberger: small lex example") {
  auto r = make_ring({}, {"y", "x"});
  const auto lex = TermOrder::lex();
  PolySystem sys{P("x^2-1", r), P("y-x", r)};
  auto gb = groebner_rational(sys, lex);
  REQUIRE(gb.gens.size() == 2);
  CHECK(gb.gens[0] == resorted(P("x^2-1", r).raw(), lex));
  CHECK(gb.gens[1] == resorted(P("y-x", r).raw(), lex));
  CHECK(verify_reduced_basis(gb));
  // Idempotence: feeding a reduced basis back returns it.
  auto again = buchberger(gb.gens, lex, 2);
  CHECK(again.gens == gb.gens);
  // Scaled input gives the same monic basis.
  PolySystem scaled{P("3*x^2-3", r), P("-2*y+2*x", r)};
  CHECK(groebner_rational(scaled, lex).gens == gb.gens);
}

TEST_CASE("buchberger over Q(a): multiplicity four family") {
  auto ring = make_ring({"a1", "a2", "a3", "a4", "a5"}, {"x", "y"});
  PolySystem sys{P("a1*x*y + a2", ring), P("a3*x^2 + a4*y^2 + a5", ring)};
  const auto order = TermOrder::degrevlex();
  auto gb = groebner_parametric(sys, order);
  CHECK(verify_reduced_basis(gb));
  auto pr = params_ring(*ring);
  auto pq = [&](const std::string& n, const std::string& d) {
    return ParamRational(P(n, pr).raw(), P(d, pr).raw());
  };
  auto ur = make_ring({}, {"x", "y"});
  auto mono = [&](const std::string& m) { return P(m, ur).raw().lead_mono(); };
  std::vector<ParamPoly> expected{
      ParamPoly::from_terms({{mono("x*y"), ParamRational(Rational(1))}, {Monomial(), pq("a2", "a1")}}, order),
      ParamPoly::from_terms({{mono("x^2"), ParamRational(Rational(1))},
                             {mono("y^2"), pq("a4", "a3")},
                             {Monomial(), pq("a5", "a3")}},
                            order),
      ParamPoly::from_terms({{mono("y^3"), ParamRational(Rational(1))},
                             {mono("x"), pq("-a2*a3", "a1*a4")},
                             {mono("y"), pq("a5", "a4")}},
                            order),
  };
  REQUIRE(gb.gens.size() == 3);
  for (const auto& e : expected) {
    bool found = false;
    for (const auto& g : gb.gens) found = found || g == e;
    CHECK(found);
  }
  auto st = staircase(gb);
  REQUIRE(st.finite());
  CHECK(*st.multiplicity == 4);
  auto text = format_basis(gb, *ring);
  CHECK(text[2] == "y^3 - a2*a3/(a1*a4)*x + a5/a4*y");
}

TEST_CASE("staircase and zero-dimensionality") {
  auto r = make_ring({}, {"x", "y"});
  const auto order = TermOrder::degrevlex();
  auto gb1 = groebner_rational(PolySystem{P("x", r), P("y", r)}, order);
  auto s1 = staircase(gb1);
  REQUIRE(s1.finite());
  CHECK(*s1.multiplicity == 1);
  CHECK(s1.monomials.front().is_one());

  auto gb2 = groebner_rational(PolySystem{P("x^2", r)}, order);
  CHECK_FALSE(staircase(gb2).finite());
  CHECK_FALSE(is_zero_dimensional(gb2));

  auto gb3 = groebner_rational(PolySystem{P("x*y-6", r), P("x^2+y^2-13", r)}, order);
  CHECK(is_zero_dimensional(gb3));
  CHECK(*staircase(gb3).multiplicity == 4);

  CHECK_FALSE(is_zero_dimensional(groebner_rational(PolySystem{P("x", r)}, order)));

  auto unit = groebner_rational(PolySystem{P("x", r), P("x-1", r)}, order);
  CHECK(unit.is_unit());
  CHECK(is_zero_dimensional(unit));
  CHECK(*staircase(unit).multiplicity == 0);
}

TEST_CASE("elimination ideals") {
  auto fam = make_ring({"a1", "a2"}, {"x1", "x2"});
  PolySystem j1{P("x1^2+a1*x2^2-1", fam), P("x2^2+a2*x1", fam), P("-2*a1*a2*x2 + 4*x1*x2", fam)};
  std::vector<int> drop{2, 3};
  auto h1 = elimination_ideal(j1, drop);
  REQUIRE(h1.size() == 1);
  CHECK(testutil::proportional(h1[0], P("a1^2*a2^3 + 4*a2", fam)));

  PolySystem j2{P("x1^2-a1*x2^2", fam), P("x2^2+a2*x1", fam), P("2*a1*a2*x2 + 4*x1*x2", fam)};
  CHECK(elimination_ideal(j2, drop).empty());

  auto rr = make_ring({"a1", "a2"}, {"x", "y"});
  PolySystem j3{P("x*y+a1*x+1", rr), P("x^2+y^2+a2", rr), P("-2*x^2+2*y^2+2*a1*y", rr)};
  auto h3 = elimination_ideal(j3, drop);
  REQUIRE(h3.size() == 1);
  CHECK(testutil::proportional(
      h3[0], P("a1^6*a2 + 3*a1^4*a2^2 + a1^4 + 3*a1^2*a2^3 + 20*a1^2*a2 + a2^4 - 8*a2^2 + 16", rr)));
  // Every eliminant lies in the ideal and avoids the dropped variables.
  auto gb = groebner_rational(j3, TermOrder::degrevlex());
  for (const auto& h : h3) {
    CHECK((h.raw().support() & 0b1100u) == 0u);
    CHECK(normal_form<Rational>(h.raw(), gb.gens, gb.order).is_zero());
  }
}

TEST_CASE("property: random systems give verified reduced bases") {
  std::mt19937_64 rng(2024);
  const TermOrder orders[] = {TermOrder::lex(), TermOrder::degrevlex(), TermOrder::block_elim(1)};
  auto r = make_ring({}, {"x", "y", "z"});
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    PolySystem sys;
    for (int k = 0; k < 3; ++k) sys.push_back(testutil::random_poly(rng, r, 3, 2) + P(k == 0 ? "x^2" : (k == 1 ? "y^2" : "z^2"), r));
    for (const auto& order : orders) {
      auto gb = groebner_rational(sys, order);
      CHECK(verify_reduced_basis(gb));
      for (const auto& f : sys) CHECK(normal_form<Rational>(resorted(f.raw(), order), gb.gens, order).is_zero());
      ++checked;
    }
  }
  CHECK(checked == 90);
}

TEST_CASE("property: staircase size matches linear algebra count") {
  std::mt19937_64 rng(77);
  auto r = make_ring({}, {"x", "y"});
  int compared = 0;
  for (int trial = 0; trial < 40 && compared < 15; ++trial) {
    PolySystem sys{testutil::random_poly(rng, r, 3, 1) + P("x^2", r), testutil::random_poly(rng, r, 3, 2) + P("y^2", r)};
    auto gb = groebner_rational(sys, TermOrder::degrevlex());
    auto st = staircase(gb);
    if (!st.finite() || *st.multiplicity > 10) continue;
    CHECK(brute_force_mu(gb, 12) == *st.multiplicity);
    ++compared;
  }
  CHECK(compared >= 10);
}

TEST_CASE("inputs whose leading terms divide each other are interreduced") {
  auto r = make_ring({}, {"y", "x"});
  PolySystem sys{P("x^3 - y", r), P("x^5 + x - 2", r)};
  auto gb = groebner_rational(sys, TermOrder::degrevlex());
  CHECK(verify_reduced_basis(gb));
  CHECK(staircase(gb).multiplicity == 5);
}

TEST_CASE("FGLM conversion agrees with Buchberger in the target order") {
  std::mt19937_64 rng(91);
  auto r = make_ring({}, {"x", "y", "z"});
  const TermOrder targets[] = {TermOrder::lex(), TermOrder::block_elim(1), TermOrder::block_elim(2)};
  for (int trial = 0; trial < 10; ++trial) {
    PolySystem sys{testutil::random_poly(rng, r, 3, 1) + P("x^2", r), testutil::random_poly(rng, r, 3, 1) + P("y^2", r),
                   testutil::random_poly(rng, r, 3, 1) + P("z^2", r)};
    auto drl = buchberger(raw(sys, TermOrder::degrevlex()), TermOrder::degrevlex(), 3);
    REQUIRE(is_zero_dimensional(drl));
    for (const auto& order : targets) {
      auto direct = buchberger(raw(sys, order), order, 3);
      auto converted = fglm(drl, order);
      REQUIRE(direct.gens.size() == converted.gens.size());
      for (std::size_t i = 0; i < direct.gens.size(); ++i) CHECK(direct.gens[i] == converted.gens[i]);
    }
  }
}
