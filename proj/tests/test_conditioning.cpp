#include <cmath>
#include <optional>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "stablci/conditioning.hpp"
#include "stablci/family.hpp"

using namespace stablci;
using testutil::load;
using testutil::P;
using testutil::Q;

namespace {

constexpr Norm kNorms[] = {Norm::kOne, Norm::kTwo, Norm::kInf};

struct Seeded {
  PolySystem f;
  FloatVector p;
  Family fam;
};

Seeded seeded(const std::string& name) {
  auto file = load(name);
  auto fam = Family::from_file(file);
  return {specialize_fiber(fam, *fam.base_point), to_float_vector(file.roots.at(0)), fam};
}

// ε(α) = F(α) − F(α_I), the perturbation carried by a family.
PolySystem family_eps(const Seeded& s, const Rational& alpha) {
  PolySystem moved = specialize_fiber(s.fam, std::vector<Rational>{alpha});
  PolySystem out;
  for (std::size_t i = 0; i < moved.size(); ++i) out.push_back(moved[i] - s.f[i]);
  return out;
}

PolySystem zeros_like(const PolySystem& f) {
  PolySystem out;
  for (const auto& g : f) out.push_back(ExactPoly(g.ring()));
  return out;
}

template <class Fn>
std::optional<ErrorCode> code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

struct LinearCase {
  FloatMatrix a, da;
  FloatVector b, db;
  PerturbationSetup setup;
};

// f = A x − b and ε = ΔA x − Δb over three unknowns.
LinearCase random_linear(std::mt19937_64& rng, Norm norm, bool scalar_da) {
  static RingPtr ring = make_ring({}, {"x", "y", "z"});
  std::uniform_int_distribution<int> big(-9, 9);
  std::uniform_int_distribution<int> small(-5, 5);
  for (;;) {
    std::vector<std::vector<Rational>> a(3, std::vector<Rational>(3)), da(3, std::vector<Rational>(3));
    std::vector<Rational> b(3), db(3);
    const Rational c(small(rng), 1000);
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        a[i][k] = big(rng);
        da[i][k] = scalar_da ? (i == k ? c : Rational(0)) : Rational(small(rng), 1000);
      }
      b[i] = big(rng);
      db[i] = Rational(small(rng), 1000);
    }
    LinearCase out;
    out.a = FloatMatrix(3, 3);
    out.da = FloatMatrix(3, 3);
    out.b = FloatVector(3);
    out.db = FloatVector(3);
    PolySystem f, eps;
    for (int i = 0; i < 3; ++i) {
      ExactPoly fi = ExactPoly::constant(ring, -b[i]);
      ExactPoly ei = ExactPoly::constant(ring, -db[i]);
      for (int k = 0; k < 3; ++k) {
        fi = fi + a[i][k] * ExactPoly::variable(ring, ring->unknown_var(k));
        ei = ei + da[i][k] * ExactPoly::variable(ring, ring->unknown_var(k));
        out.a(i, k) = to_double(a[i][k]);
        out.da(i, k) = to_double(da[i][k]);
      }
      out.b[i] = to_double(b[i]);
      out.db[i] = to_double(db[i]);
      f.push_back(fi);
      eps.push_back(ei);
    }
    if (vector_norm(out.b, Norm::kInf) == 0.0) continue;
    FloatMatrix inv;
    try {
      inv = matrix_inverse(out.a);
    } catch (const Error&) {
      continue;
    }
    if (matrix_norm(inv, norm) * matrix_norm(out.da, norm) >= 0.9) continue;
    out.setup = PerturbationSetup{f, eps, lu_solve(out.a, out.b), norm};
    return out;
  }
}

}  // namespace

TEST_CASE("local condition number of the seeded systems") {
  auto ex1 = seeded("ex1_f.sys");
  CHECK(std::abs(local_condition_number(ex1.f, ex1.p, Norm::kTwo) - 8.0) <= 1e-9);
  auto ex2 = seeded("ex2_f.sys");
  CHECK(std::abs(local_condition_number(ex2.f, ex2.p, Norm::kTwo) - 123.0) <= 1e-9);
  // The recombined systems have an orthonormal Jacobian at the root.
  for (const char* name : {"ex1_g.sys", "ex2_g.sys"}) {
    auto g = seeded(name);
    CHECK(std::abs(local_condition_number(g.f, g.p, Norm::kTwo) - 1.0) <= 1e-9);
  }
}

TEST_CASE("orthonormal Jacobian gives kappa one and kappa is at least one") {
  auto ring = make_ring({}, {"x", "y"});
  PolySystem rot{P("3/5*x + 4/5*y - 1", ring), P("-4/5*x + 3/5*y", ring)};
  CHECK(std::abs(local_condition_number(rot, FloatVector{0.6, 0.8}, Norm::kTwo) - 1.0) <= 1e-12);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    PolySystem f{testutil::random_poly(rng, ring, 4, 2), testutil::random_poly(rng, ring, 4, 2)};
    FloatVector p{0.3 * trial - 5.0, 1.5};
    for (Norm n : kNorms) {
      double kappa = 0.0;
      try {
        kappa = local_condition_number(f, p, n);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kSingular);
        continue;
      }
      CHECK(kappa >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("admissibility norm check") {
  auto file = load("singular_jacobian.sys");
  const auto& ring = file.ring;
  const FloatVector p4{2, 3};
  for (double d2 : {-0.7, -0.2, 0.1, 0.5, 0.59, 0.6, 1.25}) {
    const Rational delta2 = best_rational(d2, Integer(1000));
    PolySystem eps{P("3", ring), delta2 * P("y^2", ring)};
    auto adm = admissibility_norm_check({file.system, eps, p4, Norm::kTwo});
    CHECK(adm.tau * adm.tau == doctest::Approx(117.0 / 25.0 * d2 * d2).epsilon(1e-12));
    CHECK(adm.ok == (std::abs(d2) < 5.0 / 39.0 * std::sqrt(13.0)));
  }
  auto zero = admissibility_norm_check({file.system, zeros_like(file.system), p4, Norm::kTwo});
  CHECK(zero.tau == 0.0);
  CHECK(zero.ok);

  auto ex1f = seeded("ex1_f.sys");
  auto ex1g = seeded("ex1_g.sys");
  for (const char* text : {"1/100", "-1/50", "3/1000", "-1/9"}) {
    const Rational alpha = Q(text);
    const double a = std::abs(to_double(alpha));
    CHECK(admissibility_norm_check({ex1f.f, family_eps(ex1f, alpha), ex1f.p}).tau ==
          doctest::Approx(std::sqrt(65.0) * a).epsilon(1e-12));
    CHECK(admissibility_norm_check({ex1g.f, family_eps(ex1g, alpha), ex1g.p}).tau ==
          doctest::Approx(std::sqrt(2.0) * a).epsilon(1e-12));
  }

  CHECK(code_of([&] { admissibility_norm_check({file.system, file.eps, FloatVector{2.5, 3}}); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("first order displacement") {
  auto file = load("singular_jacobian.sys");
  const FloatVector p4{2, 3};
  auto none = first_order_displacement({file.system, zeros_like(file.system), p4});
  CHECK(vector_norm(none, Norm::kInf) == 0.0);

  // ε = {2, 5/4 y²} at (2, 3): the perturbed root is (2, 2).
  PerturbationSetup s{file.system, file.eps, p4};
  auto d1 = first_order_displacement(s);
  PolySystem total{file.system[0] + file.eps[0], file.system[1] + file.eps[1]};
  auto q = newton_refine(total, p4);
  CHECK(std::abs(q[0] - 2.0) < 1e-10);
  CHECK(std::abs(q[1] - 2.0) < 1e-10);
  const double first = vector_norm(d1, Norm::kTwo);
  const double truth = vector_norm(q - p4, Norm::kTwo);
  CHECK(std::isfinite(first));
  CHECK(first / truth > 0.1);
  CHECK(first / truth < 10.0);

  // Linear f = A x − b with ε = −Δb: Δp¹ = A⁻¹ Δb.
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    auto lc = random_linear(rng, Norm::kTwo, true);
    PolySystem eps;
    for (std::size_t i = 0; i < 3; ++i) eps.push_back(ExactPoly::constant(lc.setup.f[i].ring(), -best_rational(lc.db[i], Integer(1000))));
    auto got = first_order_displacement({lc.setup.f, eps, lc.setup.p});
    CHECK(vector_norm(got - lu_solve(lc.a, lc.db), Norm::kInf) < 1e-12);
  }
}

TEST_CASE("displacement bound") {
  auto file = load("singular_jacobian.sys");
  const auto& ring = file.ring;
  const FloatVector p4{2, 3};
  CHECK(displacement_bound({file.system, zeros_like(file.system), p4}) == 0.0);
  CHECK(code_of([&] { displacement_bound({file.system, file.eps, p4}); }) == ErrorCode::kInadmissible);

  PolySystem eps{P("1/10", ring), P("1/20*y^2 - 1/5", ring)};
  double previous = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const Rational t(k, 10);
    PolySystem scaled{t * eps[0], t * eps[1]};
    PerturbationSetup s{file.system, scaled, p4};
    const double bound = displacement_bound(s);
    CHECK(bound >= previous);
    CHECK(bound + 1e-9 >= vector_norm(first_order_displacement(s), Norm::kTwo));
    previous = bound;
  }
}

TEST_CASE("relative error bound") {
  auto file = load("singular_jacobian.sys");
  const FloatVector p4{2, 3};
  CHECK(relative_error_bound({file.system, zeros_like(file.system), p4}) == 0.0);
  CHECK(code_of([&] { relative_error_bound({file.system, file.eps, p4}); }) == ErrorCode::kInadmissible);

  auto ring = make_ring({}, {"x", "y"});
  PolySystem at_origin{P("x + y^2", ring), P("y - x^2", ring)};
  PolySystem tiny{P("1/100", ring), P("1/100*x", ring)};
  CHECK(code_of([&] { relative_error_bound({at_origin, tiny, FloatVector{0, 0}}); }) == ErrorCode::kOriginRoot);
  // Translating the root away from the origin makes the bound available.
  const std::vector<Rational> shift{Q("-1"), Q("2")};
  auto moved = translate_system(at_origin, shift);
  auto moved_eps = translate_system(tiny, shift);
  CHECK(relative_error_bound({moved, moved_eps, FloatVector{1, -2}}) > 0.0);
}

TEST_CASE("linear case reproduces the classical bound") {
  std::mt19937_64 rng(33);
  for (Norm n : kNorms) {
    for (int trial = 0; trial < 40; ++trial) {
      auto lc = random_linear(rng, n, trial % 4 == 0);
      const FloatMatrix inv = matrix_inverse(lc.a);
      const double kappa = matrix_norm(inv, n) * matrix_norm(lc.a, n);
      const double rel = matrix_norm(lc.da, n) / matrix_norm(lc.a, n) + vector_norm(lc.db, n) / vector_norm(lc.b, n);
      const double with_tau = kappa / (1.0 - matrix_norm(inv * lc.da, n)) * rel;
      const double classical = kappa / (1.0 - matrix_norm(inv, n) * matrix_norm(lc.da, n)) * rel;
      const double ub1 = relative_error_bound(lc.setup);
      CHECK(std::abs(ub1 - with_tau) <= 1e-12 * with_tau);
      CHECK(ub1 <= classical * (1.0 + 1e-12));
      // For ΔA = cI both forms of the denominator agree.
      if (trial % 4 == 0) CHECK(std::abs(ub1 - classical) <= 1e-12 * classical);
    }
  }
}

TEST_CASE("kappa is invariant under global scaling and translation") {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<int> num(-1000, 1000);
  std::uniform_int_distribution<int> den(1, 97);
  for (const char* name : {"ex1_f.sys", "ex2_f.sys", "ex1_g.sys"}) {
    auto s = seeded(name);
    for (Norm n : kNorms) {
      const double kappa = local_condition_number(s.f, s.p, n);
      for (int trial = 0; trial < 50; ++trial) {
        Rational gamma(num(rng), den(rng));
        if (gamma == 0) gamma = 1;
        gamma.canonicalize();
        PolySystem scaled;
        for (const auto& g : s.f) scaled.push_back(gamma * g);
        CHECK(std::abs(local_condition_number(scaled, s.p, n) - kappa) <= 1e-9 * kappa);
      }
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<Rational> shift;
        for (std::size_t i = 0; i < s.p.size(); ++i) {
          Rational t(num(rng), den(rng));
          t.canonicalize();
          shift.push_back(t);
        }
        auto moved = translate_system(s.f, shift);
        CHECK(std::abs(local_condition_number(moved, s.p - to_float_vector(shift), n) - kappa) <= 1e-9 * kappa);
      }
    }
  }
}

TEST_CASE("first-order bound never exceeds the relative bound") {
  std::mt19937_64 rng(35);
  std::uniform_int_distribution<int> num(-100, 100);
  int checked = 0;
  for (const char* name : {"ex1_f.sys", "ex1_g.sys", "ex2_f.sys", "ex2_g.sys"}) {
    auto s = seeded(name);
    for (int trial = 0; trial < 15; ++trial) {
      const Rational alpha(num(rng), 10000);
      for (Norm n : kNorms) {
        PerturbationSetup setup{s.f, family_eps(s, alpha), s.p, n};
        if (!admissibility_norm_check(setup).ok) continue;
        ++checked;
        const double norm_p = vector_norm(s.p, n);
        const double bound = displacement_bound(setup);
        const double ub1 = relative_error_bound(setup);
        CHECK(bound <= ub1 * norm_p + 1e-9);
        CHECK(vector_norm(first_order_displacement(setup), n) / norm_p <= ub1 + 1e-9);
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("condition report") {
  auto s = seeded("ex1_f.sys");
  PerturbationSetup setup{s.f, family_eps(s, Q("1/200")), s.p};
  auto r = condition_report(setup);
  CHECK(r.kappa == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(r.tau == doctest::Approx(std::sqrt(65.0) / 200).epsilon(1e-12));
  CHECK(r.lambda == doctest::Approx(1.0 / (1.0 - r.tau)));
  CHECK(r.lambda >= 1.0);
  CHECK(r.ub1 == doctest::Approx(relative_error_bound(setup)));
  CHECK(r.norm == Norm::kTwo);
  REQUIRE(r.true_relerr.has_value());
  CHECK(*r.true_relerr > 0.0);
  CHECK(r.first_order_relerr <= r.ub1 + 1e-9);
}

TEST_CASE("translate_system") {
  auto ring = make_ring({"a"}, {"x", "y"});
  auto f = P("a*x^2*y - 3*y + a", ring);
  auto moved = translate_system(PolySystem{f}, std::vector<Rational>{Q("1"), Q("-2")});
  CHECK(moved[0] == P("a*(x + 1)^2*(y - 2) - 3*(y - 2) + a", ring));
  CHECK(code_of([&] { translate_system(PolySystem{f}, std::vector<Rational>{Q("1")}); }) == ErrorCode::kArityMismatch);
}
