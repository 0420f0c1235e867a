#include "stablci/conditioning.hpp"

#include <limits>

#include "stablci/error.hpp"

namespace stablci {

namespace {

PolySystem sum_system(const PerturbationSetup& s) {
  PolySystem out;
  for (std::size_t i = 0; i < s.f.size(); ++i) out.push_back(s.f[i] + s.eps[i]);
  return out;
}

// g(p) − Jac_g(p) p, the value at the origin of the affine part of g at p.
FloatVector affine_part_at_origin(std::span<const ExactPoly> g, const FloatVector& p) {
  return eval_system(g, p) - eval_jacobian(g, p) * p;
}

double lambda_of(double tau) {
  if (!(tau < 1.0)) throw Error(ErrorCode::kInadmissible, "perturbation fails the norm criterion (tau >= 1)");
  return 1.0 / (1.0 - tau);
}

}  // namespace

void PerturbationSetup::validate() const {
  if (f.empty() || f.size() != eps.size() || f.size() != p.size()) {
    throw Error(ErrorCode::kArityMismatch, "system, perturbation and point must have matching sizes");
  }
  for (const auto& g : f) require_same_ring(g, f.front());
  for (const auto& g : eps) require_same_ring(g, f.front());
  if (f.front().ring()->num_params() != 0) {
    throw Error(ErrorCode::kInvalidArgument, "specialize the parameters before numerical analysis");
  }
  double residual = vector_norm(eval_system(f, p), Norm::kTwo);
  if (residual > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "point is not a root of the system (residual " + std::to_string(residual) + ")");
  }
}

double local_condition_number(std::span<const ExactPoly> f, const FloatVector& p, Norm norm) {
  FloatMatrix j = eval_jacobian(f, p);
  FloatMatrix inv = matrix_inverse(j);
  return matrix_norm(inv, norm) * matrix_norm(j, norm);
}

Admissibility admissibility_norm_check(const PerturbationSetup& setup) {
  setup.validate();
  FloatMatrix inv = matrix_inverse(eval_jacobian(setup.f, setup.p));
  double tau = matrix_norm(inv * eval_jacobian(setup.eps, setup.p), setup.norm);
  return {tau, tau < 1.0};
}

FloatVector first_order_displacement(const PerturbationSetup& setup) {
  setup.validate();
  const PolySystem total = sum_system(setup);
  return -1.0 * lu_solve(eval_jacobian(total, setup.p), eval_system(setup.eps, setup.p));
}

double displacement_bound(const PerturbationSetup& setup) {
  const double lambda = lambda_of(admissibility_norm_check(setup).tau);
  FloatMatrix inv = matrix_inverse(eval_jacobian(setup.f, setup.p));
  return lambda * matrix_norm(inv, setup.norm) * vector_norm(eval_system(setup.eps, setup.p), setup.norm);
}

double relative_error_bound(const PerturbationSetup& setup) {
  const double lambda = lambda_of(admissibility_norm_check(setup).tau);
  if (vector_norm(setup.p, Norm::kInf) == 0.0) {
    throw Error(ErrorCode::kOriginRoot, "the root is the origin; translate it away first");
  }
  const Norm n = setup.norm;
  FloatMatrix jf = eval_jacobian(setup.f, setup.p);
  FloatMatrix je = eval_jacobian(setup.eps, setup.p);
  const double norm_jf = matrix_norm(jf, n);
  const double kappa = matrix_norm(matrix_inverse(jf), n) * norm_jf;
  const double num = vector_norm(affine_part_at_origin(setup.eps, setup.p), n);
  const double den = vector_norm(affine_part_at_origin(setup.f, setup.p), n);
  double ratio = 0.0;
  if (num != 0.0) ratio = den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
  return lambda * kappa * (matrix_norm(je, n) / norm_jf + ratio);
}

ConditionReport condition_report(const PerturbationSetup& setup) {
  const auto adm = admissibility_norm_check(setup);
  ConditionReport r{local_condition_number(setup.f, setup.p, setup.norm),
                    adm.tau,
                    lambda_of(adm.tau),
                    first_order_displacement(setup),
                    relative_error_bound(setup),
                    setup.norm,
                    0.0,
                    std::nullopt};
  const double norm_p = vector_norm(setup.p, setup.norm);
  r.first_order_relerr = vector_norm(r.delta_p1, setup.norm) / norm_p;
  try {
    FloatVector q = newton_refine(sum_system(setup), setup.p);
    r.true_relerr = vector_norm(q - setup.p, setup.norm) / norm_p;
  } catch (const Error&) {
    r.true_relerr = std::nullopt;
  }
  return r;
}

PolySystem translate_system(std::span<const ExactPoly> f, std::span<const Rational> shift) {
  PolySystem out;
  if (f.empty()) return out;
  const RingPtr& ring = f.front().ring();
  if (static_cast<int>(shift.size()) != ring->num_unknowns()) {
    throw Error(ErrorCode::kArityMismatch, "shift has the wrong number of coordinates");
  }
  std::vector<ExactPoly> moved;
  for (int i = 0; i < ring->num_unknowns(); ++i) {
    moved.push_back(ExactPoly::variable(ring, ring->unknown_var(i)) + ExactPoly::constant(ring, shift[static_cast<std::size_t>(i)]));
  }
  for (const auto& g : f) {
    require_same_ring(g, f.front());
    ExactPoly acc(ring);
    for (const auto& t : g.raw().terms()) {
      Monomial rest;
      ExactPoly term = ExactPoly::constant(ring, t.coeff);
      for (int v = 0; v < ring->num_vars(); ++v) {
        const int e = t.mono[v];
        if (e == 0) continue;
        if (v < ring->num_params()) {
          rest.set(v, e);
          continue;
        }
        for (int k = 0; k < e; ++k) term = term * moved[static_cast<std::size_t>(v - ring->num_params())];
      }
      acc = acc + term * ExactPoly(ring, QPoly::monomial(rest, Rational(1)));
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace stablci
