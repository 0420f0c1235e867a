#pragma once

#include <optional>
#include <span>

#include "stablci/numeric.hpp"
#include "stablci/polycore.hpp"

namespace stablci {

/// A root p of f and a perturbation ε, all in the unknowns-only ring, with
/// one induced norm used throughout.
struct PerturbationSetup {
  PolySystem f;
  PolySystem eps;
  FloatVector p;
  Norm norm = Norm::kTwo;

  /// Shapes must agree and ‖f(p)‖₂ must not exceed 1e-9.
  void validate() const;
};

/// κ(f,p) = ‖Jac_f(p)⁻¹‖ ‖Jac_f(p)‖. Throws kSingular.
double local_condition_number(std::span<const ExactPoly> f, const FloatVector& p, Norm norm);

struct Admissibility {
  double tau;
  bool ok;
};

/// τ = ‖Jac_f(p)⁻¹ Jac_ε(p)‖; ok iff τ < 1.
Admissibility admissibility_norm_check(const PerturbationSetup& setup);

/// Δp¹ = −Jac_{f+ε}(p)⁻¹ ε(p).
FloatVector first_order_displacement(const PerturbationSetup& setup);

/// Λ ‖Jac_f(p)⁻¹‖ ‖ε(p)‖. Throws kInadmissible when τ ≥ 1.
double displacement_bound(const PerturbationSetup& setup);

/// UB1 = Λ κ (‖Jac_ε(p)‖/‖Jac_f(p)‖ + ‖ε(p) − Jac_ε(p)p‖/‖f(p) − Jac_f(p)p‖).
/// Throws kInadmissible and kOriginRoot.
double relative_error_bound(const PerturbationSetup& setup);

struct ConditionReport {
  double kappa;
  double tau;
  double lambda;
  FloatVector delta_p1;
  double ub1;
  Norm norm;
  /// ‖Δp¹‖/‖p‖.
  double first_order_relerr;
  /// ‖q − p‖/‖p‖ for the root q of f + ε reached by Newton from p.
  std::optional<double> true_relerr;
};

ConditionReport condition_report(const PerturbationSetup& setup);

/// f(x + shift) for every equation; moves a root p to p − shift.
PolySystem translate_system(std::span<const ExactPoly> f, std::span<const Rational> shift);

}  // namespace stablci
