#pragma once

#include <span>
#include <string>
#include <vector>

#include "stablci/numeric.hpp"
#include "stablci/polycore.hpp"

namespace stablci {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Transformed system g = C f together with the exact transform applied and
/// the condition number it achieves at p in `certificate_norm`.
struct RescaledSystem {
  PolySystem gens;
  RationalMatrix transform;
  bool diagonal = false;
  double kappa = 0.0;
  Norm certificate_norm = Norm::kTwo;
  std::vector<std::string> warnings;
};

/// r-norm of each gradient row of Jac_f(p).
FloatVector row_norms_at(std::span<const ExactPoly> f, const FloatVector& p, double r);

/// γ_i f_i with γ_i ≈ 1/‖∇f_i(p)‖_{r2}, rationalized with denominators up to
/// 10^12. The certificate uses the dual norm r1 (1/r1 + 1/r2 = 1) when it is
/// 1, 2 or ∞. Throws kZeroGradient.
RescaledSystem unitary_rescale(std::span<const ExactPoly> f, const FloatVector& p, double r2);

struct Orthonormalizer {
  /// Inverse Cholesky factor of Jac_f(p) Jac_f(p)ᵗ.
  FloatMatrix c;
  bool equal_degrees = true;
};

/// C with CᵗC = (Jac_f(p) Jac_f(p)ᵗ)⁻¹, hence κ₂(Cf, p) = 1. Throws kSingular.
Orthonormalizer orthonormalizing_matrix(std::span<const ExactPoly> f, const FloatVector& p);

/// Continued-fraction rationalization entry by entry.
RationalMatrix rationalize(const FloatMatrix& m, double max_den = 1e12);

/// Exact recombination gᵗʳ = C fᵗʳ. Throws kSingularTransform.
PolySystem apply_transform(std::span<const ExactPoly> f, const RationalMatrix& c);

/// Orthonormalizing recombination with rationalized C; the certificate is
/// κ₂ recomputed after rationalization.
RescaledSystem orthonormal_rescale(std::span<const ExactPoly> f, const FloatVector& p);

}  // namespace stablci
