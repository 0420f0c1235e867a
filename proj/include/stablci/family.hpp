#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "stablci/groebner.hpp"
#include "stablci/ideal.hpp"
#include "stablci/param_rational.hpp"
#include "stablci/polycore.hpp"

namespace stablci {

struct SystemFile;

/// Parametric system F(a, x): n generators in n unknowns, with an optional
/// parameter point at which it specializes to the seed system.
struct Family {
  RingPtr ring;
  PolySystem gens;
  std::optional<std::vector<Rational>> base_point;

  /// Validates the shape (square system, shared ring, base point arity).
  Family(RingPtr ring, PolySystem gens, std::optional<std::vector<Rational>> base_point = std::nullopt);
  static Family from_file(const SystemFile& file);

  int num_params() const { return ring->num_params(); }
  int num_unknowns() const { return ring->num_unknowns(); }
};

/// True iff I(a,x) meets K[a] only in zero, i.e. the extension of I to
/// K(a)[x] is proper.
bool check_independent_params(const Family& fam);

struct FreeLocus {
  GroebnerBasis<ParamRational> gb;
  /// lcm of all denominators, canonical, in the parameters ring.
  ExactPoly d;
};

/// Reduced basis over K(a) and the denominator lcm d(a); the family is free
/// wherever d does not vanish. Throws kGenericPositiveDim.
FreeLocus free_locus(const Family& fam, const TermOrder& order);

struct SmoothLocus {
  /// Reduced basis of H = (I + (det Jac)) ∩ K[a], in the parameters ring.
  std::vector<ExactPoly> h_gens;
  bool exists = false;
};

SmoothLocus smooth_locus(const Family& fam);

struct LocusReport {
  GroebnerBasis<ParamRational> gb;
  ExactPoly d;
  ExactPoly h;
  std::vector<ExactPoly> h_gens;
  Staircase staircase;
  long mu = 0;
  bool smooth_exists = false;
};

/// Free locus, smooth locus and generic multiplicity. The optimal set is
/// {α : d(α) h(α) ≠ 0}. Throws kNoSmooth when H = (0) and
/// kGenericPositiveDim when the generic fiber is not finite.
LocusReport optimal_locus(const Family& fam, const TermOrder& order);

/// Fiber over α as a system in the unknowns-only ring.
PolySystem specialize_fiber(const Family& fam, std::span<const Rational> alpha);

struct FiberDiagnostics {
  long mu = 0;
  bool smooth = false;
};

/// Multiplicity of the fiber over α and whether it avoids the Jacobian
/// hypersurface. Throws kNotZeroDim.
FiberDiagnostics fiber_diagnostics(const Family& fam, std::span<const Rational> alpha);

/// Random rational point with numerators and denominators bounded by 1000.
std::vector<Rational> random_parameter_point(std::mt19937_64& rng, int num_params);

}  // namespace stablci
