#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stablci/family.hpp"
#include "stablci/groebner.hpp"
#include "stablci/param_rational.hpp"
#include "stablci/polycore.hpp"

namespace stablci {

/// Interval endpoint; nullopt stands for -∞ as a lower bound and +∞ as an
/// upper bound.
using Bound = std::optional<Rational>;

/// Negative signed-remainder chain p, p', -rem(p, p'), ... with every entry
/// scaled by a positive rational to integer content 1.
struct SturmSequence {
  std::vector<ExactPoly> polys;
  ExactPoly source;
};

/// The polynomial must involve at most one variable of its ring.
SturmSequence sturm_sequence(const ExactPoly& p);

/// Number of distinct real roots of p in (lo, hi].
int sturm_count(const ExactPoly& p, const Bound& lo = std::nullopt, const Bound& hi = std::nullopt);

/// Half-open interval (lo, hi] holding exactly one root; lo == hi marks a
/// rational root found exactly.
struct RootInterval {
  Rational lo;
  Rational hi;
  Rational midpoint() const { return (lo + hi) / 2; }
};

/// One interval per distinct real root, ascending, each no wider than width.
std::vector<RootInterval> isolate_real_roots(const ExactPoly& p, const Rational& width);

struct NearestRoots {
  std::optional<RootInterval> below;
  std::optional<RootInterval> above;
};

/// Isolating intervals of the closest real root on each side of center,
/// each no wider than width and not containing center. Throws kOnBoundary
/// when center is itself a root.
NearestRoots nearest_roots(const ExactPoly& p, const Rational& center, const Rational& width);

struct ShapeForm {
  /// Monic polynomial in the last unknown.
  ExactPoly h;
  /// x_i + g_i(x_n) for i = 1..n-1, in unknown order.
  std::vector<ExactPoly> back_subs;
};

/// Recognizes {x_1 + g_1(x_n), ..., x_{n-1} + g_{n-1}(x_n), h(x_n)} in a
/// reduced lex basis whose variables are the unknowns of `ring`.
std::optional<ShapeForm> shape_lemma_extract(const GroebnerBasis<Rational>& gb, const RingPtr& ring);

struct RealCountReport {
  long mu_real;
  ExactPoly shape_poly;
  /// x = M y substitution used to reach normal position, if any.
  std::optional<std::vector<std::vector<Rational>>> coordinate_change;
};

/// Number of distinct real points of a zero-dimensional system in unknowns
/// only. Throws kNotZeroDim and kShapeFailed.
RealCountReport real_fiber_count(std::span<const ExactPoly> system, std::uint64_t seed = 0);

/// Substitutes x = M y (M square over the unknowns).
PolySystem linear_change(std::span<const ExactPoly> system, const std::vector<std::vector<Rational>>& m);

/// Principal Sturm–Habicht coefficients of h ∈ K(a)[x_var], from the top
/// degree down to 0, as polynomials in the parameters ring. Denominators are
/// cleared by a common factor first. Throws kDegenerate if one vanishes
/// identically.
std::vector<ExactPoly> sturm_habicht_param(const ParamPoly& h, int var, const RingPtr& ring);

/// Permanences minus variations of a sign sequence without zeros; equals the
/// number of distinct real roots for a Sturm–Habicht principal sequence.
int permanences_minus_variations(std::span<const int> signs);

/// Shape polynomial of the generic fiber over K(a): last element of the
/// reduced lex basis, checked to be in shape position. Throws kShapeFailed.
ParamPoly parametric_shape_poly(const Family& fam);

struct RegionClass {
  std::vector<int> signs;
  int real_count = 0;
};

/// Signs of the principal coefficients at alpha and the induced real count.
/// Throws kOnBoundary when a sign is zero.
RegionClass classify_region(std::span<const ExactPoly> principal, std::span<const Rational> alpha);
RegionClass classify_region(const Family& fam, std::span<const Rational> alpha);

}  // namespace stablci
