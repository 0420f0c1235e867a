#include "stablci/family.hpp"

#include "stablci/system_file.hpp"

namespace stablci {

namespace {

// Parameter-only polynomial of the full ring moved into the parameters ring;
// parameters keep their indices so the terms carry over unchanged.
ExactPoly to_params_ring(const QPoly& p, const Ring& ring) {
  return ExactPoly(params_ring(ring), p);
}

std::vector<int> unknown_indices(const Ring& ring) {
  std::vector<int> out;
  for (int i = 0; i < ring.num_unknowns(); ++i) out.push_back(ring.unknown_var(i));
  return out;
}

}  // namespace

Family::Family(RingPtr r, PolySystem g, std::optional<std::vector<Rational>> base)
    : ring(std::move(r)), gens(std::move(g)), base_point(std::move(base)) {
  if (static_cast<int>(gens.size()) != ring->num_unknowns()) {
    throw Error(ErrorCode::kArityMismatch, "a family needs as many generators as unknowns (" +
                                               std::to_string(gens.size()) + " vs " +
                                               std::to_string(ring->num_unknowns()) + ")");
  }
  for (const auto& f : gens) {
    if (!(*f.ring() == *ring)) throw Error(ErrorCode::kRingMismatch, "family generator over a different ring");
  }
  if (base_point && static_cast<int>(base_point->size()) != ring->num_params()) {
    throw Error(ErrorCode::kArityMismatch, "base point has the wrong number of coordinates");
  }
}

Family Family::from_file(const SystemFile& file) { return Family(file.ring, file.system, file.base_point); }

bool check_independent_params(const Family& fam) {
  if (fam.num_params() == 0) {
    return !groebner_rational(fam.gens, TermOrder::degrevlex()).is_unit();
  }
  return !groebner_parametric(fam.gens, TermOrder::degrevlex()).is_unit();
}

FreeLocus free_locus(const Family& fam, const TermOrder& order) {
  auto gb = groebner_parametric(fam.gens, order);
  if (!is_zero_dimensional(gb) || gb.is_unit()) {
    throw Error(ErrorCode::kGenericPositiveDim, gb.is_unit() ? "the generic fiber is empty"
                                                             : "the generic member is positive-dimensional");
  }
  QPoly d = qpoly::constant(1);
  for (const auto& g : gb.gens) {
    for (const auto& t : g.terms()) d = qpoly::lcm(d, t.coeff.den());
  }
  return {std::move(gb), to_params_ring(qpoly::primitive(d), *fam.ring)};
}

SmoothLocus smooth_locus(const Family& fam) {
  PolySystem j = fam.gens;
  j.push_back(jacobian_det(fam.gens));
  const auto drop = unknown_indices(*fam.ring);
  SmoothLocus out;
  for (const auto& g : elimination_ideal(j, drop)) {
    if (g.is_zero()) continue;
    out.h_gens.push_back(to_params_ring(g.raw(), *fam.ring));
  }
  out.exists = !out.h_gens.empty();
  return out;
}

LocusReport optimal_locus(const Family& fam, const TermOrder& order) {
  SmoothLocus smooth = smooth_locus(fam);
  if (!smooth.exists) throw Error(ErrorCode::kNoSmooth, "There is no I-smooth subscheme");
  FreeLocus free = free_locus(fam, order);
  LocusReport report{std::move(free.gb), std::move(free.d), ExactPoly(params_ring(*fam.ring)),
                     std::move(smooth.h_gens), {}, 0, true};
  QPoly h = qpoly::constant(1);
  for (const auto& g : report.h_gens) h = qpoly::mul(h, g.raw());
  report.h = canonical(to_params_ring(h, *fam.ring));
  report.staircase = staircase(report.gb);
  report.mu = *report.staircase.multiplicity;
  return report;
}

PolySystem specialize_fiber(const Family& fam, std::span<const Rational> alpha) {
  return specialize_params(fam.gens, alpha);
}

FiberDiagnostics fiber_diagnostics(const Family& fam, std::span<const Rational> alpha) {
  PolySystem fiber = specialize_fiber(fam, alpha);
  auto gb = groebner_rational(fiber, TermOrder::degrevlex());
  auto st = staircase(gb);
  if (!st.finite()) throw Error(ErrorCode::kNotZeroDim, "the fiber is not zero-dimensional");
  FiberDiagnostics out;
  out.mu = *st.multiplicity;
  fiber.push_back(jacobian_det(fiber));
  out.smooth = groebner_rational(fiber, TermOrder::degrevlex()).is_unit();
  return out;
}

std::vector<Rational> random_parameter_point(std::mt19937_64& rng, int num_params) {
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 1000);
  std::vector<Rational> out;
  for (int i = 0; i < num_params; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

}  // namespace stablci
