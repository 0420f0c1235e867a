#pragma once

#include <span>
#include <string>
#include <vector>

#include "stablci/groebner.hpp"
#include "stablci/param_rational.hpp"
#include "stablci/polycore.hpp"

namespace stablci {

/// Reduced basis over Q treating every ring variable (parameters included)
/// as an indeterminate.
GroebnerBasis<Rational> groebner_rational(std::span<const ExactPoly> gens, const TermOrder& order);

/// Reduced basis of the extension of the ideal to Q(a)[x]; monomials range
/// over the unknowns only (unknown i is variable i).
GroebnerBasis<ParamRational> groebner_parametric(std::span<const ExactPoly> gens, const TermOrder& order);

/// Splits p into coefficients in Q[a] per monomial in the unknowns.
ParamPoly to_param_poly(const ExactPoly& p, const TermOrder& order);

/// Converts a basis element over Q back to an ExactPoly of `ring`.
ExactPoly from_rational_poly(const Poly<Rational>& p, const RingPtr& ring);

/// Generators of the ideal intersected with the subring omitting the ring
/// variables listed in `drop`, computed with a block elimination order that
/// places the dropped variables first. Returned in canonical form.
std::vector<ExactPoly> elimination_ideal(std::span<const ExactPoly> gens, std::span<const int> drop);

std::string format_param_poly(const ParamPoly& p, const Ring& ring, const TermOrder& order);

/// ExactPoly rendering of a basis over Q(a) (for reports).
std::vector<std::string> format_basis(const GroebnerBasis<ParamRational>& gb, const Ring& ring);
std::vector<std::string> format_basis(const GroebnerBasis<Rational>& gb, const Ring& ring);

}  // namespace stablci
