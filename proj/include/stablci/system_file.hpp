#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stablci/polycore.hpp"

namespace stablci {

/// Parsed input file:
///
///   params a1, a2;          (optional)
///   vars x, y;
///   sys: x*y + a1; x^2 + y^2 - 5;
///   base: 0, -5;            (optional parameter point)
///   root: 0, 1;             (optional, repeatable)
///   eps: a*x; a*y^2;        (optional perturbation template)
///
/// `#` starts a comment running to the end of the line.
struct SystemFile {
  RingPtr ring;
  PolySystem system;
  std::optional<std::vector<Rational>> base_point;
  std::vector<std::vector<Rational>> roots;
  PolySystem eps;
};

/// Throws Error(kParse) with "line L, column C" for syntax errors and
/// Error(kUndeclaredIdentifier) for unknown names.
SystemFile parse_system(std::string_view text);
SystemFile load_system_file(const std::string& path);

/// Parses a single polynomial expression over an existing ring.
ExactPoly parse_poly(std::string_view text, const RingPtr& ring);

/// Parses "1/2, -3, 0.25" into rationals.
std::vector<Rational> parse_point(std::string_view text);

/// Canonical text form; parse_system(print_system(f)) reproduces f.
std::string print_system(const SystemFile& file);

}  // namespace stablci
