#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stablci/family.hpp"
#include "stablci/numeric.hpp"
#include "stablci/realcount.hpp"

namespace stablci {

/// Roots of d·h closest to the base point of a one-parameter family. The
/// open interval between them is a region of constant real fiber count.
struct CertifiedInterval {
  ExactPoly d;
  ExactPoly h;
  RootInterval below;
  RootInterval above;
  /// Open interval strictly inside the two isolating intervals.
  Rational lo() const { return below.hi; }
  Rational hi() const { return above.lo; }
};

/// Uses the lex basis for d as in the shape-lemma analysis. Throws
/// kInvalidArgument unless the family has exactly one parameter and a base
/// point, and kShapeFailed if d·h has no root on one side.
CertifiedInterval certified_interval(const Family& fam, const Rational& width);

struct ExperimentSpec {
  Family f;
  Family g;
  std::vector<Rational> point;
  Rational lo;
  Rational hi;
  int samples = 100;
  std::uint64_t seed = 0;
  Norm norm = Norm::kTwo;
};

struct SampleRecord {
  double alpha = 0.0;
  double relerr_f = 0.0;
  double relerr_g = 0.0;
  double ub_f = 0.0;  // NaN when the norm criterion fails
  double ub_g = 0.0;
  bool discarded = false;
  std::string reason;
};

struct ExperimentReport {
  double kappa_f = 0.0;
  double kappa_g = 0.0;
  std::vector<SampleRecord> records;
  int discarded = 0;
  /// Kept samples whose perturbation fails the norm criterion, so UB1 does
  /// not apply; they still contribute relative errors.
  int ub_unavailable_f = 0;
  int ub_unavailable_g = 0;
  double mean_ub_f = 0.0;
  double mean_ub_g = 0.0;
  double mean_relerr_f = 0.0;
  double mean_relerr_g = 0.0;

  /// More than 10% of the samples were discarded.
  bool too_many_discarded() const { return 10L * discarded > static_cast<long>(records.size()); }
};

/// Samples α uniformly on the open interval (lo, hi), one sub-seed per
/// sample index, perturbs both seed systems by ε(α) = F(α) − F(α_I), and
/// records the Newton relative errors and UB1 for f and g. A sample is
/// discarded when Newton fails for either system. Mean UB is taken over the
/// samples where UB1 applies (NaN if none). Results do not depend on the
/// thread count.
ExperimentReport run_experiment(const ExperimentSpec& spec, unsigned threads);

/// `alpha,relerr_f,relerr_g,ub_f,ub_g,discarded`, one row per sample.
std::string experiment_csv(const ExperimentReport& report);

/// STABLCI_THREADS if set to a positive integer, otherwise the hardware
/// concurrency.
unsigned default_thread_count();

}  // namespace stablci
