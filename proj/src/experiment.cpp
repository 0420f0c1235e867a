#include "stablci/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "stablci/conditioning.hpp"
#include "stablci/error.hpp"

namespace stablci {

namespace {

struct Side {
  PolySystem seed;
  const Family* fam;
};

PolySystem perturbation(const Side& side, const Rational& alpha) {
  PolySystem moved = specialize_fiber(*side.fam, std::vector<Rational>{alpha});
  PolySystem eps;
  for (std::size_t i = 0; i < moved.size(); ++i) eps.push_back(moved[i] - side.seed[i]);
  return eps;
}

// (relative error of the Newton root, UB1) for one perturbed system. UB1 is
// NaN when the perturbation fails the norm criterion.
std::pair<double, double> measure(const Side& side, const PolySystem& eps, const FloatVector& p, Norm norm) {
  PerturbationSetup setup{side.seed, eps, p, norm};
  double ub = std::numeric_limits<double>::quiet_NaN();
  try {
    ub = relative_error_bound(setup);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInadmissible) throw;
  }
  PolySystem total;
  for (std::size_t i = 0; i < eps.size(); ++i) total.push_back(side.seed[i] + eps[i]);
  const FloatVector q = newton_refine(total, p);
  return {vector_norm(q - p, norm) / vector_norm(p, norm), ub};
}

double sample_alpha(std::uint64_t seed, std::size_t index, double lo, double hi) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> dist(lo, hi);
  double a = dist(rng);
  while (!(lo < a && a < hi)) a = dist(rng);
  return a;
}

}  // namespace

CertifiedInterval certified_interval(const Family& fam, const Rational& width) {
  if (fam.num_params() != 1 || !fam.base_point) {
    throw Error(ErrorCode::kInvalidArgument, "certified intervals need a one-parameter family with a base point");
  }
  LocusReport locus = optimal_locus(fam, TermOrder::lex());
  NearestRoots near = nearest_roots(locus.d * locus.h, fam.base_point->front(), width);
  if (!near.below || !near.above) {
    throw Error(ErrorCode::kShapeFailed, "d*h has no real root on one side of the base point");
  }
  return {locus.d, locus.h, *near.below, *near.above};
}

ExperimentReport run_experiment(const ExperimentSpec& spec, unsigned threads) {
  for (const Family* fam : {&spec.f, &spec.g}) {
    if (fam->num_params() != 1 || !fam->base_point) {
      throw Error(ErrorCode::kInvalidArgument, "experiment families need one parameter and a base point");
    }
  }
  if (!(spec.lo < spec.hi)) throw Error(ErrorCode::kInvalidArgument, "empty sampling interval");
  if (spec.samples < 0) throw Error(ErrorCode::kInvalidArgument, "negative sample count");

  const Side f{specialize_fiber(spec.f, *spec.f.base_point), &spec.f};
  const Side g{specialize_fiber(spec.g, *spec.g.base_point), &spec.g};
  const FloatVector p = to_float_vector(spec.point);
  for (const Side* side : {&f, &g}) {
    PerturbationSetup{side->seed, side->seed, p, spec.norm}.validate();
  }

  ExperimentReport report;
  report.kappa_f = local_condition_number(f.seed, p, spec.norm);
  report.kappa_g = local_condition_number(g.seed, p, spec.norm);
  report.records.resize(static_cast<std::size_t>(spec.samples));

  const double lo = to_double(spec.lo), hi = to_double(spec.hi);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < report.records.size(); i = next++) {
      SampleRecord& rec = report.records[i];
      rec.alpha = sample_alpha(spec.seed, i, lo, hi);
      try {
        const Rational alpha(rec.alpha);
        std::tie(rec.relerr_f, rec.ub_f) = measure(f, perturbation(f, alpha), p, spec.norm);
        std::tie(rec.relerr_g, rec.ub_g) = measure(g, perturbation(g, alpha), p, spec.norm);
      } catch (const Error& e) {
        rec.discarded = true;
        rec.reason = std::string(error_code_name(e.code())) + ": " + e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(report.records.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int kept = 0, with_ub_f = 0, with_ub_g = 0;
  for (const auto& rec : report.records) {
    if (rec.discarded) {
      ++report.discarded;
      continue;
    }
    ++kept;
    report.mean_relerr_f += rec.relerr_f;
    report.mean_relerr_g += rec.relerr_g;
    if (!std::isnan(rec.ub_f)) {
      ++with_ub_f;
      report.mean_ub_f += rec.ub_f;
    }
    if (!std::isnan(rec.ub_g)) {
      ++with_ub_g;
      report.mean_ub_g += rec.ub_g;
    }
  }
  report.ub_unavailable_f = kept - with_ub_f;
  report.ub_unavailable_g = kept - with_ub_g;
  if (kept > 0) {
    report.mean_relerr_f /= kept;
    report.mean_relerr_g /= kept;
  }
  report.mean_ub_f = with_ub_f > 0 ? report.mean_ub_f / with_ub_f : std::numeric_limits<double>::quiet_NaN();
  report.mean_ub_g = with_ub_g > 0 ? report.mean_ub_g / with_ub_g : std::numeric_limits<double>::quiet_NaN();
  return report;
}

std::string experiment_csv(const ExperimentReport& report) {
  std::string out = "alpha,relerr_f,relerr_g,ub_f,ub_g,discarded\n";
  char line[256];
  for (const auto& r : report.records) {
    if (r.discarded) {
      std::snprintf(line, sizeof line, "%.17g,,,,,1\n", r.alpha);
      out += line;
      continue;
    }
    auto cell = [](double v) {
      char buf[32] = "";
      if (!std::isnan(v)) std::snprintf(buf, sizeof buf, "%.17g", v);
      return std::string(buf);
    };
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,", r.alpha, r.relerr_f, r.relerr_g);
    out += line + cell(r.ub_f) + "," + cell(r.ub_g) + ",0\n";
  }
  return out;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("STABLCI_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace stablci
