#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "stablci/conditioning.hpp"
#include "stablci/error.hpp"
#include "stablci/experiment.hpp"
#include "stablci/family.hpp"
#include "stablci/ideal.hpp"
#include "stablci/realcount.hpp"
#include "stablci/rescale.hpp"
#include "stablci/system_file.hpp"

namespace stablci::cli {

using nlohmann::json;

namespace {

TermOrder parse_order(const std::string& name) {
  if (name == "lex") return TermOrder::lex();
  if (name == "degrevlex" || name == "drl") return TermOrder::degrevlex();
  throw Error(ErrorCode::kInvalidArgument, "unknown term order '" + name + "' (expected lex or degrevlex)");
}

Norm parse_norm(const std::string& name) {
  if (name == "1") return Norm::kOne;
  if (name == "2") return Norm::kTwo;
  if (name == "inf") return Norm::kInf;
  throw Error(ErrorCode::kInvalidArgument, "unknown norm '" + name + "' (expected 1, 2 or inf)");
}

// Vector exponent dual to an induced matrix norm: unit rows in r2 minimize κ in r1.
double dual_exponent(Norm n) {
  switch (n) {
    case Norm::kOne:
      return std::numeric_limits<double>::infinity();
    case Norm::kInf:
      return 1.0;
    default:
      return 2.0;
  }
}

std::string str(const Rational& q) { return q.get_str(); }

json rationals(std::span<const Rational> v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(str(q));
  return out;
}

json floats(const FloatVector& v) { return v.values(); }

json polys(std::span<const ExactPoly> sys, const TermOrder& order = TermOrder::degrevlex()) {
  json out = json::array();
  for (const auto& g : sys) out.push_back(g.to_string(order));
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string point_text(std::span<const Rational> v) {
  std::vector<std::string> parts;
  for (const auto& q : v) parts.push_back(str(q));
  return "(" + join(parts, ", ") + ")";
}

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// JSON goes to --json PATH ("-" means stdout, replacing the text report).
void emit(const json& doc, const std::string& text, const Common& common) {
  if (!common.json_path || *common.json_path != "-") std::cout << text;
  if (!common.json_path) return;
  if (*common.json_path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(*common.json_path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + *common.json_path);
  out << doc.dump(2) << "\n";
}

std::vector<Rational> parse_alpha(const std::string& text, const Family& fam) {
  auto alpha = parse_point(text);
  if (static_cast<int>(alpha.size()) != fam.num_params()) {
    throw Error(ErrorCode::kArityMismatch, "expected " + std::to_string(fam.num_params()) + " parameter values, got " +
                                               std::to_string(alpha.size()));
  }
  return alpha;
}

std::optional<std::vector<Rational>> parse_shift(const Common& common, int n) {
  if (!common.translate) return std::nullopt;
  auto shift = parse_point(*common.translate);
  if (static_cast<int>(shift.size()) != n) throw Error(ErrorCode::kArityMismatch, "--translate needs one value per unknown");
  return shift;
}

std::vector<Rational> minus(std::vector<Rational> p, std::span<const Rational> shift) {
  for (std::size_t i = 0; i < p.size(); ++i) p[i] -= shift[i];
  return p;
}

std::string monomial_text(const Monomial& m, const Ring& ring) {
  std::vector<std::string> parts;
  for (int v = 0; v < ring.num_vars(); ++v) {
    if (m[v] == 0) continue;
    parts.push_back(ring.name(v) + (m[v] > 1 ? "^" + std::to_string(m[v]) : ""));
  }
  return parts.empty() ? "1" : join(parts, "*");
}

json locus_polys(const ExactPoly& d, const ExactPoly& h) { return {{"d", d.to_string()}, {"h", h.to_string()}}; }

}  // namespace

int cmd_parse(const std::string& path, const Common& common) {
  SystemFile file = load_system_file(path);
  json doc{{"params", file.ring->params()},
           {"vars", file.ring->unknowns()},
           {"system", polys(file.system)},
           {"roots", json::array()},
           {"eps", polys(file.eps)}};
  if (file.base_point) doc["base"] = rationals(*file.base_point);
  for (const auto& r : file.roots) doc["roots"].push_back(rationals(r));
  emit(doc, print_system(file), common);
  return kExitOk;
}

int cmd_gb(const GbArgs& args, const Common& common) {
  SystemFile file = load_system_file(args.file);
  const TermOrder order = parse_order(common.order);
  json doc{{"order", common.order}};
  std::vector<std::string> lines;
  std::optional<long> mu;
  if (file.ring->num_params() > 0 && !args.alpha) {
    auto gb = groebner_parametric(file.system, order);
    lines = format_basis(gb, *file.ring);
    if (is_zero_dimensional(gb)) mu = staircase(gb).multiplicity;
  } else {
    PolySystem sys = file.system;
    RingPtr ring = file.ring;
    if (args.alpha) {
      sys = specialize_fiber(Family::from_file(file), parse_alpha(*args.alpha, Family::from_file(file)));
      ring = sys.front().ring();
      doc["alpha"] = *args.alpha;
    }
    auto gb = groebner_rational(sys, order);
    lines = format_basis(gb, *ring);
    if (is_zero_dimensional(gb)) mu = staircase(gb).multiplicity;
  }
  doc["basis"] = lines;
  doc["zero_dimensional"] = mu.has_value();
  if (mu) doc["multiplicity"] = *mu;
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  text += mu ? "multiplicity " + std::to_string(*mu) + "\n" : "not zero-dimensional\n";
  emit(doc, text, common);
  return kExitOk;
}

int cmd_optimal_locus(const LocusArgs& args, const Common& common) {
  Family fam = Family::from_file(load_system_file(args.file));
  try {
    LocusReport r = optimal_locus(fam, parse_order(common.order));
    std::vector<std::string> stairs;
    for (const auto& m : r.staircase.monomials) stairs.push_back(monomial_text(m, *fam.ring));
    json doc = locus_polys(r.d, r.h);
    doc["mu"] = r.mu;
    doc["staircase"] = stairs;
    doc["h_generators"] = polys(r.h_gens);
    doc["basis"] = format_basis(r.gb, *fam.ring);
    doc["order"] = common.order;
    std::string text = "d = " + r.d.to_string() + "\nh = " + r.h.to_string() + "\nmu = " + std::to_string(r.mu) +
                       "\nstaircase = {" + join(stairs, ", ") + "}\n";
    emit(doc, text, common);
    return kExitOk;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoSmooth) throw;
    std::cerr << e.what() << "\n";
    if (common.json_path) emit(json{{"error", "NO_SMOOTH"}, {"message", e.what()}}, "", common);
    return kExitNoSmooth;
  }
}

int cmd_real_count(const RealCountArgs& args, const Common& common) {
  Family fam = Family::from_file(load_system_file(args.file));
  std::vector<std::string> alphas = args.alphas;
  if (alphas.empty()) {
    if (fam.num_params() > 0 && !fam.base_point) throw Error(ErrorCode::kInvalidArgument, "give --alpha or a base point");
    alphas.push_back(fam.base_point ? join([&] {
      std::vector<std::string> s;
      for (const auto& q : *fam.base_point) s.push_back(str(q));
      return s;
    }(), ",") : "");
  }

  // The parametric principal coefficients are computed once, when available.
  std::optional<std::vector<ExactPoly>> principal;
  std::string principal_note;
  if (fam.num_params() > 0) {
    try {
      principal = sturm_habicht_param(parametric_shape_poly(fam), fam.num_unknowns() - 1, fam.ring);
    } catch (const Error& e) {
      principal_note = std::string(error_code_name(e.code())) + ": " + e.what();
    }
  }

  json doc{{"results", json::array()}};
  if (principal) doc["principal_coefficients"] = polys(*principal);
  if (!principal_note.empty()) doc["principal_coefficients_unavailable"] = principal_note;
  std::string text;
  for (const auto& a : alphas) {
    auto alpha = a.empty() ? std::vector<Rational>{} : parse_alpha(a, fam);
    json row{{"alpha", rationals(alpha)}, {"status", "OK"}};
    text += "alpha = " + point_text(alpha) + ": ";
    if (principal) {
      try {
        RegionClass rc = classify_region(*principal, alpha);
        row["signs"] = rc.signs;
        row["sturm_habicht_count"] = rc.real_count;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kOnBoundary) throw;
        row["status"] = "ON_BOUNDARY";
      }
    }
    try {
      row["count"] = real_fiber_count(specialize_fiber(fam, alpha)).mu_real;
      text += std::to_string(row["count"].get<long>()) + " real points";
    } catch (const Error& e) {
      if (row["status"] == "OK") row["status"] = std::string(error_code_name(e.code()));
      text += std::string("no count (") + e.what() + ")";
    }
    if (row.contains("signs")) {
      std::vector<std::string> s;
      for (int v : row["signs"]) s.push_back(v > 0 ? "+" : "-");
      text += ", signs " + join(s, "");
    }
    if (row["status"] != "OK") text += " [" + row["status"].get<std::string>() + "]";
    text += "\n";
    doc["results"].push_back(row);
  }
  emit(doc, text, common);
  return kExitOk;
}

int cmd_condition(const ConditionArgs& args, const Common& common) {
  SystemFile file = load_system_file(args.file);
  Family fam = Family::from_file(file);
  const Norm norm = parse_norm(common.norm);

  std::vector<Rational> base;
  if (args.base) {
    base = parse_alpha(*args.base, fam);
  } else if (fam.base_point) {
    base = *fam.base_point;
  } else if (fam.num_params() > 0) {
    throw Error(ErrorCode::kInvalidArgument, "the family has parameters but no base point; use --base");
  }
  PolySystem f = specialize_fiber(fam, base);

  std::vector<Rational> point;
  if (args.point) {
    point = parse_point(*args.point);
  } else if (!file.roots.empty()) {
    point = file.roots.front();
  } else {
    throw Error(ErrorCode::kInvalidArgument, "no root given; use --point");
  }
  if (static_cast<int>(point.size()) != fam.num_unknowns()) throw Error(ErrorCode::kArityMismatch, "point has the wrong size");

  std::optional<PolySystem> eps;
  if (args.alpha) {
    PolySystem moved = specialize_fiber(fam, parse_alpha(*args.alpha, fam));
    eps.emplace();
    for (std::size_t i = 0; i < moved.size(); ++i) eps->push_back(moved[i] - f[i]);
  } else if (!file.eps.empty()) {
    eps = file.eps;
    if (fam.num_params() > 0) eps = specialize_params(file.eps, base);
  }

  if (auto shift = parse_shift(common, fam.num_unknowns())) {
    f = translate_system(f, *shift);
    if (eps) eps = translate_system(*eps, *shift);
    point = minus(point, *shift);
  }
  const FloatVector p = to_float_vector(point);
  PerturbationSetup{f, f, p, norm}.validate();

  json doc{{"point", rationals(point)}, {"norm", common.norm}};
  std::ostringstream text;
  auto describe = [&](const PolySystem& sys, const std::string& label, json& out) {
    out["kappa"] = local_condition_number(sys, p, norm);
    text << "kappa_" << common.norm << "(" << label << ", p) = " << fmt(out["kappa"].get<double>(), "%.10g") << "\n";
    if (!eps) return;
    PerturbationSetup setup{sys, *eps, p, norm};
    auto adm = admissibility_norm_check(setup);
    out["tau"] = adm.tau;
    text << "  tau = " << fmt(adm.tau) << (adm.ok ? "" : "  (norm criterion fails)") << "\n";
    if (!adm.ok) return;
    auto r = condition_report(setup);
    out["lambda"] = r.lambda;
    out["delta_p1"] = floats(r.delta_p1);
    out["ub1"] = r.ub1;
    out["first_order_relerr"] = r.first_order_relerr;
    if (r.true_relerr) out["true_relerr"] = *r.true_relerr;
    text << "  lambda = " << fmt(r.lambda) << "\n  UB1 = " << fmt(r.ub1) << "\n  |dp1|/|p| = " << fmt(r.first_order_relerr)
         << "\n";
    if (r.true_relerr) text << "  |q-p|/|p| = " << fmt(*r.true_relerr) << "\n";
  };
  json base_doc;
  describe(f, "f", base_doc);
  doc.update(base_doc);
  if (eps) doc["eps"] = polys(*eps);

  if (args.rescale) {
    RescaledSystem rs;
    if (*args.rescale == "unitary") {
      rs = unitary_rescale(f, p, dual_exponent(norm));
    } else if (*args.rescale == "orthonormal") {
      rs = orthonormal_rescale(f, p);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "--rescale must be unitary or orthonormal");
    }
    json out{{"method", *args.rescale}, {"gens", polys(rs.gens)}, {"certificate_norm", norm_name(rs.certificate_norm)},
             {"certificate_kappa", rs.kappa}, {"warnings", rs.warnings}};
    json transform = json::array();
    for (const auto& row : rs.transform) transform.push_back(rationals(row));
    out["transform"] = transform;
    for (const auto& w : rs.warnings) std::cerr << "warning: " << w << "\n";
    text << "rescaled (" << *args.rescale << "), transform:\n";
    for (const auto& row : rs.transform) text << "  " << point_text(row) << "\n";
    for (std::size_t i = 0; i < rs.gens.size(); ++i) text << "  g" << i + 1 << " = " << rs.gens[i].to_string() << "\n";
    describe(rs.gens, "g", out);
    doc["rescaled"] = out;
  }
  emit(doc, text.str(), common);
  return kExitOk;
}

int cmd_isolate(const IsolateArgs& args, const Common& common) {
  SystemFile file = load_system_file(args.file);
  const Rational width = *parse_rational(args.width);
  std::optional<ExactPoly> target;
  json doc{{"poly", args.poly}};
  if (args.poly == "d" || args.poly == "h" || args.poly == "d*h") {
    Family fam = Family::from_file(file);
    if (fam.num_params() == 0) throw Error(ErrorCode::kInvalidArgument, "d and h need a parametric family");
    LocusReport r = optimal_locus(fam, TermOrder::lex());
    target = args.poly == "d" ? r.d : args.poly == "h" ? r.h : r.d * r.h;
    doc.update(locus_polys(r.d, r.h));
  } else {
    RingPtr ring = file.ring->num_params() > 0 ? params_ring(*file.ring) : file.ring;
    target = parse_poly(args.poly, ring);
  }

  std::ostringstream text;
  auto interval = [](const RootInterval& iv) {
    return json{{"lo", str(iv.lo)}, {"hi", str(iv.hi)}, {"approx", to_double(iv.midpoint())}};
  };
  if (args.near) {
    const Rational center = *parse_rational(*args.near);
    NearestRoots nr = nearest_roots(*target, center, width);
    doc["near"] = str(center);
    for (const auto& [name, iv] : {std::pair{"below", nr.below}, std::pair{"above", nr.above}}) {
      if (!iv) {
        doc[name] = nullptr;
        text << name << ": none\n";
        continue;
      }
      doc[name] = interval(*iv);
      text << name << ": " << fmt(to_double(iv->midpoint()), "%.10g") << "  in (" << str(iv->lo) << ", " << str(iv->hi)
           << "]\n";
    }
  } else {
    json roots = json::array();
    for (const auto& iv : isolate_real_roots(*target, width)) {
      roots.push_back(interval(iv));
      text << fmt(to_double(iv.midpoint()), "%.10g") << "  in (" << str(iv.lo) << ", " << str(iv.hi) << "]\n";
    }
    if (roots.empty()) text << "no real roots\n";
    doc["roots"] = roots;
  }
  emit(doc, text.str(), common);
  return kExitOk;
}

int cmd_experiment(const ExperimentArgs& args, const Common& common) {
  std::ifstream in(args.spec);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + args.spec);
  json spec_doc;
  try {
    spec_doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("experiment spec: ") + e.what());
  }
  const auto dir = std::filesystem::path(args.spec).parent_path();
  auto load_rel = [&](const std::string& key) {
    if (!spec_doc.contains(key)) throw Error(ErrorCode::kInvalidArgument, "experiment spec lacks '" + key + "'");
    return load_system_file((dir / spec_doc[key].get<std::string>()).string());
  };
  SystemFile file_f = load_rel("family_f");
  SystemFile file_g = load_rel("family_g");
  Family fam_f = Family::from_file(file_f);
  Family fam_g = Family::from_file(file_g);

  std::vector<Rational> point;
  if (spec_doc.contains("point")) {
    point = parse_point(spec_doc["point"].get<std::string>());
  } else if (!file_f.roots.empty()) {
    point = file_f.roots.front();
  } else {
    throw Error(ErrorCode::kInvalidArgument, "experiment spec lacks 'point'");
  }

  Rational lo, hi;
  json interval_doc;
  if (spec_doc.contains("interval") && spec_doc["interval"].is_array()) {
    lo = *parse_rational(spec_doc["interval"][0].get<std::string>());
    hi = *parse_rational(spec_doc["interval"][1].get<std::string>());
    interval_doc = {{"source", "spec"}};
  } else {
    const Rational width(1, 1000000000);
    auto cf = certified_interval(fam_f, width);
    auto cg = certified_interval(fam_g, width);
    lo = std::max(cf.lo(), cg.lo());
    hi = std::min(cf.hi(), cg.hi());
    interval_doc = {{"source", "certified"},
                    {"f", {to_double(cf.lo()), to_double(cf.hi())}},
                    {"g", {to_double(cg.lo()), to_double(cg.hi())}}};
  }
  interval_doc["lo"] = str(lo);
  interval_doc["hi"] = str(hi);

  if (auto shift = parse_shift(common, fam_f.num_unknowns())) {
    fam_f = Family(fam_f.ring, translate_system(fam_f.gens, *shift), fam_f.base_point);
    fam_g = Family(fam_g.ring, translate_system(fam_g.gens, *shift), fam_g.base_point);
    point = minus(point, *shift);
  }

  const int samples = args.samples.value_or(spec_doc.value("samples", 100));
  const std::uint64_t seed = args.seed.value_or(spec_doc.value("seed", 0ULL));
  const std::string norm_name_text = spec_doc.contains("norm") && common.norm == "2" ? spec_doc["norm"].get<std::string>()
                                                                                      : common.norm;
  ExperimentSpec spec{fam_f, fam_g, point, lo, hi, samples, seed, parse_norm(norm_name_text)};
  ExperimentReport r = run_experiment(spec, args.threads.value_or(default_thread_count()));

  if (args.csv_path) {
    std::ofstream csv(*args.csv_path);
    if (!csv) throw Error(ErrorCode::kInvalidArgument, "cannot write " + *args.csv_path);
    csv << experiment_csv(r);
  }
  for (const auto& rec : r.records) {
    if (rec.discarded) std::cerr << "warning: discarded alpha = " << fmt(rec.alpha, "%.17g") << " (" << rec.reason << ")\n";
  }

  auto number = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  json doc{{"point", rationals(point)},
           {"interval", interval_doc},
           {"samples", samples},
           {"seed", seed},
           {"norm", norm_name_text},
           {"discarded", r.discarded},
           {"f",
            {{"kappa", r.kappa_f},
             {"mean_ub", number(r.mean_ub_f)},
             {"ub_unavailable", r.ub_unavailable_f},
             {"mean_relerr", r.mean_relerr_f}}},
           {"g",
            {{"kappa", r.kappa_g},
             {"mean_ub", number(r.mean_ub_g)},
             {"ub_unavailable", r.ub_unavailable_g},
             {"mean_relerr", r.mean_relerr_g}}}};
  std::ostringstream text;
  const std::string k = "kappa_" + norm_name_text;
  auto row = [&](const char* name, double kappa, double ub, double relerr) {
    const std::string ub_text = std::isnan(ub) ? "n/a" : fmt(ub, "%.4f");
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %12.6g %12s %14.6g\n", name, kappa, ub_text.c_str(), relerr);
    text << line;
  };
  char header[160];
  std::snprintf(header, sizeof header, "%-4s %12s %12s %14s\n", "", k.c_str(), "UB", "|q-p|/|p|");
  text << header;
  row("f", r.kappa_f, r.mean_ub_f, r.mean_relerr_f);
  row("g", r.kappa_g, r.mean_ub_g, r.mean_relerr_g);
  text << "samples " << samples << ", discarded " << r.discarded << ", alpha in (" << fmt(to_double(lo), "%.8g") << ", "
       << fmt(to_double(hi), "%.8g") << "), seed " << seed << "\n";
  if (r.ub_unavailable_f + r.ub_unavailable_g > 0) {
    text << "UB1 not applicable (norm criterion fails) for " << r.ub_unavailable_f << " f and " << r.ub_unavailable_g
         << " g samples; mean UB is over the rest\n";
  }
  emit(doc, text.str(), common);
  if (r.too_many_discarded()) {
    std::cerr << "more than 10% of the samples were discarded\n";
    return kExitTooManyDiscarded;
  }
  return kExitOk;
}

}  // namespace stablci::cli
