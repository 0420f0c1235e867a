#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "stablci/error.hpp"

using namespace stablci::cli;

int main(int argc, char** argv) {
  CLI::App app{"Stability analysis of real roots of zero-dimensional complete intersections"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub, bool order, bool norm, bool translate) {
    sub->add_option("--json", common.json_path, "Write the JSON report to PATH ('-' for stdout)");
    if (order) sub->add_option("--order", common.order, "Term order: lex or degrevlex")->capture_default_str();
    if (norm) sub->add_option("--norm", common.norm, "Induced norm: 1, 2 or inf")->capture_default_str();
    if (translate) sub->add_option("--translate", common.translate, "Shift x -> x + t, given as t1,t2,...");
  };

  std::string parse_file;
  auto* parse = app.add_subcommand("parse", "Parse a system file and print its canonical form");
  parse->add_option("file", parse_file)->required();
  add_common(parse, false, false, false);

  GbArgs gb;
  auto* gb_cmd = app.add_subcommand("gb", "Reduced Groebner basis (over Q(a) for families)");
  gb_cmd->add_option("file", gb.file)->required();
  gb_cmd->add_option("--alpha", gb.alpha, "Specialize the parameters first");
  add_common(gb_cmd, true, false, false);

  LocusArgs locus;
  auto* locus_cmd = app.add_subcommand("optimal-locus", "Free locus d, smooth locus h and generic multiplicity");
  locus_cmd->add_option("file", locus.file)->required();
  add_common(locus_cmd, true, false, false);

  RealCountArgs rc;
  auto* rc_cmd = app.add_subcommand("real-count", "Real fiber counts and Sturm-Habicht signs");
  rc_cmd->add_option("file", rc.file)->required();
  rc_cmd->add_option("--alpha", rc.alphas, "Parameter point a1,a2,... (repeatable)");
  add_common(rc_cmd, false, false, false);

  ConditionArgs cond;
  auto* cond_cmd = app.add_subcommand("condition", "Local condition number, UB1 and optional rescaling at a root");
  cond_cmd->add_option("file", cond.file)->required();
  cond_cmd->add_option("--point", cond.point, "Root p (defaults to the first root in the file)");
  cond_cmd->add_option("--alpha", cond.alpha, "Perturb by F(alpha) - F(base)");
  cond_cmd->add_option("--base", cond.base, "Parameter point of the seed system");
  cond_cmd->add_option("--rescale", cond.rescale, "unitary or orthonormal")
      ->check(CLI::IsMember({"unitary", "orthonormal"}));
  add_common(cond_cmd, false, true, true);

  IsolateArgs iso;
  auto* iso_cmd = app.add_subcommand("isolate", "Isolate real roots of d, h, d*h or a given polynomial");
  iso_cmd->add_option("file", iso.file)->required();
  iso_cmd->add_option("--poly", iso.poly, "d, h, d*h or a polynomial expression")->capture_default_str();
  iso_cmd->add_option("--near", iso.near, "Report only the nearest root on each side of this value");
  iso_cmd->add_option("--width", iso.width, "Maximal interval width")->capture_default_str();
  add_common(iso_cmd, false, false, false);

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Sampled comparison of two representations of a root");
  exp_cmd->add_option("spec", exp.spec, "Experiment spec (JSON)")->required();
  exp_cmd->add_option("--samples", exp.samples, "Number of parameter samples");
  exp_cmd->add_option("--seed", exp.seed, "Random seed");
  exp_cmd->add_option("--csv", exp.csv_path, "Per-sample CSV output");
  exp_cmd->add_option("--threads", exp.threads, "Worker threads (default STABLCI_THREADS or all cores)");
  add_common(exp_cmd, false, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*parse) return cmd_parse(parse_file, common);
    if (*gb_cmd) return cmd_gb(gb, common);
    if (*locus_cmd) return cmd_optimal_locus(locus, common);
    if (*rc_cmd) return cmd_real_count(rc, common);
    if (*cond_cmd) return cmd_condition(cond, common);
    if (*iso_cmd) return cmd_isolate(iso, common);
    if (*exp_cmd) return cmd_experiment(exp, common);
  } catch (const stablci::Error& e) {
    std::cerr << "error [" << stablci::error_code_name(e.code()) << "]: " << e.what() << "\n";
    return e.code() == stablci::ErrorCode::kNoSmooth ? kExitNoSmooth : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
