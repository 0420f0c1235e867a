#pragma once

#include <optional>
#include <string>
#include <vector>

namespace stablci::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNoSmooth = 2,
  kExitTooManyDiscarded = 3,
};

struct Common {
  std::string order = "degrevlex";
  std::string norm = "2";
  std::optional<std::string> json_path;
  std::optional<std::string> translate;
};

struct GbArgs {
  std::string file;
  std::optional<std::string> alpha;
};

struct LocusArgs {
  std::string file;
};

struct RealCountArgs {
  std::string file;
  std::vector<std::string> alphas;
};

struct ConditionArgs {
  std::string file;
  std::optional<std::string> point;
  std::optional<std::string> alpha;
  std::optional<std::string> base;
  std::optional<std::string> rescale;
};

struct IsolateArgs {
  std::string file;
  std::string poly = "d*h";
  std::optional<std::string> near;
  std::string width = "1/10000000000";
};

struct ExperimentArgs {
  std::string spec;
  std::optional<int> samples;
  std::optional<unsigned long long> seed;
  std::optional<std::string> csv_path;
  std::optional<unsigned> threads;
};

int cmd_parse(const std::string& file, const Common& common);
int cmd_gb(const GbArgs& args, const Common& common);
int cmd_optimal_locus(const LocusArgs& args, const Common& common);
int cmd_real_count(const RealCountArgs& args, const Common& common);
int cmd_condition(const ConditionArgs& args, const Common& common);
int cmd_isolate(const IsolateArgs& args, const Common& common);
int cmd_experiment(const ExperimentArgs& args, const Common& common);

}  // namespace stablci::cli
