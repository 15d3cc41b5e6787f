#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wdrjcc/instance.hpp"
#include "wdrjcc/model.hpp"
#include "wdrjcc/reformulations.hpp"
#include "wdrjcc/solve.hpp"

namespace wdrjcc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitCounterexample = 3;

enum class WPolicy { kUniform, kWStar, kExplicit };

/// "uniform", "wstar" (also "analytic-wstar") or "explicit".
[[nodiscard]] WPolicy parse_w_policy(std::string_view text);

/// Safety rows, x box and linear objective of a standalone problem.
struct ProblemSpec {
  std::vector<SafetyRow> rows;
  std::vector<Bounds> x_bounds;
  std::vector<double> objective;
  ObjSense sense = ObjSense::kMinimize;
  NormKind norm = NormKind::kL2;
};

struct RunConfig {
  ProblemSpec problem;
  std::filesystem::path scenarios;
  Method method = Method::kSFLA;
  AmbiguityConfig amb;
  /// One entry broadcasts to every scenario; empty means all ones.
  std::vector<double> kappa;
  WPolicy w_policy = WPolicy::kUniform;
  std::vector<double> w;
  std::vector<double> eps_alloc;
  std::string backend = "highs";
  SolveOptions solve;
  std::filesystem::path out;
};

/// Parses one JSON run document. Relative paths resolve against base_dir.
/// Throws ParseError naming the offending key, or the line and column of a
/// JSON syntax error.
[[nodiscard]] RunConfig parse_run_config(std::string_view text,
                                         const std::filesystem::path& base_dir = {});
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path& path);

/// WDRJCC_BACKEND and WDRJCC_TIME_LIMIT, when set.
void apply_env_overrides(RunConfig& cfg);

/// Values given on the command line; each replaces its config field.
struct CliOverrides {
  std::optional<std::string> method;
  std::optional<double> epsilon;
  std::optional<double> theta;
  std::optional<std::string> norm;
  std::optional<double> kappa;
  std::optional<std::string> w_policy;
  std::optional<std::string> backend;
  std::optional<std::uint64_t> seed;
  std::optional<double> time_limit;
  std::optional<std::string> out;
};

void apply_overrides(RunConfig& cfg, const CliOverrides& o);

/// Instance data resolved from a config: scenarios, system and method knobs.
struct ResolvedRun {
  ScenarioSet scen;
  SafetySystem sys;
  BuildParams params;
};

[[nodiscard]] ResolvedRun resolve(const RunConfig& cfg);

/// Builds and solves; writes a JSON report to cfg.out (stdout when empty).
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Membership table for every row of the x file, as CSV.
int cmd_oracle(const RunConfig& cfg, const std::filesystem::path& x_file, std::ostream& out,
               std::ostream& err);

struct CompareArgs {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  bool with_mip = false;
  /// Test hook forwarded to MembershipParams::theta_scale.
  double theta_scale = 1.0;
};

/// Region comparison JSON to cfg.out (stdout when empty) and a summary
/// table to `out`. Exit 3 on any counterexample.
int cmd_compare(const RunConfig& cfg, const CompareArgs& args, std::ostream& out,
                std::ostream& err);

struct BenchArgs {
  std::vector<std::string> presets{"tiny"};
  std::vector<std::uint64_t> seeds{1};
  std::vector<std::string> methods{"SFLA", "ExactS"};
  double epsilon = 0.05;
  double theta = 0.1;
  std::size_t N = 20;
  std::size_t holdout = 2000;
  std::string backend = "highs";
  double time_limit = 60.0;
  double mip_gap = 1e-3;
  std::size_t jobs = 1;
  std::string out;
};

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

struct GenArgs {
  std::string kind = "synth";  // synth | uc
  std::size_t K = 1;
  std::size_t N = 100;
  std::size_t holdout = 0;
  std::string marginal = "normal";
  double mean = 0.0;
  double sd = 1.0;
  double a = 0.0;
  double b = 1.0;
  double rho = 0.0;
  std::optional<double> lower;
  std::optional<double> upper;
  std::string preset = "tiny";
  std::uint64_t seed = 0;
  std::string out;
};

/// synth: scenario CSV (JSON for a .json path) at `out`. uc: instance.json
/// and scenarios.csv inside the `out` directory.
int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);

}  // namespace wdrjcc
