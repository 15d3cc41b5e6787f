#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wdrjcc/instance.hpp"
#include "wdrjcc/model.hpp"
#include "wdrjcc/reformulations.hpp"
#include "wdrjcc/solve.hpp"

namespace wdrjcc {

struct Generator {
  std::size_t bus = 0;
  double p_max = 0.0;
  double p_min = 0.0;
  double ramp_up = 0.0;
  double ramp_down = 0.0;
  double r_up_max = 0.0;
  double r_down_max = 0.0;
  int min_up = 1;
  int min_down = 1;
  /// Fuel cost A p^2 + B p + C v.
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double c_startup = 0.0;
  double c_shutdown = 0.0;
  double c_reserve = 0.0;
  bool on_initially = false;
  double p_initial = 0.0;
};

struct WindFarm {
  std::size_t bus = 0;
  double capacity = 0.0;
  double c_curtail = 0.0;
};

struct LoadPoint {
  std::size_t bus = 0;
  double share = 0.0;
};

/// A desk-scale chance-constrained unit commitment instance.
struct UCConfig {
  std::string preset;
  std::uint64_t seed = 0;
  std::size_t T = 0;
  std::size_t start_hour = 0;
  std::size_t buses = 0;
  std::vector<Generator> gens;
  std::vector<WindFarm> wind;
  std::vector<LoadPoint> loads;
  /// Line-by-bus PTDF (slack column zero) and thermal limits.
  Matrix ptdf;
  std::vector<double> line_limit;
  Matrix demand;     // loads x T
  Matrix wind_fore;  // farms x T
  std::vector<double> r_up_extra;
  std::vector<double> r_down_extra;
  int fuel_segments = 3;
  NormKind norm = NormKind::kL2;

  [[nodiscard]] std::size_t G() const { return gens.size(); }
  [[nodiscard]] std::size_t J() const { return wind.size(); }
  [[nodiscard]] std::size_t L() const { return line_limit.size(); }
  [[nodiscard]] std::size_t P() const { return T * (2 + 2 * L()); }
  [[nodiscard]] std::size_t K() const { return J() * T; }
  [[nodiscard]] double total_demand(std::size_t t) const;
  [[nodiscard]] double peak_load() const;
  [[nodiscard]] double total_capacity() const;

  /// Throws ModelError on non-positive capacities, a horizon shorter than a
  /// minimum up/down time, bad bus indices or mismatched table shapes.
  void validate() const;
};

struct UCInstance {
  UCConfig config;
  ScenarioSet scenarios;
};

[[nodiscard]] const std::vector<std::string>& uc_presets();

/// Randomized instance: costs within +-20% of the preset base, a random
/// start hour, N wind-error samples drawn without replacement from a fixed
/// pool of 1000 and a fixed holdout. Throws ModelError on an unknown preset.
[[nodiscard]] UCInstance generate_uc_instance(std::string_view preset, std::uint64_t seed,
                                              std::size_t N = 20, std::size_t holdout = 2000);

/// Wind-error index of farm j at period t in the stacked vector.
[[nodiscard]] inline std::size_t xi_index(const UCConfig& uc, std::size_t j, std::size_t t) {
  return j * uc.T + t;
}

/// Joint rows, per period: upward reserve, downward reserve, then upper and
/// lower flow limits of every line. The a-side lives in the model, so the
/// system has no x box.
[[nodiscard]] SafetySystem uc_safety_system(const UCConfig& uc);

struct UCModel {
  Model model;
  SafetySystem system;
  XExpression xexpr;
  ReformulationBlock block;
  /// Host variables indexed [g * T + t] or [j * T + t].
  std::vector<VarId> v, p, r_up, r_down, c_su, c_sd, w_cur;
};

/// Deterministic UC core plus the chosen joint chance constraint block.
[[nodiscard]] UCModel build_uc_model(const UCConfig& uc, const ScenarioSet& scen,
                                     const AmbiguityConfig& amb, Method method,
                                     const BuildParams& params = {});

struct UCCheck {
  double balance_residual = 0.0;
  bool min_up_down_ok = true;
  double max_violation = 0.0;
};

[[nodiscard]] UCCheck check_uc_solution(const UCConfig& uc, const UCModel& m,
                                        const std::vector<double>& values);

/// a_p^T x of the joint rows at a host solution.
[[nodiscard]] std::vector<double> uc_activities(const UCModel& m,
                                                const std::vector<double>& values);

[[nodiscard]] std::string uc_config_json(const UCConfig& uc);

struct BenchOptions {
  std::vector<std::string> presets{"tiny"};
  std::vector<std::uint64_t> seeds{1};
  std::vector<Method> methods{Method::kSFLA, Method::kExactS};
  std::vector<AmbiguityConfig> amb_grid{AmbiguityConfig{}};
  std::size_t N = 20;
  std::size_t holdout = 2000;
  SolveOptions solve;
  std::string backend = "highs";
  BuildParams params;
  /// Concurrent runs; each owns its model and backend.
  std::size_t jobs = 1;
};

struct UCBuildReport {
  std::size_t run_id = 0;
  std::string preset;
  std::uint64_t seed = 0;
  Method method = Method::kSFLA;
  double epsilon = 0.0;
  double theta = 0.0;
  std::size_t N = 0;
  std::string status;
  std::optional<double> objective;
  double time_s = 0.0;
  std::optional<double> timef_s;
  std::optional<double> reliability;
  /// (obj_SFLA - obj) / |obj_SFLA| * 100; positive when cheaper than SFLA.
  std::optional<double> obj_diff_vs_sfla;
  std::size_t jcc_rows = 0;
  std::size_t expected_jcc_rows = 0;
  std::string message;
};

/// One report per (preset, seed, ambiguity, method). Failures are recorded
/// in the status and message, never thrown. SFLA reference runs are solved
/// even when not requested.
[[nodiscard]] std::vector<UCBuildReport> run_benchmark(const BenchOptions& opts);

/// run_id,preset,seed,method,epsilon,theta,N,status,objective,time_s,
/// timef_s,reliability,obj_diff_vs_sfla
[[nodiscard]] std::string bench_csv(const std::vector<UCBuildReport>& reports);

}  // namespace wdrjcc
