#include <doctest.h>

#include <algorithm>

#include "wdrjcc/error.hpp"
#include "wdrjcc/oracle.hpp"
#include "wdrjcc/uc.hpp"

using namespace wdrjcc;

namespace {

SolveOptions uc_options() {
  SolveOptions o;
  o.threads = 1;
  o.time_limit_s = 60.0;
  return o;
}

}  // namespace

TEST_SUITE("uc") {

TEST_CASE("generation is deterministic per seed") {
  const UCInstance a = generate_uc_instance("tiny", 1, 20, 100);
  const UCInstance b = generate_uc_instance("tiny", 1, 20, 100);
  CHECK(a.scenarios.samples() == b.scenarios.samples());
  CHECK(a.scenarios.holdout() == b.scenarios.holdout());
  CHECK(uc_config_json(a.config) == uc_config_json(b.config));

  const UCInstance c = generate_uc_instance("tiny", 2, 20, 100);
  bool differs = false;
  for (std::size_t g = 0; g < a.config.G(); ++g)
    differs = differs || a.config.gens[g].b != c.config.gens[g].b;
  CHECK(differs);
}

TEST_CASE("presets have enough capacity") {
  for (const std::string& preset : uc_presets()) {
    CAPTURE(preset);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const UCInstance inst = generate_uc_instance(preset, seed, 10, 0);
      CHECK(inst.config.total_capacity() >= inst.config.peak_load());
      CHECK(inst.scenarios.K() == inst.config.K());
    }
  }
  CHECK_THROWS((void)generate_uc_instance("huge", 1, 10, 0));
}

TEST_CASE("joint block sizes on the tiny preset") {
  const UCInstance inst = generate_uc_instance("tiny", 1, 20, 0);
  CHECK(inst.config.P() == 64);
  const AmbiguityConfig amb{0.05, 0.1};
  const UCModel sfla = build_uc_model(inst.config, inst.scenarios, amb, Method::kSFLA);
  const UCModel la = build_uc_model(inst.config, inst.scenarios, amb, Method::kLA);
  CHECK(sfla.block.num_rows() == 129);
  CHECK(la.block.num_rows() == 1281);
}

TEST_CASE("SFLA costs at least as much as ExactS and passes checks") {
  const UCInstance inst = generate_uc_instance("tiny", 3, 20, 500);
  const AmbiguityConfig amb{0.05, 0.1};
  const UCModel sfla = build_uc_model(inst.config, inst.scenarios, amb, Method::kSFLA);
  const UCModel exs = build_uc_model(inst.config, inst.scenarios, amb, Method::kExactS);
  const SolveResult a = solve(sfla.model, uc_options());
  const SolveResult b = solve(exs.model, uc_options());
  REQUIRE(a.status == SolveStatus::kOptimal);
  REQUIRE(b.status == SolveStatus::kOptimal);
  CHECK(*a.objective >= *b.objective - (1e-3 * std::abs(*b.objective) + 1e-6));

  const UCCheck chk = check_uc_solution(inst.config, sfla, a.values);
  CHECK(chk.balance_residual < 1e-6);
  CHECK(chk.min_up_down_ok);
  CHECK(chk.max_violation < 1e-6);

  const std::vector<double> ax = uc_activities(sfla, a.values);
  CHECK(exact_feasible_at(ax, inst.scenarios, sfla.system, amb).margin > -1e-6);
  CHECK(in_sample_violations_at(ax, inst.scenarios.samples(), sfla.system) <= amb.k(20));
  const double rel = reliability_at(ax, inst.scenarios.holdout(), sfla.system);
  CHECK(rel >= 0.0);
  CHECK(rel <= 1.0);
}

TEST_CASE("benchmark rows and CSV") {
  BenchOptions opts;
  opts.seeds = {1, 2};
  opts.methods = {Method::kSFLA, Method::kExactS};
  opts.amb_grid = {{0.05, 0.1}};
  opts.holdout = 200;
  opts.solve = uc_options();
  const std::vector<UCBuildReport> reps = run_benchmark(opts);
  REQUIRE(reps.size() == 4);
  for (const UCBuildReport& r : reps) {
    CHECK(r.status == "optimal");
    CHECK(r.jcc_rows == r.expected_jcc_rows);
    CHECK(r.timef_s.has_value());
    if (r.method == Method::kSFLA) CHECK(*r.obj_diff_vs_sfla == 0.0);
  }
  const std::string csv = bench_csv(reps);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("Bonferroni on tiny is recorded, not thrown") {
  BenchOptions opts;
  opts.methods = {Method::kBonferroni};
  opts.amb_grid = {{0.05, 0.1}};
  opts.holdout = 0;
  opts.solve = uc_options();
  const std::vector<UCBuildReport> reps = run_benchmark(opts);
  REQUIRE(reps.size() == 1);
  CHECK((reps[0].status == "infeasible" || reps[0].status == "unbounded-var"));
  CHECK_FALSE(reps[0].objective.has_value());
}

}
