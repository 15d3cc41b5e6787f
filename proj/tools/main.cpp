#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wdrjcc/cli.hpp"
#include "wdrjcc/error.hpp"

namespace {

void add_run_flags(CLI::App* app, wdrjcc::CliOverrides& o) {
  app->add_option("--method", o.method, "ExactMIP, ExactS, LA, SFLA, WCVaR or Bonferroni");
  app->add_option("--epsilon", o.epsilon, "risk level");
  app->add_option("--theta", o.theta, "Wasserstein radius");
  app->add_option("--norm", o.norm, "l1, l2 or linf");
  app->add_option("--kappa", o.kappa, "scalar kappa for LA/SFLA");
  app->add_option("--w-policy", o.w_policy, "uniform, wstar or explicit");
  app->add_option("--backend", o.backend, "solver backend (highs, simplex)");
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--time-limit", o.time_limit, "solver time limit in seconds");
  app->add_option("--out", o.out, "output file");
}

wdrjcc::RunConfig load(const std::string& path, const wdrjcc::CliOverrides& o) {
  wdrjcc::RunConfig cfg = wdrjcc::load_run_config(path);
  wdrjcc::apply_env_overrides(cfg);
  wdrjcc::apply_overrides(cfg, o);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein distributionally robust joint chance constraints"};
  app.require_subcommand(1);

  std::string config, x_file;
  wdrjcc::CliOverrides ov;

  auto* solve = app.add_subcommand("solve", "build and solve a configured problem");
  solve->add_option("config", config, "run config (JSON)")->required();
  add_run_flags(solve, ov);

  auto* oracle = app.add_subcommand("oracle", "membership of x points under every method");
  oracle->add_option("config", config, "run config (JSON)")->required();
  oracle->add_option("points", x_file, "CSV of x rows")->required();
  add_run_flags(oracle, ov);

  wdrjcc::CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "sampled region inclusion checks");
  compare->add_option("config", config, "run config (JSON)")->required();
  compare->add_option("--samples", cmp.samples, "number of x samples");
  compare->add_flag("--with-mip", cmp.with_mip, "also solve the fixed-x MIPs");
  compare->add_option("--tamper-theta-scale", cmp.theta_scale)->group("");
  add_run_flags(compare, ov);

  wdrjcc::BenchArgs bench;
  std::optional<std::uint64_t> bench_seed;
  std::size_t runs = 0;
  auto* bench_cmd = app.add_subcommand("bench", "unit commitment benchmark sweep (CSV)");
  bench_cmd->add_option("--preset", bench.presets, "tiny or small")->delimiter(',');
  bench_cmd->add_option("--seeds", bench.seeds, "comma-separated seeds")->delimiter(',');
  bench_cmd->add_option("--seed", bench_seed, "first seed when --runs is given");
  bench_cmd->add_option("--runs", runs, "number of consecutive seeds");
  bench_cmd->add_option("--method", bench.methods, "comma-separated methods")->delimiter(',');
  bench_cmd->add_option("--epsilon", bench.epsilon);
  bench_cmd->add_option("--theta", bench.theta);
  bench_cmd->add_option("--samples,-N", bench.N, "training samples per run");
  bench_cmd->add_option("--holdout", bench.holdout, "holdout samples for reliability");
  bench_cmd->add_option("--backend", bench.backend);
  bench_cmd->add_option("--time-limit", bench.time_limit);
  bench_cmd->add_option("--mip-gap", bench.mip_gap);
  bench_cmd->add_option("--jobs", bench.jobs, "concurrent runs");
  bench_cmd->add_option("--out", bench.out, "CSV path (stdout when omitted)");

  wdrjcc::GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate synthetic scenarios or a UC instance");
  gen_cmd->add_option("kind", gen.kind, "synth or uc")->required();
  gen_cmd->add_option("--K", gen.K);
  gen_cmd->add_option("--N", gen.N);
  gen_cmd->add_option("--holdout", gen.holdout);
  gen_cmd->add_option("--marginal", gen.marginal, "normal or uniform");
  gen_cmd->add_option("--mean", gen.mean);
  gen_cmd->add_option("--sd", gen.sd);
  gen_cmd->add_option("--a", gen.a);
  gen_cmd->add_option("--b", gen.b);
  gen_cmd->add_option("--rho", gen.rho);
  gen_cmd->add_option("--lower", gen.lower);
  gen_cmd->add_option("--upper", gen.upper);
  gen_cmd->add_option("--preset", gen.preset);
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->add_option("--out", gen.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? wdrjcc::kExitOk : wdrjcc::kExitError;
  }

  try {
    if (*solve) return wdrjcc::cmd_solve(load(config, ov), std::cout, std::cerr);
    if (*oracle) return wdrjcc::cmd_oracle(load(config, ov), x_file, std::cout, std::cerr);
    if (*compare) {
      if (ov.seed) cmp.seed = *ov.seed;
      return wdrjcc::cmd_compare(load(config, ov), cmp, std::cout, std::cerr);
    }
    if (*bench_cmd) {
      if (runs > 0) {
        bench.seeds.clear();
        for (std::size_t i = 0; i < runs; ++i) bench.seeds.push_back(bench_seed.value_or(1) + i);
      }
      return wdrjcc::cmd_bench(bench, std::cout, std::cerr);
    }
    if (*gen_cmd) return wdrjcc::cmd_gen(gen, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wdrjcc::kExitError;
  }
  return wdrjcc::kExitError;
}
