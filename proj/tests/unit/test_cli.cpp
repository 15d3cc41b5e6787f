#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "wdrjcc/cli.hpp"
#include "wdrjcc/data_io.hpp"
#include "wdrjcc/error.hpp"

using namespace wdrjcc;

namespace {

const std::filesystem::path kData = WDRJCC_TEST_DATA;

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "wdrjcc_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
  const RunConfig cfg = load_run_config(kData / "t1.json");
  CHECK(cfg.method == Method::kSFLA);
  CHECK(cfg.amb.epsilon == 0.5);
  CHECK(cfg.amb.theta == 0.05);
  CHECK(cfg.problem.rows.size() == 1);
  CHECK(cfg.scenarios == kData / "t1.csv");
}

TEST_CASE("config errors name the key or position") {
  try {
    (void)parse_run_config(R"({"epsilon": "high"})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("epsilon") != std::string::npos);
  }
  try {
    (void)parse_run_config("{\n  \"epsilon\": 0.1,\n  \"theta\" 2\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_run_config(R"({"method": "Foo"})"), ParseError);
  CHECK_THROWS_AS((void)parse_run_config(R"({"epsilon": 1.5})"), ModelError);
}

TEST_CASE("overrides replace config values") {
  RunConfig cfg = load_run_config(kData / "t1.json");
  CliOverrides o;
  o.method = "LA";
  o.kappa = 0.5;
  apply_overrides(cfg, o);
  CHECK(cfg.method == Method::kLA);
  const ResolvedRun run = resolve(cfg);
  CHECK(run.params.kappa == std::vector<double>(4, 0.5));
}

TEST_CASE("solve exit codes") {
  RunConfig cfg = load_run_config(kData / "t1.json");
  std::ostringstream out, err;
  CHECK(cmd_solve(cfg, out, err) == kExitOk);
  CHECK(out.str().find("\"optimal\"") != std::string::npos);

  cfg.method = Method::kBonferroni;
  cfg.amb.theta = 100.0;
  CHECK(cmd_solve(cfg, out, err) == kExitInfeasible);

  cfg.scenarios = kData / "missing.csv";
  CHECK(cmd_solve(cfg, out, err) == kExitError);
}

TEST_CASE("oracle table") {
  const RunConfig cfg = load_run_config(kData / "t1.json");
  std::ostringstream out, err;
  REQUIRE(cmd_oracle(cfg, kData / "t1_points.csv", out, err) == kExitOk);
  const CsvTable t = parse_csv_table(out.str());
  REQUIRE(t.rows.size() == 2);
  CHECK(t.header.front() == "x0");
  CHECK(t.rows[0][1] == "true");
  CHECK(t.rows[1][1] == "false");
  CHECK(cmd_oracle(cfg, kData / "bad_points.csv", out, err) == kExitError);
}

TEST_CASE("compare exit codes") {
  const RunConfig cfg = load_run_config(kData / "t1.json");
  std::ostringstream out, err;
  CompareArgs args;
  args.samples = 50;
  CHECK(cmd_compare(cfg, args, out, err) == kExitOk);
  args.theta_scale = 0.5;
  CHECK(cmd_compare(cfg, args, out, err) == kExitCounterexample);
}

TEST_CASE("gen is reproducible") {
  GenArgs g;
  g.K = 2;
  g.N = 30;
  g.seed = 8;
  g.out = scratch("a.csv").string();
  std::ostringstream out, err;
  REQUIRE(cmd_gen(g, out, err) == kExitOk);
  g.out = scratch("b.csv").string();
  REQUIRE(cmd_gen(g, out, err) == kExitOk);
  CHECK(read_file(scratch("a.csv")) == read_file(scratch("b.csv")));

  g.marginal = "cauchy";
  CHECK(cmd_gen(g, out, err) == kExitError);
}

TEST_CASE("bench rejects unknown methods") {
  BenchArgs b;
  b.methods = {"SFLA", "Magic"};
  std::ostringstream out, err;
  CHECK(cmd_bench(b, out, err) == kExitError);
}

}
