#include <doctest.h>

#include "support.hpp"
#include "wdrjcc/error.hpp"
#include "wdrjcc/oracle.hpp"

using namespace wdrjcc;

namespace {

struct Built {
  Model model;
  std::vector<VarId> x;
  ReformulationBlock block;
};

Built build_t1(Method method, Bounds xb = {0.0, 2.0}, const BuildParams& params = {}) {
  const testing::T1 t;
  Built b;
  b.x.push_back(b.model.add_continuous(xb.first, xb.second, "x"));
  b.model.add_objective_term(b.x[0], -1.0);
  const XExpression xe = XExpression::from_system(t.sys, b.x);
  b.block = build_block(method, b.model, xe, t.scen, t.sys, t.amb, params);
  return b;
}

SolveOptions one_thread() {
  SolveOptions o;
  o.threads = 1;
  return o;
}

}  // namespace

TEST_SUITE("reformulations") {

TEST_CASE("block sizes on T1") {
  const testing::T1 t;
  const std::pair<Method, std::size_t> expect[] = {
      {Method::kExactMIP, 9}, {Method::kExactS, 9}, {Method::kLA, 5},
      {Method::kSFLA, 4},     {Method::kWCVaR, 6},  {Method::kBonferroni, 1}};
  for (auto [m, rows] : expect) {
    CAPTURE(to_string(m));
    const Built b = build_t1(m);
    CHECK(b.block.num_rows() == rows);
    CHECK(expected_rows(m, t.scen, t.sys, t.amb) == rows);
    CHECK(b.block.num_vars == expected_vars(m, t.scen, t.sys));
  }
  CHECK(build_t1(Method::kExactMIP).block.num_vars == 9);
  CHECK(build_t1(Method::kLA).block.num_vars == 5);
  CHECK(build_t1(Method::kWCVaR).block.num_vars == 6);
  CHECK(build_t1(Method::kBonferroni).block.num_vars == 0);
}

TEST_CASE("SFLA and LA sizes at N = 100, P = 10") {
  Rng rng(5);
  Matrix samples(100, 3);
  for (std::size_t i = 0; i < 100; ++i)
    for (std::size_t k = 0; k < 3; ++k) samples(i, k) = rng.normal();
  std::vector<SafetyRow> rows;
  for (int p = 0; p < 10; ++p)
    rows.push_back({{1.0}, {rng.normal(), rng.normal(), rng.normal()}, 1.0});
  const ScenarioSet scen(std::move(samples));
  const SafetySystem sys(std::move(rows), NormKind::kL2, {{0.0, 1.0}});
  const AmbiguityConfig amb{0.05, 0.1};
  CHECK(expected_rows(Method::kSFLA, scen, sys, amb) == 61);
  CHECK(expected_rows(Method::kLA, scen, sys, amb) == 1001);
  Model m;
  std::vector<VarId> x{m.add_continuous(0.0, 1.0)};
  const ReformulationBlock b = build_sfla(m, XExpression::from_system(sys, x), scen, sys, amb);
  CHECK(b.num_rows() == 61);
}

TEST_CASE("Bonferroni adds one row per safety row") {
  const ScenarioSet scen(Matrix::from_rows({{0.0}, {0.1}, {0.2}, {0.3}}));
  const SafetySystem sys({{{1.0}, {1.0}, 1.0}, {{-1.0}, {1.0}, 1.0}}, NormKind::kL2, {{0.0, 2.0}});
  Model m;
  std::vector<VarId> x{m.add_continuous(0.0, 2.0)};
  const ReformulationBlock b =
      build_bonferroni(m, XExpression::from_system(sys, x), scen, sys, {0.5, 0.01});
  CHECK(b.num_rows() == 2);
  CHECK(b.num_vars == 0);
  CHECK(m.num_variables() == 1);
}

TEST_CASE("big-M over the box") {
  const testing::T1 t;
  CHECK(compute_bigM(t.sys, t.scen) == doctest::Approx(1.365));
  const SafetySystem point({{{1.0}, {1.0}, 1.0}}, NormKind::kL2, {{-1.0, -1.0}});
  CHECK(compute_bigM(point, t.scen) == doctest::Approx(1.05 * 2.3));
  const SafetySystem tight({{{1.0}, {1.0}, 0.1}}, NormKind::kL2, {{0.0, 0.1}});
  CHECK(compute_bigM(tight, t.scen) == doctest::Approx(1.05));
  const SafetySystem open({{{1.0}, {1.0}, 1.0}}, NormKind::kL2, {{0.0, kInf}});
  CHECK_THROWS_AS((void)compute_bigM(open, t.scen), ModelError);
}

TEST_CASE("exact MIP at fixed x follows the oracle") {
  for (double x = 0.0; x <= 2.0001; x += 0.1) {
    CAPTURE(x);
    const testing::T1 t;
    const OracleResult o = exact_feasible(std::vector<double>{x}, t.scen, t.sys, t.amb);
    if (std::abs(o.margin) < 1e-6) continue;
    const Built b = build_t1(Method::kExactMIP, {x, x});
    const SolveResult r = solve(b.model, one_thread());
    CHECK((r.status == SolveStatus::kOptimal) == o.feasible);
  }
  CHECK(solve(build_t1(Method::kExactMIP, {0.9, 0.9}).model, one_thread()).status ==
        SolveStatus::kOptimal);
  CHECK(solve(build_t1(Method::kExactMIP, {1.0, 1.0}).model, one_thread()).status ==
        SolveStatus::kInfeasible);
}

TEST_CASE("T1 optima: every method reaches the exact boundary") {
  for (Method m : {Method::kExactMIP, Method::kExactS, Method::kLA, Method::kSFLA, Method::kWCVaR}) {
    CAPTURE(to_string(m));
    const Built b = build_t1(m);
    const SolveResult r = solve(b.model, one_thread());
    REQUIRE(r.status == SolveStatus::kOptimal);
    CHECK(r.values[0] == doctest::Approx(0.95).epsilon(1e-6));
  }
}

TEST_CASE("LA with kappa = 0 is infeasible") {
  BuildParams p;
  p.kappa.assign(4, 0.0);
  const Built b = build_t1(Method::kLA, {0.0, 2.0}, p);
  CHECK(solve(b.model, one_thread()).status == SolveStatus::kInfeasible);
}

TEST_CASE("SFLA with k = 0 only keeps the quantile rows") {
  const testing::T1 t;
  const AmbiguityConfig amb{0.2, 0.05};
  Model m;
  std::vector<VarId> x{m.add_continuous(0.0, 2.0)};
  const ReformulationBlock b = build_sfla(m, XExpression::from_system(t.sys, x), t.scen, t.sys, amb);
  CHECK(b.num_rows() == 2);
  CHECK(b.r.size() == 4);
}

TEST_CASE("parameter validation") {
  const testing::T1 t;
  Model m;
  std::vector<VarId> x{m.add_continuous(0.0, 2.0)};
  const XExpression xe = XExpression::from_system(t.sys, x);
  const std::vector<double> short_kappa{1.0};
  CHECK_THROWS_AS(build_la(m, xe, t.scen, t.sys, t.amb, short_kappa), ModelError);
  const std::vector<double> big_kappa{1.0, 1.0, 2.0, 1.0};
  CHECK_THROWS_AS(build_sfla(m, xe, t.scen, t.sys, t.amb, big_kappa), ModelError);
  const std::vector<double> bad_w{0.0};
  CHECK_THROWS_AS(build_wcvar(m, xe, t.scen, t.sys, t.amb, bad_w), ModelError);
  CHECK_THROWS_AS((void)parse_method("foo"), ParseError);
  CHECK(parse_method("sfla") == Method::kSFLA);
  CHECK(parse_method("ExactMIP") == Method::kExactMIP);
}

TEST_CASE("w* weights are inverse dual norms") {
  const SafetySystem sys({{{1.0}, {3.0, 4.0}, 1.0}, {{1.0}, {1.0, 0.0}, 1.0}}, NormKind::kL2,
                         {{0.0, 1.0}});
  const std::vector<double> w = wstar_weights(sys);
  CHECK(w[0] * 5.0 == doctest::Approx(w[1] * 1.0));
  CHECK(uniform_weights(4) == std::vector<double>(4, 0.25));
}

}
