#include <doctest.h>

#include "support.hpp"
#include "wdrjcc/error.hpp"
#include "wdrjcc/oracle.hpp"

using namespace wdrjcc;

namespace {

std::vector<double> at(double x) { return {x}; }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("T1 at x = 0.9 is feasible") {
  const testing::T1 t;
  const OracleResult r = exact_feasible(at(0.9), t.scen, t.sys, t.amb);
  CHECK(r.s_star == doctest::Approx(0.3));
  CHECK(r.value == doctest::Approx(0.3));
  CHECK(r.feasible);
  CHECK(r.margin == doctest::Approx(0.3 / 4 - 0.05));
}

TEST_CASE("T1 at x = 1.0 is infeasible") {
  const testing::T1 t;
  const OracleResult r = exact_feasible(at(1.0), t.scen, t.sys, t.amb);
  CHECK(r.s_star == doctest::Approx(0.2));
  CHECK(r.value == doctest::Approx(0.1));
  CHECK_FALSE(r.feasible);
}

TEST_CASE("all distances zero is infeasible") {
  const testing::T1 t;
  const OracleResult r = exact_feasible(at(2.0), t.scen, t.sys, t.amb);
  CHECK(r.s_star == 0.0);
  CHECK_FALSE(r.feasible);
}

TEST_CASE("oracle matches a brute-force budget maximization") {
  Rng rng(17);
  for (int inst = 0; inst < 20; ++inst) {
    const testing::RandomInstance ri = testing::random_instance(rng);
    for (int j = 0; j < 20; ++j) {
      std::vector<double> x(ri.sys.L());
      for (double& v : x) v = rng.uniform(-1.0, 2.0);
      const OracleResult r = exact_feasible(x, ri.scen, ri.sys, ri.amb);
      const double best =
          testing::grid_budget_max(testing::brute_dists(x, ri.scen, ri.sys), ri.amb.epsilon, 4000);
      CHECK(r.value >= best - 1e-9);
      CHECK(r.value <= best + 1e-3);
    }
  }
}

TEST_CASE("reliability on T1") {
  const testing::T1 t;
  CHECK(reliability(at(1.05), t.scen.holdout(), t.sys) == doctest::Approx(0.75));
  CHECK(reliability(at(1.15), t.scen.holdout(), t.sys) == doctest::Approx(0.5));
  CHECK(reliability(at(0.5), t.scen.holdout(), t.sys) == 1.0);
  CHECK(reliability(at(2.0), t.scen.holdout(), t.sys) == 0.0);
  CHECK_THROWS_AS((void)reliability(at(1.0), Matrix{}, t.sys), ModelError);
}

TEST_CASE("in-sample violations on T1") {
  const testing::T1 t;
  CHECK(in_sample_violations(at(0.5), t.scen, t.sys) == 0);
  CHECK(in_sample_violations(at(1.05), t.scen, t.sys) == 1);
  CHECK(in_sample_violations(at(2.0), t.scen, t.sys) == 4);
}

TEST_CASE("membership LPs on T1") {
  const testing::T1 t;
  const MembershipOracle o(t.scen, t.sys, t.amb);
  CHECK(o.member(at(0.9), Method::kSFLA));
  CHECK(o.member(at(0.9), Method::kLA));
  CHECK(o.member(at(0.9), Method::kExactMIP));
  CHECK(o.member(at(0.9), Method::kExactS));
  CHECK_FALSE(o.member(at(1.0), Method::kLA));
  CHECK_FALSE(o.member(at(1.0), Method::kSFLA));
  CHECK_FALSE(o.member(at(1.0), Method::kExactMIP));
}

TEST_CASE("LP and closed-form margins agree") {
  Rng rng(23);
  for (int inst = 0; inst < 10; ++inst) {
    const testing::RandomInstance ri = testing::random_instance(rng);
    MembershipParams mp;
    mp.kappa.resize(ri.scen.N());
    for (double& k : mp.kappa) k = rng.uniform(0.3, 1.0);
    const MembershipOracle o(ri.scen, ri.sys, ri.amb, mp);
    for (int j = 0; j < 10; ++j) {
      std::vector<double> x(ri.sys.L());
      for (double& v : x) v = rng.uniform(-1.0, 2.0);
      for (Method m : {Method::kLA, Method::kSFLA, Method::kWCVaR}) {
        CAPTURE(to_string(m));
        const double closed = o.margin(x, m);
        const std::optional<double> lp = o.lp_margin(x, m);
        if (lp)
          CHECK(*lp == doctest::Approx(closed).epsilon(1e-6));
        else
          CHECK(closed < 0.0);
      }
    }
  }
}

TEST_CASE("membership report at a point") {
  const testing::T1 t;
  const MembershipOracle o(t.scen, t.sys, t.amb);
  const MembershipReport r = membership_report(o, at(0.9), true);
  CHECK(r.oracle);
  CHECK(r.exact_mip.value());
  CHECK(r.exacts.value());
  CHECK(r.la);
  CHECK(r.sfla);
  CHECK(r.s_star == doctest::Approx(0.3));
  const MembershipReport q = membership_report(o, at(0.9), false);
  CHECK_FALSE(q.exact_mip.has_value());
}

}
