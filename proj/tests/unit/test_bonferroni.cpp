#include <doctest.h>

#include "support.hpp"
#include "wdrjcc/error.hpp"
#include "wdrjcc/oracle.hpp"

using namespace wdrjcc;

TEST_SUITE("bonferroni") {

TEST_CASE("closed-form g matches its LP") {
  Rng rng(41);
  for (int rep = 0; rep < 8; ++rep) {
    std::vector<double> v(6 + rng.below(10));
    for (double& x : v) x = rng.normal();
    const double nb = rng.uniform(0.5, 2.0);
    const double theta = rng.uniform(0.01, 0.5);
    for (double eta = -2.0; eta <= 4.0; eta += 0.37) {
      CAPTURE(eta);
      CHECK(bonferroni_g(eta, v, nb, theta) ==
            doctest::Approx(testing::bonferroni_g_lp(eta, v, nb, theta)).epsilon(1e-7));
    }
  }
}

TEST_CASE("g is nonincreasing") {
  const std::vector<double> v{-0.3, 0.1, 0.4, 0.0, -1.2};
  double prev = 2.0;
  for (double eta = -3.0; eta <= 5.0; eta += 0.05) {
    const double g = bonferroni_g(eta, v, 1.0, 0.1);
    CHECK(g <= prev + 1e-12);
    prev = g;
  }
}

TEST_CASE("vanishing radius recovers the empirical quantile") {
  Rng rng(3);
  Matrix samples(50, 1);
  for (std::size_t i = 0; i < 50; ++i) samples(i, 0) = rng.normal();
  const ScenarioSet scen(samples);
  const SafetySystem sys({{{1.0}, {1.0}, 1.0}}, NormKind::kL2, {{0.0, 1.0}});
  // 0.11 * 50 is not an integer, so the limit is the 6th largest loss.
  const BonferroniVaR var = bonferroni_var(scen, sys, 0, {0.11, 1e-12}, 0.11);

  std::vector<double> neg;
  for (std::size_t i = 0; i < 50; ++i) neg.push_back(-samples(i, 0));
  std::sort(neg.begin(), neg.end(), std::greater<>());
  CHECK(var.eta == doctest::Approx(neg[5]).epsilon(1e-4));
}

TEST_CASE("too large a radius has no VaR") {
  const testing::T1 t;
  CHECK_THROWS_AS((void)bonferroni_var(t.scen, t.sys, 0, {0.5, 1e30}, 0.5), UnboundedVaRError);
}

TEST_CASE("Bonferroni region sits inside the exact region") {
  const testing::T1 t;
  const AmbiguityConfig amb{0.5, 0.01};
  const MembershipOracle o(t.scen, t.sys, amb);
  for (double x = 0.0; x <= 2.0; x += 0.01) {
    const std::vector<double> xv{x};
    if (o.margin(xv, Method::kBonferroni) > 1e-6)
      CHECK(exact_feasible(xv, t.scen, t.sys, amb).feasible);
  }
}

}
