#include <doctest.h>

#include "support.hpp"
#include "wdrjcc/compare.hpp"

using namespace wdrjcc;

TEST_SUITE("compare") {

TEST_CASE("T1 with unit kappa: SFLA and LA accept the same points") {
  const testing::T1 t;
  CompareOptions opts;
  opts.n_samples = 200;
  opts.seed = 1;
  const RegionComparison rep = compare_regions(t.scen, t.sys, t.amb, opts);
  CHECK(rep.consistent());
  CHECK(rep.unit_kappa);
  CHECK(rep.accepted.at("LA") == rep.accepted.at("SFLA"));
  CHECK(rep.accepted.at("SFLA") > 0);
  CHECK(rep.witnesses.empty());
}

TEST_CASE("no samples is vacuously consistent") {
  const testing::T1 t;
  CompareOptions opts;
  opts.n_samples = 0;
  const RegionComparison rep = compare_regions(t.scen, t.sys, t.amb, opts);
  CHECK(rep.samples == 0);
  CHECK(rep.consistent());
  CHECK(rep.accepted.at("Exact") == 0);
}

TEST_CASE("random kappa: LA accepts no more than SFLA") {
  Rng rng(9);
  for (int inst = 0; inst < 5; ++inst) {
    const testing::RandomInstance ri = testing::random_instance(rng);
    CompareOptions opts;
    opts.n_samples = 60;
    opts.seed = static_cast<std::uint64_t>(inst);
    opts.params.kappa.resize(ri.scen.N());
    for (double& k : opts.params.kappa) k = rng.uniform(0.2, 1.0);
    const RegionComparison rep = compare_regions(ri.scen, ri.sys, ri.amb, opts);
    CHECK(rep.consistent());
    CHECK(rep.accepted.at("LA") <= rep.accepted.at("SFLA"));
    CHECK(rep.accepted.at("SFLA") <= rep.accepted.at("Exact"));
  }
}

TEST_CASE("LA region grows with a uniform kappa") {
  const testing::T1 t;
  std::size_t prev = 0;
  for (double kappa : {0.5, 0.75, 1.0}) {
    CompareOptions opts;
    opts.n_samples = 100;
    opts.seed = 4;
    opts.params.kappa.assign(4, kappa);
    const RegionComparison rep = compare_regions(t.scen, t.sys, t.amb, opts);
    CHECK(rep.accepted.at("LA") >= prev);
    prev = rep.accepted.at("LA");
  }
}

TEST_CASE("a tampered radius is reported, not swallowed") {
  const testing::T1 t;
  CompareOptions opts;
  opts.n_samples = 100;
  opts.params.theta_scale = 0.5;
  const RegionComparison rep = compare_regions(t.scen, t.sys, t.amb, opts);
  CHECK_FALSE(rep.consistent());
  CHECK(rep.to_json().find("counterexamples") != std::string::npos);
}

}
