#include <doctest.h>

#include "support.hpp"
#include "wdrjcc/error.hpp"

using namespace wdrjcc;

TEST_SUITE("instance") {

TEST_CASE("dual norms") {
  CHECK(dual_norm(std::vector<double>{3.0, 4.0}, NormKind::kL2) == doctest::Approx(5.0));
  CHECK(dual_norm(std::vector<double>{1.0, -2.0}, NormKind::kL1) == doctest::Approx(2.0));
  CHECK(dual_norm(std::vector<double>{1.0, -2.0}, NormKind::kLinf) == doctest::Approx(3.0));
  CHECK(parse_norm("L2") == NormKind::kL2);
  CHECK(parse_norm("inf") == NormKind::kLinf);
  CHECK_THROWS_AS((void)parse_norm("l3"), ParseError);
}

TEST_CASE("k guards against floating point") {
  CHECK(AmbiguityConfig{0.5, 0.1}.k(4) == 2);
  CHECK(AmbiguityConfig{0.05, 0.1}.k(20) == 1);
  CHECK(AmbiguityConfig{0.07, 0.1}.k(100) == 7);
  CHECK(AmbiguityConfig{0.05, 0.1}.k(10) == 0);
  CHECK_THROWS_AS(AmbiguityConfig({1.0, 0.1}).validate(), ModelError);
  CHECK_THROWS_AS(AmbiguityConfig({0.1, 0.0}).validate(), ModelError);
}

TEST_CASE("order data on T1") {
  const testing::T1 t;
  const OrderData od = order_data(t.scen, t.sys, t.amb);
  CHECK(od.k == 2);
  CHECK(od.q[0] == doctest::Approx(0.2));
  CHECK(od.below[0] == std::vector<std::size_t>{0, 1});
}

TEST_CASE("k = 0 gives the minimum and an empty strict set") {
  const testing::T1 t;
  const OrderData od = order_data(t.scen, t.sys, {0.2, 0.05});
  CHECK(od.k == 0);
  CHECK(od.q[0] == doctest::Approx(0.0));
  CHECK(od.below[0].empty());
}

TEST_CASE("duplicates leave the strict set smaller than k") {
  const ScenarioSet scen(Matrix::from_rows({{0.2}, {0.2}, {0.2}, {0.3}}));
  const testing::T1 t;
  const OrderData od = order_data(scen, t.sys, t.amb);
  CHECK(od.q[0] == doctest::Approx(0.2));
  CHECK(od.below[0].empty());
  CHECK(od.total_below() == 0);
}

TEST_CASE("distance to the unsafe set") {
  const testing::T1 t;
  const std::vector<double> xi{0.0};
  CHECK(distance(std::vector<double>{0.9}, xi, t.sys) == doctest::Approx(0.1));
  CHECK(distance(std::vector<double>{1.0}, xi, t.sys) == 0.0);

  const SafetySystem two({{{0.0}, {1.0}, 0.5}, {{0.0}, {-1.0}, 0.2}}, NormKind::kL2, {{0.0, 1.0}});
  CHECK(distance(std::vector<double>{0.0}, xi, two) == doctest::Approx(0.2));
}

TEST_CASE("distance_hat keeps the sign") {
  const testing::T1 t;
  const std::vector<double> xi{0.0};
  CHECK(distance_hat(std::vector<double>{0.9}, xi, t.sys, 1.0) == doctest::Approx(0.1));
  CHECK(distance_hat(std::vector<double>{1.5}, xi, t.sys, 1.0) == doctest::Approx(-0.5));
  CHECK(distance(std::vector<double>{1.5}, xi, t.sys) == 0.0);
  CHECK(distance_hat(std::vector<double>{1.5}, xi, t.sys, 0.0) == 0.0);
  CHECK_THROWS_AS((void)distance_hat(std::vector<double>{0.0}, xi, t.sys, 1.5), ModelError);
}

TEST_CASE("system validation") {
  CHECK_THROWS_AS(SafetySystem({}, NormKind::kL2, {}), ModelError);
  CHECK_THROWS_AS(SafetySystem({{{1.0}, {0.0}, 1.0}}, NormKind::kL2, {{0.0, 1.0}}), ModelError);
  CHECK_THROWS_AS(SafetySystem({{{1.0, 2.0}, {1.0}, 1.0}}, NormKind::kL2, {{0.0, 1.0}}),
                  ModelError);
  CHECK_THROWS_AS(SafetySystem({{{1.0}, {1.0}, 1.0}}, NormKind::kL2, {{1.0, 0.0}}), ModelError);
  CHECK_THROWS_AS(ScenarioSet(Matrix{}), ModelError);
  const testing::T1 t;
  const ScenarioSet wide(Matrix::from_rows({{0.0, 1.0}}));
  CHECK_THROWS_AS(check_compatible(wide, t.sys), ModelError);
}

}
