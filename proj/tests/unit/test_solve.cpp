#include <doctest.h>

#include "wdrjcc/error.hpp"
#include "wdrjcc/solve.hpp"

using namespace wdrjcc;

namespace {

SolveOptions quiet() {
  SolveOptions o;
  o.threads = 1;
  o.time_limit_s = 30.0;
  return o;
}

}  // namespace

TEST_SUITE("solve") {

TEST_CASE("min x subject to x >= 3") {
  for (const char* backend : {"highs", "simplex"}) {
    CAPTURE(backend);
    Model m;
    const VarId x = m.add_continuous(0.0, 10.0);
    m.add_objective_term(x, 1.0);
    m.add_constraint({{x, 1.0}}, RowSense::kGreaterEqual, 3.0);
    const SolveResult r = solve(m, quiet(), backend);
    REQUIRE(r.status == SolveStatus::kOptimal);
    CHECK(*r.objective == doctest::Approx(3.0));
    CHECK(r.values[0] == doctest::Approx(3.0));
    CHECK(r.wall_time_s >= 0.0);
  }
}

TEST_CASE("infeasible and unbounded models") {
  for (const char* backend : {"highs", "simplex"}) {
    CAPTURE(backend);
    Model inf;
    const VarId x = inf.add_continuous(0.0, 1.0);
    inf.add_constraint({{x, 1.0}}, RowSense::kGreaterEqual, 2.0);
    CHECK(solve(inf, quiet(), backend).status == SolveStatus::kInfeasible);

    Model unb(ObjSense::kMaximize);
    const VarId y = unb.add_continuous(0.0, kInf);
    unb.add_objective_term(y, 1.0);
    unb.add_constraint({{y, 1.0}}, RowSense::kGreaterEqual, 1.0);
    CHECK(solve(unb, quiet(), backend).status == SolveStatus::kUnbounded);
  }
}

TEST_CASE("simplex agrees with HiGHS on a small LP") {
  Model m(ObjSense::kMaximize);
  const VarId x = m.add_continuous(0.0, kInf);
  const VarId y = m.add_continuous(0.0, 4.0);
  m.add_objective_term(x, 3.0);
  m.add_objective_term(y, 2.0);
  m.add_constraint({{x, 1.0}, {y, 1.0}}, RowSense::kLessEqual, 6.0);
  m.add_constraint({{x, 1.0}, {y, -1.0}}, RowSense::kLessEqual, 2.0);
  m.add_constraint({{x, 1.0}, {y, 2.0}}, RowSense::kEqual, 8.0);
  const SolveResult a = solve(m, quiet(), "highs");
  const SolveResult b = solve(m, quiet(), "simplex");
  REQUIRE(a.status == SolveStatus::kOptimal);
  REQUIRE(b.status == SolveStatus::kOptimal);
  CHECK(*a.objective == doctest::Approx(*b.objective));
  CHECK(*a.objective == doctest::Approx(16.0));
}

TEST_CASE("MIP with binaries") {
  Model m(ObjSense::kMaximize);
  const VarId a = m.add_binary();
  const VarId b = m.add_binary();
  const VarId c = m.add_binary();
  m.add_objective_term(a, 5.0);
  m.add_objective_term(b, 4.0);
  m.add_objective_term(c, 3.0);
  m.add_constraint({{a, 2.0}, {b, 3.0}, {c, 1.0}}, RowSense::kLessEqual, 4.0);
  const SolveResult r = solve(m, quiet(), "highs");
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(*r.objective == doctest::Approx(8.0));
  CHECK(r.incumbents.has_value());
  CHECK_THROWS_AS((void)solve(m, quiet(), "simplex"), BackendError);
}

TEST_CASE("piecewise objective is minimized through its epigraph") {
  Model m;
  const VarId x = m.add_continuous(0.0, 4.0);
  m.add_piecewise_objective({x, {0.0, 2.0, 4.0}, {-1.0, 1.0}, 0.0});
  const SolveResult r = solve(m, quiet());
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(r.values.size() == 1);
  CHECK(r.values[0] == doctest::Approx(2.0));
  CHECK(*r.objective == doctest::Approx(-2.0));
}

TEST_CASE("unknown backend and bad options") {
  CHECK_THROWS_AS((void)make_backend("cplex"), BackendError);
  SolveOptions o;
  o.time_limit_s = 0.0;
  CHECK_THROWS_AS(o.validate(), ModelError);
}

TEST_CASE("first comparable incumbent") {
  SolveResult r;
  r.incumbents = std::vector<IncumbentEvent>{{0.1, 10.0}, {0.4, 5.02}, {0.9, 5.0}};
  CHECK(time_to_first_comparable(r, 5.0, 1e-3) == doctest::Approx(0.9));
  CHECK(time_to_first_comparable(r, 5.0, 1e-2) == doctest::Approx(0.4));
  r.incumbents.reset();
  CHECK_FALSE(time_to_first_comparable(r, 5.0, 1e-3).has_value());
}

}
