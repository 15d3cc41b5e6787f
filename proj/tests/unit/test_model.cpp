#include <doctest.h>

#include "wdrjcc/error.hpp"
#include "wdrjcc/lp_writer.hpp"
#include "wdrjcc/model.hpp"

using namespace wdrjcc;

TEST_SUITE("model") {

TEST_CASE("variable ids are dense and in order") {
  Model m;
  CHECK(m.add_continuous(0.0, 1.0) == 0);
  CHECK(m.add_binary() == 1);
  CHECK(m.add_continuous(-kInf, kInf, "free") == 2);
  CHECK(m.num_variables() == 3);
  CHECK(m.has_integers());
  CHECK(m.variable_name(0) == "x0");
  CHECK(m.variable_name(2) == "free");
}

TEST_CASE("inverted bounds are rejected") {
  Model m;
  CHECK_THROWS_AS((void)m.add_continuous(2.0, 1.0), ModelError);
  CHECK_THROWS_AS((void)m.add_variable(VarKind::kBinary, 0.0, 2.0), ModelError);
}

TEST_CASE("undeclared variable in a row is rejected") {
  Model m;
  const VarId x = m.add_continuous(0.0, 1.0);
  CHECK_THROWS_AS(m.add_constraint({{x, 1.0}, {7, 1.0}}, RowSense::kLessEqual, 1.0), ModelError);
  CHECK(m.num_constraints() == 0);
}

TEST_CASE("duplicate terms merge and zeros drop") {
  Model m;
  const VarId x = m.add_continuous(0.0, 1.0);
  const VarId y = m.add_continuous(0.0, 1.0);
  const RowId r = m.add_constraint({{x, 1.0}, {y, 0.0}, {x, 2.0}}, RowSense::kLessEqual, 4.0);
  const LinRow& row = m.constraint(r);
  REQUIRE(row.terms.size() == 1);
  CHECK(row.terms[0].var == x);
  CHECK(row.terms[0].coef == 3.0);
}

TEST_CASE("LP text of a one-row model") {
  Model m;
  const VarId x = m.add_continuous(0.0, 5.0, "x");
  m.add_objective_term(x, 1.0);
  m.add_constraint({{x, 1.0}}, RowSense::kGreaterEqual, 3.0, "c0");
  const std::string lp = emit_lp_text(m);
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.rfind("End") != std::string::npos);

  const auto section = [&](const std::string& from, const std::string& to) {
    const std::size_t a = lp.find(from), b = lp.find(to);
    REQUIRE(a != std::string::npos);
    REQUIRE(b != std::string::npos);
    std::size_t lines = 0;
    for (std::size_t i = a; i < b; ++i) lines += lp[i] == '\n';
    return lines - 1;
  };
  CHECK(section("Subject To", "Bounds") == 1);
  CHECK(section("Bounds", "End") == 1);
  CHECK(emit_lp_text(m) == lp);
}

TEST_CASE("MPS text contains the standard sections") {
  Model m;
  const VarId x = m.add_continuous(0.0, 5.0);
  const VarId z = m.add_binary();
  m.add_objective_term(x, 1.0);
  m.add_constraint({{x, 1.0}, {z, -5.0}}, RowSense::kLessEqual, 0.0);
  const std::string mps = emit_mps_text(m);
  for (const char* s : {"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA", "MARKER"})
    CHECK(mps.find(s) != std::string::npos);
}

TEST_CASE("piecewise objective expands to epigraph rows") {
  Model m;
  const VarId x = m.add_continuous(0.0, 3.0);
  m.add_piecewise_objective({x, {0.0, 1.0, 3.0}, {1.0, 4.0}, 0.0});
  CHECK(m.evaluate_objective(std::vector<double>{2.0}) == doctest::Approx(5.0));
  const Model e = m.expand_piecewise();
  CHECK(e.num_variables() == 2);
  CHECK(e.num_constraints() == 2);
  CHECK_THROWS_AS(m.add_piecewise_objective({x, {0.0, 1.0, 3.0}, {4.0, 1.0}, 0.0}), ModelError);
}

TEST_CASE("max_violation measures rows and bounds") {
  Model m;
  const VarId x = m.add_continuous(0.0, 1.0);
  m.add_constraint({{x, 1.0}}, RowSense::kGreaterEqual, 0.5);
  CHECK(m.max_violation(std::vector<double>{0.75}) == 0.0);
  CHECK(m.max_violation(std::vector<double>{0.25}) == doctest::Approx(0.25));
  CHECK(m.max_violation(std::vector<double>{1.5}) == doctest::Approx(0.5));
}

}
