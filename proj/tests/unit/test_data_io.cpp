#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "wdrjcc/data_io.hpp"
#include "wdrjcc/error.hpp"

using namespace wdrjcc;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "wdrjcc_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("data_io") {

TEST_CASE("T1 scenarios from CSV") {
  const Matrix m = parse_scenarios_csv("0.0\n0.1\n0.2\n0.3\n");
  CHECK(m.rows() == 4);
  CHECK(m.cols() == 1);
  CHECK(m(3, 0) == 0.3);
  const ScenarioSet s = load_scenarios(WDRJCC_TEST_DATA "/t1.csv");
  CHECK(s.N() == 4);
}

TEST_CASE("header row is optional") {
  std::vector<std::string> header;
  const Matrix m = parse_scenarios_csv("w1,w2\n1,2\n3,4\n", &header);
  CHECK(header == std::vector<std::string>{"w1", "w2"});
  CHECK(m.rows() == 2);
}

TEST_CASE("ragged and malformed CSV names the line") {
  try {
    (void)parse_scenarios_csv("1,2\n3,4\n5\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_scenarios_csv(""), ParseError);
  CHECK_THROWS_AS((void)parse_scenarios_csv("1,abc\n"), ParseError);
}

TEST_CASE("CSV and JSON round trips are bitwise") {
  Matrix m(3, 2);
  m(0, 0) = 0.1;
  m(0, 1) = -1.0 / 3.0;
  m(1, 0) = 1e-300;
  m(1, 1) = 12345.678901234567;
  m(2, 0) = -0.0;
  m(2, 1) = 2.0 / 7.0;
  for (ScenarioFormat f : {ScenarioFormat::kCsv, ScenarioFormat::kJson}) {
    const auto path = scratch(f == ScenarioFormat::kCsv ? "rt.csv" : "rt.json");
    save_scenarios(path, m, f);
    CHECK(load_scenarios(path).samples() == m);
  }
  CHECK(parse_scenarios_json(format_scenarios_json(m)) == m);
}

TEST_CASE("JSON with a wrong shape") {
  CHECK_THROWS_AS((void)parse_scenarios_json("{\"k\": 2, \"n\": 1, \"rows\": [[1]]}"), ParseError);
  CHECK_THROWS_AS((void)parse_scenarios_json("[1, 2"), ParseError);
}

TEST_CASE("points reject NaN") {
  CHECK_THROWS_AS((void)load_points(WDRJCC_TEST_DATA "/bad_points.csv"), ParseError);
  CHECK(load_points(WDRJCC_TEST_DATA "/t1_points.csv").size() == 2);
}

TEST_CASE("synthetic means") {
  SynthSpec spec;
  spec.K = 2;
  spec.N = 1000;
  spec.seed = 12;
  const Matrix m = synth_scenarios(spec).samples();
  for (std::size_t k = 0; k < 2; ++k) {
    double mean = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) mean += m(i, k);
    CHECK(std::abs(mean / 1000.0) < 0.15);
  }
}

TEST_CASE("synthetic lag-1 correlation") {
  SynthSpec spec;
  spec.K = 6;
  spec.N = 2000;
  spec.rho = 0.9;
  spec.seed = 5;
  const Matrix m = synth_scenarios(spec).samples();
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k + 1 < m.cols(); ++k) {
      sxy += m(i, k) * m(i, k + 1);
      sxx += m(i, k) * m(i, k);
      syy += m(i, k + 1) * m(i, k + 1);
    }
  const double r = sxy / std::sqrt(sxx * syy);
  CHECK(r > 0.8);
  CHECK(r < 1.0);
}

TEST_CASE("synthesis is deterministic and respects bounds") {
  SynthSpec spec;
  spec.K = 3;
  spec.N = 200;
  spec.holdout = 50;
  spec.marginal = Marginal::kUniform;
  spec.a = -1.0;
  spec.b = 2.0;
  spec.seed = 99;
  const ScenarioSet a = synth_scenarios(spec);
  const ScenarioSet b = synth_scenarios(spec);
  CHECK(a.samples() == b.samples());
  CHECK(a.holdout() == b.holdout());
  CHECK(a.holdout().rows() == 50);
  for (double v : a.samples().data()) {
    CHECK(v >= -1.0);
    CHECK(v <= 2.0);
  }
  spec.rho = 1.0;
  CHECK_THROWS_AS(spec.validate(), ModelError);
}

}
