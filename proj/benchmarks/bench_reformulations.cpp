#include <benchmark/benchmark.h>

#include "wdrjcc/instance.hpp"
#include "wdrjcc/oracle.hpp"
#include "wdrjcc/reformulations.hpp"
#include "wdrjcc/rng.hpp"
#include "wdrjcc/solve.hpp"
#include "wdrjcc/uc.hpp"

using namespace wdrjcc;

namespace {

struct Synthetic {
  ScenarioSet scen;
  SafetySystem sys;
};

Synthetic synthetic(std::size_t N, std::size_t P) {
  Rng rng(42);
  const std::size_t K = 5, L = 3;
  Matrix samples(N, K);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < K; ++k) samples(i, k) = rng.normal(0.0, 0.3);
  std::vector<SafetyRow> rows;
  for (std::size_t p = 0; p < P; ++p) {
    SafetyRow r;
    for (std::size_t j = 0; j < L; ++j) r.a.push_back(rng.uniform(0.2, 1.0));
    for (std::size_t k = 0; k < K; ++k) r.b.push_back(rng.uniform(-1.0, 1.0));
    r.d = rng.uniform(1.0, 3.0);
    rows.push_back(std::move(r));
  }
  return {ScenarioSet(std::move(samples)),
          SafetySystem(std::move(rows), NormKind::kL2, std::vector<Bounds>(L, {0.0, 5.0}))};
}

Model host(const SafetySystem& sys, std::vector<VarId>& x) {
  Model m(ObjSense::kMaximize);
  for (std::size_t j = 0; j < sys.L(); ++j) {
    x.push_back(m.add_continuous(0.0, 5.0));
    m.add_objective_term(x.back(), 1.0);
  }
  return m;
}

void BM_Build(benchmark::State& state, Method method) {
  const Synthetic s = synthetic(static_cast<std::size_t>(state.range(0)), 20);
  const AmbiguityConfig amb{0.05, 0.05};
  for (auto _ : state) {
    std::vector<VarId> x;
    Model m = host(s.sys, x);
    const ReformulationBlock b =
        build_block(method, m, XExpression::from_system(s.sys, x), s.scen, s.sys, amb);
    benchmark::DoNotOptimize(b.rows.data());
  }
}

void BM_BuildSolve(benchmark::State& state, Method method) {
  const Synthetic s = synthetic(static_cast<std::size_t>(state.range(0)), 20);
  const AmbiguityConfig amb{0.05, 0.05};
  SolveOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    std::vector<VarId> x;
    Model m = host(s.sys, x);
    (void)build_block(method, m, XExpression::from_system(s.sys, x), s.scen, s.sys, amb);
    const SolveResult r = solve(m, opts);
    benchmark::DoNotOptimize(r.objective);
  }
}

void BM_ExactOracle(benchmark::State& state) {
  const Synthetic s = synthetic(static_cast<std::size_t>(state.range(0)), 20);
  const AmbiguityConfig amb{0.05, 0.05};
  const std::vector<double> x{0.5, 0.5, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(exact_feasible(x, s.scen, s.sys, amb).margin);
}

void BM_UCTiny(benchmark::State& state, Method method) {
  const UCInstance inst = generate_uc_instance("tiny", 1, 20, 0);
  const AmbiguityConfig amb{0.05, 0.1};
  SolveOptions opts;
  opts.threads = 1;
  opts.time_limit_s = 60.0;
  for (auto _ : state) {
    const UCModel m = build_uc_model(inst.config, inst.scenarios, amb, method);
    const SolveResult r = solve(m.model, opts);
    benchmark::DoNotOptimize(r.objective);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Build, sfla, Method::kSFLA)->Arg(100)->Arg(500)->Arg(2000);
BENCHMARK_CAPTURE(BM_Build, la, Method::kLA)->Arg(100)->Arg(500)->Arg(2000);
BENCHMARK_CAPTURE(BM_BuildSolve, sfla, Method::kSFLA)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BuildSolve, la, Method::kLA)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BuildSolve, wcvar, Method::kWCVaR)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactOracle)->Arg(100)->Arg(500)->Arg(2000);
BENCHMARK_CAPTURE(BM_UCTiny, sfla, Method::kSFLA)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_UCTiny, exacts, Method::kExactS)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_UCTiny, la, Method::kLA)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
