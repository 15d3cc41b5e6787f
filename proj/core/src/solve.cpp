#include "wdrjcc/solve.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "backends.hpp"
#include "wdrjcc/error.hpp"

namespace wdrjcc {

void SolveOptions::validate() const {
  if (!(time_limit_s > 0)) throw ModelError("time_limit_s must be positive");
  if (!(mip_gap > 0) || !(feasibility_tol > 0) || !(optimality_tol > 0) ||
      !(integer_tol > 0))
    throw ModelError("solver tolerances must be positive");
  if (threads < 1) throw ModelError("threads must be at least 1");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleTimeLimit: return "feasible-time-limit";
    case SolveStatus::kNoSolutionTimeLimit: return "infeasible-undetermined";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kError: return "error";
  }
  return "error";
}

std::unique_ptr<SolverBackend> make_backend(std::string_view name) {
  if (name == "highs") return detail::make_highs_backend();
  if (name == "simplex") return detail::make_simplex_backend();
  throw BackendError("unknown solver backend '" + std::string(name) + "'");
}

std::vector<std::string> backend_names() { return {"highs", "simplex"}; }

SolveResult solve(const Model& model, const SolveOptions& opts, SolverBackend& backend) {
  opts.validate();
  model.validate();
  if (model.has_integers() && !backend.supports_integers())
    throw BackendError("backend '" + backend.name() +
                       "' is LP-only and cannot solve models with binaries");
  const Model expanded = model.has_piecewise() ? model.expand_piecewise() : model;

  const auto start = std::chrono::steady_clock::now();
  BackendSolution sol = backend.solve(expanded, opts);
  const auto stop = std::chrono::steady_clock::now();

  SolveResult out;
  out.status = sol.status;
  out.wall_time_s = std::chrono::duration<double>(stop - start).count();
  out.gap = sol.gap;
  out.incumbents = std::move(sol.incumbents);
  out.message = std::move(sol.message);
  if (has_solution(sol.status)) {
    if (sol.values.size() != expanded.num_variables()) {
      out.status = SolveStatus::kError;
      out.message = "backend returned a solution of the wrong length";
      return out;
    }
    out.max_violation = expanded.max_violation(sol.values);
    sol.values.resize(model.num_variables());
    out.objective = model.evaluate_objective(sol.values);
    out.values = std::move(sol.values);
  }
  return out;
}

SolveResult solve(const Model& model, const SolveOptions& opts,
                  std::string_view backend_name) {
  auto backend = make_backend(backend_name);
  return solve(model, opts, *backend);
}

std::optional<double> time_to_first_comparable(const SolveResult& result,
                                               double target, double rel_gap) {
  if (!result.incumbents) return std::nullopt;
  const double threshold = target + rel_gap * std::abs(target);
  for (const IncumbentEvent& ev : *result.incumbents)
    if (ev.objective <= threshold) return ev.time_s;
  return std::nullopt;
}

}  // namespace wdrjcc
