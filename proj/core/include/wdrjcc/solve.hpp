#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wdrjcc/model.hpp"

namespace wdrjcc {

/// Defaults: 1e-9 tolerances, 0.1% relative MIP gap, 4 threads, one hour.
struct SolveOptions {
  double time_limit_s = 3600.0;
  double mip_gap = 1e-3;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double integer_tol = 1e-9;
  int seed = 0;
  int threads = 4;

  /// Throws ModelError when a limit or tolerance is not positive.
  void validate() const;
};

enum class SolveStatus {
  kOptimal,
  kFeasibleTimeLimit,
  /// Limit reached before any feasible point was found.
  kNoSolutionTimeLimit,
  kInfeasible,
  kUnbounded,
  kError,
};

[[nodiscard]] std::string_view to_string(SolveStatus status);
[[nodiscard]] inline bool has_solution(SolveStatus s) {
  return s == SolveStatus::kOptimal || s == SolveStatus::kFeasibleTimeLimit;
}

/// One improving incumbent reported by the backend during a MIP search.
struct IncumbentEvent {
  double time_s;
  double objective;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kError;
  std::optional<double> objective;
  std::vector<double> values;  // empty unless has_solution(status)
  double wall_time_s = 0.0;
  double gap = 0.0;
  /// Set by callers that know the comparison target (see
  /// time_to_first_comparable()).
  std::optional<double> time_to_first_comparable_s;
  /// Empty optional when the backend cannot report incumbents.
  std::optional<std::vector<IncumbentEvent>> incumbents;
  /// Largest row/bound violation of `values` against the expanded model.
  double max_violation = 0.0;
  std::string message;
};

/// Backend-level answer, before the wrapper adds timing and checks.
struct BackendSolution {
  SolveStatus status = SolveStatus::kError;
  double objective = 0.0;
  std::vector<double> values;
  double gap = 0.0;
  std::optional<std::vector<IncumbentEvent>> incumbents;
  std::string message;
};

/// Synchronous solve contract. Implementations receive a model without
/// piecewise terms and must not keep state between calls.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual bool supports_integers() const = 0;
  [[nodiscard]] virtual bool reports_incumbents() const = 0;
  virtual BackendSolution solve(const Model& model, const SolveOptions& opts) = 0;
};

/// Known names: "highs" (LP/MIP) and "simplex" (dense LP only).
/// Throws BackendError for anything else.
[[nodiscard]] std::unique_ptr<SolverBackend> make_backend(std::string_view name);
[[nodiscard]] std::vector<std::string> backend_names();

/// Expands piecewise terms, runs the backend and measures wall time around
/// the call. Solution values are truncated back to the caller's variables.
/// Throws BackendError when the backend cannot take the model (binaries on
/// an LP-only backend).
SolveResult solve(const Model& model, const SolveOptions& opts, SolverBackend& backend);
SolveResult solve(const Model& model, const SolveOptions& opts,
                  std::string_view backend_name = "highs");

/// First incumbent time with objective within `rel_gap` of `target`
/// (minimization). Empty when no incumbent trace is available or none
/// qualifies.
[[nodiscard]] std::optional<double> time_to_first_comparable(
    const SolveResult& result, double target, double rel_gap);

}  // namespace wdrjcc
