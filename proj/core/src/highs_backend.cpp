#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "Highs.h"
#include "backends.hpp"

namespace wdrjcc::detail {
namespace {

double to_highs(double v) {
  if (std::isinf(v)) return v > 0 ? kHighsInf : -kHighsInf;
  return v;
}

HighsModel to_highs_model(const Model& m) {
  HighsModel hm;
  HighsLp& lp = hm.lp_;
  const auto n = static_cast<HighsInt>(m.num_variables());
  const auto rows = static_cast<HighsInt>(m.num_constraints());
  lp.num_col_ = n;
  lp.num_row_ = rows;
  lp.sense_ = m.objective().sense == wdrjcc::ObjSense::kMinimize
                  ? ::ObjSense::kMinimize
                  : ::ObjSense::kMaximize;
  lp.offset_ = m.objective().constant;
  lp.col_cost_.assign(static_cast<std::size_t>(n), 0.0);
  for (const Term& t : m.objective().terms)
    lp.col_cost_[static_cast<std::size_t>(t.var)] += t.coef;
  lp.col_lower_.resize(static_cast<std::size_t>(n));
  lp.col_upper_.resize(static_cast<std::size_t>(n));
  bool any_int = false;
  lp.integrality_.assign(static_cast<std::size_t>(n), HighsVarType::kContinuous);
  for (HighsInt j = 0; j < n; ++j) {
    const VarDecl& v = m.variable(static_cast<VarId>(j));
    lp.col_lower_[static_cast<std::size_t>(j)] = to_highs(v.lower);
    lp.col_upper_[static_cast<std::size_t>(j)] = to_highs(v.upper);
    if (v.kind == VarKind::kBinary) {
      lp.integrality_[static_cast<std::size_t>(j)] = HighsVarType::kInteger;
      any_int = true;
    }
  }
  if (!any_int) lp.integrality_.clear();

  lp.row_lower_.resize(static_cast<std::size_t>(rows));
  lp.row_upper_.resize(static_cast<std::size_t>(rows));
  std::vector<std::vector<std::pair<HighsInt, double>>> cols(static_cast<std::size_t>(n));
  for (HighsInt i = 0; i < rows; ++i) {
    const LinRow& row = m.constraint(static_cast<RowId>(i));
    double lo = -kHighsInf, hi = kHighsInf;
    switch (row.sense) {
      case RowSense::kLessEqual: hi = row.rhs; break;
      case RowSense::kGreaterEqual: lo = row.rhs; break;
      case RowSense::kEqual: lo = hi = row.rhs; break;
    }
    lp.row_lower_[static_cast<std::size_t>(i)] = lo;
    lp.row_upper_[static_cast<std::size_t>(i)] = hi;
    for (const Term& t : row.terms) cols[static_cast<std::size_t>(t.var)].emplace_back(i, t.coef);
  }
  HighsSparseMatrix& a = lp.a_matrix_;
  a.format_ = MatrixFormat::kColwise;
  a.num_col_ = n;
  a.num_row_ = rows;
  a.start_.assign(1, 0);
  for (const auto& col : cols) {
    for (const auto& [i, v] : col) {
      a.index_.push_back(i);
      a.value_.push_back(v);
    }
    a.start_.push_back(static_cast<HighsInt>(a.index_.size()));
  }
  return hm;
}

class HighsBackend final : public SolverBackend {
 public:
  [[nodiscard]] std::string name() const override { return "highs"; }
  [[nodiscard]] bool supports_integers() const override { return true; }
  [[nodiscard]] bool reports_incumbents() const override { return true; }

  BackendSolution solve(const Model& model, const SolveOptions& opts) override {
    BackendSolution out;
    Highs highs;
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("time_limit", opts.time_limit_s);
    highs.setOptionValue("mip_rel_gap", opts.mip_gap);
    highs.setOptionValue("primal_feasibility_tolerance", opts.feasibility_tol);
    highs.setOptionValue("dual_feasibility_tolerance", opts.optimality_tol);
    highs.setOptionValue("mip_feasibility_tolerance", opts.integer_tol);
    highs.setOptionValue("random_seed", static_cast<HighsInt>(opts.seed));
    highs.setOptionValue("threads", static_cast<HighsInt>(opts.threads));

    if (highs.passModel(to_highs_model(model)) == HighsStatus::kError) {
      out.message = "HiGHS rejected the model";
      return out;
    }
    const bool mip = model.has_integers();
    std::vector<IncumbentEvent> trace;
    if (mip) {
      highs.setCallback(
          [](int type, const std::string&, const HighsCallbackOutput* data,
             HighsCallbackInput*, void* user) {
            if (type != kCallbackMipImprovingSolution) return;
            static_cast<std::vector<IncumbentEvent>*>(user)->push_back(
                {data->running_time, data->objective_function_value});
          },
          &trace);
      highs.startCallback(kCallbackMipImprovingSolution);
    }

    if (highs.run() == HighsStatus::kError) {
      out.message = "HiGHS run failed";
      return out;
    }
    HighsModelStatus status = highs.getModelStatus();
    if (status == HighsModelStatus::kUnboundedOrInfeasible) {
      // Presolve cannot tell the two apart; the simplex without presolve can.
      highs.setOptionValue("presolve", "off");
      highs.clearSolver();
      highs.run();
      status = highs.getModelStatus();
    }
    const HighsInfo& info = highs.getInfo();
    const bool feasible_point = info.primal_solution_status == kSolutionStatusFeasible;
    switch (status) {
      case HighsModelStatus::kOptimal: out.status = SolveStatus::kOptimal; break;
      case HighsModelStatus::kInfeasible: out.status = SolveStatus::kInfeasible; break;
      case HighsModelStatus::kUnbounded: out.status = SolveStatus::kUnbounded; break;
      case HighsModelStatus::kUnboundedOrInfeasible:
        out.status = SolveStatus::kInfeasible;
        out.message = "unbounded or infeasible";
        break;
      case HighsModelStatus::kTimeLimit:
      case HighsModelStatus::kIterationLimit:
      case HighsModelStatus::kSolutionLimit:
      case HighsModelStatus::kInterrupt:
        out.status = feasible_point ? SolveStatus::kFeasibleTimeLimit
                                    : SolveStatus::kNoSolutionTimeLimit;
        break;
      default:
        out.status = SolveStatus::kError;
        out.message = highs.modelStatusToString(status);
        break;
    }
    if (has_solution(out.status)) {
      out.values = highs.getSolution().col_value;
      out.objective = info.objective_function_value;
      out.gap = mip ? info.mip_gap : 0.0;
      if (!mip) trace.push_back({highs.getRunTime(), out.objective});
    }
    out.incumbents = std::move(trace);
    return out;
  }
};

}  // namespace

std::unique_ptr<SolverBackend> make_highs_backend() {
  return std::make_unique<HighsBackend>();
}

}  // namespace wdrjcc::detail
