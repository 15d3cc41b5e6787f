// Dense two-phase primal simplex with Bland's rule. Meant for small LPs and
// for environments without a MIP engine; it refuses binaries.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "backends.hpp"

namespace wdrjcc::detail {
namespace {

constexpr double kPivotTol = 1e-9;

// x_j = offset + sign * y_pos  (- y_neg for free variables)
struct ColumnMap {
  double offset = 0.0;
  double sign = 1.0;
  int pos = -1;
  int neg = -1;
};

class DenseTableau {
 public:
  DenseTableau(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols + 1), 0.0) {}

  double& at(int i, int j) {
    return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_ + 1) +
                 static_cast<std::size_t>(j)];
  }
  double& rhs(int i) { return at(i, cols_); }
  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }

  void pivot(int r, int e, std::vector<double>& reduced) {
    const double p = at(r, e);
    for (int j = 0; j <= cols_; ++j) at(r, j) /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
    }
    const double f = reduced[static_cast<std::size_t>(e)];
    if (f != 0.0)
      for (int j = 0; j <= cols_; ++j) reduced[static_cast<std::size_t>(j)] -= f * at(r, j);
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

enum class PhaseResult { kOptimal, kUnbounded, kLimit };

class SimplexBackend final : public SolverBackend {
 public:
  [[nodiscard]] std::string name() const override { return "simplex"; }
  [[nodiscard]] bool supports_integers() const override { return false; }
  [[nodiscard]] bool reports_incumbents() const override { return false; }

  BackendSolution solve(const Model& model, const SolveOptions& opts) override {
    BackendSolution out;
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(opts.time_limit_s));
    const std::size_t n = model.num_variables();

    // Structural columns y >= 0.
    std::vector<ColumnMap> map(n);
    int ny = 0;
    struct ExtraRow {
      int col;
      double ub;
    };
    std::vector<ExtraRow> upper_rows;
    for (std::size_t j = 0; j < n; ++j) {
      const VarDecl& v = model.variable(static_cast<VarId>(j));
      ColumnMap& c = map[j];
      if (std::isfinite(v.lower)) {
        c.offset = v.lower;
        c.pos = ny++;
        if (std::isfinite(v.upper)) upper_rows.push_back({c.pos, v.upper - v.lower});
      } else if (std::isfinite(v.upper)) {
        c.offset = v.upper;
        c.sign = -1.0;
        c.pos = ny++;
      } else {
        c.pos = ny++;
        c.neg = ny++;
      }
    }

    struct DenseRow {
      std::vector<double> coef;
      RowSense sense;
      double rhs;
    };
    std::vector<DenseRow> rows;
    rows.reserve(model.num_constraints() + upper_rows.size());
    for (const LinRow& row : model.constraints()) {
      DenseRow d{std::vector<double>(static_cast<std::size_t>(ny), 0.0), row.sense, row.rhs};
      for (const Term& t : row.terms) {
        const ColumnMap& c = map[static_cast<std::size_t>(t.var)];
        d.rhs -= t.coef * c.offset;
        d.coef[static_cast<std::size_t>(c.pos)] += t.coef * c.sign;
        if (c.neg >= 0) d.coef[static_cast<std::size_t>(c.neg)] -= t.coef;
      }
      rows.push_back(std::move(d));
    }
    for (const ExtraRow& u : upper_rows) {
      DenseRow d{std::vector<double>(static_cast<std::size_t>(ny), 0.0), RowSense::kLessEqual, u.ub};
      d.coef[static_cast<std::size_t>(u.col)] = 1.0;
      rows.push_back(std::move(d));
    }

    const int m = static_cast<int>(rows.size());
    int ns = 0;
    for (const DenseRow& r : rows) ns += r.sense == RowSense::kEqual ? 0 : 1;
    const int art0 = ny + ns;
    const int total = art0 + m;
    DenseTableau tab(m, total);
    basis_.assign(static_cast<std::size_t>(m), 0);
    int slack = ny;
    for (int i = 0; i < m; ++i) {
      const DenseRow& r = rows[static_cast<std::size_t>(i)];
      const double flip = r.rhs < 0 ? -1.0 : 1.0;
      for (int j = 0; j < ny; ++j) tab.at(i, j) = flip * r.coef[static_cast<std::size_t>(j)];
      if (r.sense == RowSense::kLessEqual) tab.at(i, slack++) = flip;
      if (r.sense == RowSense::kGreaterEqual) tab.at(i, slack++) = -flip;
      tab.at(i, art0 + i) = 1.0;
      tab.rhs(i) = flip * r.rhs;
      basis_[static_cast<std::size_t>(i)] = art0 + i;
    }

    // Phase I: minimize the sum of artificials.
    std::vector<double> cost1(static_cast<std::size_t>(total), 0.0);
    for (int i = 0; i < m; ++i) cost1[static_cast<std::size_t>(art0 + i)] = 1.0;
    double scale = 1.0;
    for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(tab.rhs(i)));
    PhaseResult p1 = run_phase(tab, cost1, total);
    if (p1 == PhaseResult::kLimit) {
      out.status = SolveStatus::kNoSolutionTimeLimit;
      return out;
    }
    double infeas = 0.0;
    for (int i = 0; i < m; ++i)
      if (basis_[static_cast<std::size_t>(i)] >= art0) infeas += std::abs(tab.rhs(i));
    if (infeas > std::max(opts.feasibility_tol, 1e-9) * scale * 10.0) {
      out.status = SolveStatus::kInfeasible;
      return out;
    }
    // Drive zero-level artificials out of the basis where possible.
    std::vector<double> dummy(static_cast<std::size_t>(total + 1), 0.0);
    for (int i = 0; i < m; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < art0) continue;
      for (int j = 0; j < art0; ++j) {
        if (std::abs(tab.at(i, j)) > kPivotTol) {
          tab.pivot(i, j, dummy);
          basis_[static_cast<std::size_t>(i)] = j;
          break;
        }
      }
    }

    // Phase II on structural + slack columns only.
    const double sense = model.objective().sense == ObjSense::kMinimize ? 1.0 : -1.0;
    std::vector<double> cost2(static_cast<std::size_t>(total), 0.0);
    double const_term = model.objective().constant;
    for (const Term& t : model.objective().terms) {
      const ColumnMap& c = map[static_cast<std::size_t>(t.var)];
      const_term += t.coef * c.offset;
      cost2[static_cast<std::size_t>(c.pos)] += sense * t.coef * c.sign;
      if (c.neg >= 0) cost2[static_cast<std::size_t>(c.neg)] -= sense * t.coef;
    }
    PhaseResult p2 = run_phase(tab, cost2, art0);
    if (p2 == PhaseResult::kLimit) {
      out.status = SolveStatus::kFeasibleTimeLimit;
    } else if (p2 == PhaseResult::kUnbounded) {
      out.status = SolveStatus::kUnbounded;
      return out;
    } else {
      out.status = SolveStatus::kOptimal;
    }

    std::vector<double> y(static_cast<std::size_t>(total), 0.0);
    for (int i = 0; i < m; ++i) y[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = tab.rhs(i);
    out.values.resize(n);
    double obj = const_term;
    for (std::size_t j = 0; j < n; ++j) {
      const ColumnMap& c = map[j];
      double x = c.offset + c.sign * y[static_cast<std::size_t>(c.pos)];
      if (c.neg >= 0) x -= y[static_cast<std::size_t>(c.neg)];
      out.values[j] = x;
    }
    for (const Term& t : model.objective().terms)
      obj += t.coef * (out.values[static_cast<std::size_t>(t.var)] - map[static_cast<std::size_t>(t.var)].offset);
    out.objective = obj;
    return out;
  }

 private:
  // Minimizes cost over the tableau; only columns < allowed may enter.
  PhaseResult run_phase(DenseTableau& tab, const std::vector<double>& cost, int allowed) {
    const int m = tab.rows();
    const int cols = tab.cols();
    std::vector<double> reduced(static_cast<std::size_t>(cols + 1), 0.0);
    for (int j = 0; j < cols; ++j) reduced[static_cast<std::size_t>(j)] = cost[static_cast<std::size_t>(j)];
    for (int i = 0; i < m; ++i) {
      const double cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (cb == 0.0) continue;
      for (int j = 0; j <= cols; ++j) reduced[static_cast<std::size_t>(j)] -= cb * tab.at(i, j);
    }
    for (long iter = 0;; ++iter) {
      if ((iter & 63) == 0 && std::chrono::steady_clock::now() > deadline_)
        return PhaseResult::kLimit;
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (reduced[static_cast<std::size_t>(j)] < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return PhaseResult::kOptimal;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m; ++i) {
        const double a = tab.at(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = tab.rhs(i) / a;
        if (leave < 0 || ratio < best - 1e-12 ||
            (std::abs(ratio - best) <= 1e-12 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return PhaseResult::kUnbounded;
      tab.pivot(leave, enter, reduced);
      basis_[static_cast<std::size_t>(leave)] = enter;
    }
  }

  std::vector<int> basis_;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

std::unique_ptr<SolverBackend> make_simplex_backend() {
  return std::make_unique<SimplexBackend>();
}

}  // namespace wdrjcc::detail
