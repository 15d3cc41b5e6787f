#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wdrjcc {

using VarId = int;
using RowId = int;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { kContinuous, kBinary };
enum class RowSense { kLessEqual, kGreaterEqual, kEqual };
enum class ObjSense { kMinimize, kMaximize };

struct VarDecl {
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInf;
  std::string name;
};

struct Term {
  VarId var;
  double coef;
};

/// Sparse linear row `sum coef * var (sense) rhs`.
struct LinRow {
  std::vector<Term> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

/// Convex piecewise-linear function of one variable, defined on
/// [breakpoints.front(), breakpoints.back()] by its value at the first
/// breakpoint and one slope per segment.
struct PiecewiseTerm {
  VarId var = 0;
  std::vector<double> breakpoints;
  std::vector<double> slopes;
  double value_at_first = 0.0;

  [[nodiscard]] double evaluate(double x) const;
};

struct Objective {
  ObjSense sense = ObjSense::kMinimize;
  std::vector<Term> terms;
  double constant = 0.0;
  std::vector<PiecewiseTerm> piecewise;
};

/// Solver-agnostic optimization model: variables with bounds, sparse linear
/// rows and a linear (optionally convex piecewise-linear) objective.
class Model {
 public:
  Model() = default;
  explicit Model(ObjSense sense) { objective_.sense = sense; }

  /// Throws ModelError on inverted bounds or binary bounds outside [0,1].
  VarId add_variable(VarKind kind, double lower, double upper,
                     std::string name = {});
  VarId add_continuous(double lower, double upper, std::string name = {}) {
    return add_variable(VarKind::kContinuous, lower, upper, std::move(name));
  }
  VarId add_binary(std::string name = {}) {
    return add_variable(VarKind::kBinary, 0.0, 1.0, std::move(name));
  }

  /// Appends the row after merging duplicate variables and dropping zero
  /// coefficients. Throws ModelError on an undeclared variable id.
  RowId add_constraint(LinRow row);
  RowId add_constraint(std::vector<Term> terms, RowSense sense, double rhs,
                       std::string name = {});

  void set_bounds(VarId var, double lower, double upper);

  void set_objective_sense(ObjSense sense) { objective_.sense = sense; }
  /// Adds `coef` to the linear objective coefficient of `var`.
  void add_objective_term(VarId var, double coef);
  void set_objective_constant(double c) { objective_.constant = c; }
  /// Throws ModelError when the term is malformed or, for minimization,
  /// not convex.
  void add_piecewise_objective(PiecewiseTerm term);

  [[nodiscard]] std::size_t num_variables() const { return vars_.size(); }
  [[nodiscard]] std::size_t num_constraints() const { return rows_.size(); }
  [[nodiscard]] const VarDecl& variable(VarId id) const;
  [[nodiscard]] const LinRow& constraint(RowId id) const;
  [[nodiscard]] const std::vector<VarDecl>& variables() const { return vars_; }
  [[nodiscard]] const std::vector<LinRow>& constraints() const { return rows_; }
  [[nodiscard]] const Objective& objective() const { return objective_; }
  [[nodiscard]] bool has_integers() const;
  [[nodiscard]] bool has_piecewise() const { return !objective_.piecewise.empty(); }
  /// Display name of a variable; unnamed variables print as `x<id>`.
  [[nodiscard]] std::string variable_name(VarId id) const;

  /// Copy with every piecewise term replaced by an epigraph variable and one
  /// `>=` row per segment. Variable ids of the original model are preserved.
  [[nodiscard]] Model expand_piecewise() const;

  /// Objective value of `values` (piecewise terms evaluated exactly).
  [[nodiscard]] double evaluate_objective(std::span<const double> values) const;
  /// Largest violation of any row or variable bound by `values`.
  [[nodiscard]] double max_violation(std::span<const double> values) const;

  /// Re-checks every invariant; throws ModelError on the first failure.
  void validate() const;

 private:
  void check_var(VarId id) const;

  std::vector<VarDecl> vars_;
  std::vector<LinRow> rows_;
  Objective objective_;
};

/// Activity `sum coef * values[var]` of a row.
[[nodiscard]] double row_activity(const LinRow& row,
                                  std::span<const double> values);

}  // namespace wdrjcc
