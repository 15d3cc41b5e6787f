#include "wdrjcc/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wdrjcc/error.hpp"

namespace wdrjcc {

double PiecewiseTerm::evaluate(double x) const {
  // Convex extension: extreme segments continue past the breakpoint range.
  double value = value_at_first;
  double at = breakpoints.front();
  if (x <= at) return value + slopes.front() * (x - at);
  for (std::size_t j = 0; j < slopes.size(); ++j) {
    const double next = breakpoints[j + 1];
    const bool last = j + 1 == slopes.size();
    if (x <= next || last) return value + slopes[j] * (x - at);
    value += slopes[j] * (next - at);
    at = next;
  }
  return value;
}

namespace {

std::vector<Term> normalize_terms(std::vector<Term> terms) {
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const Term& t : terms) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Term& o) { return o.var == t.var; });
    if (it == out.end())
      out.push_back(t);
    else
      it->coef += t.coef;
  }
  std::erase_if(out, [](const Term& t) { return t.coef == 0.0; });
  return out;
}

}  // namespace

void Model::check_var(VarId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= vars_.size())
    throw ModelError("undeclared variable id " + std::to_string(id));
}

VarId Model::add_variable(VarKind kind, double lower, double upper,
                          std::string name) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper)
    throw ModelError("inverted bounds [" + std::to_string(lower) + ", " +
                     std::to_string(upper) + "] for variable '" + name + "'");
  if (kind == VarKind::kBinary && (lower < 0.0 || upper > 1.0))
    throw ModelError("binary variable '" + name + "' has bounds outside [0,1]");
  vars_.push_back(VarDecl{kind, lower, upper, std::move(name)});
  return static_cast<VarId>(vars_.size() - 1);
}

RowId Model::add_constraint(LinRow row) {
  for (const Term& t : row.terms) check_var(t.var);
  if (std::isnan(row.rhs)) throw ModelError("row '" + row.name + "' has NaN rhs");
  row.terms = normalize_terms(std::move(row.terms));
  rows_.push_back(std::move(row));
  return static_cast<RowId>(rows_.size() - 1);
}

RowId Model::add_constraint(std::vector<Term> terms, RowSense sense, double rhs,
                            std::string name) {
  return add_constraint(LinRow{std::move(terms), sense, rhs, std::move(name)});
}

void Model::set_bounds(VarId var, double lower, double upper) {
  check_var(var);
  VarDecl& v = vars_[static_cast<std::size_t>(var)];
  if (std::isnan(lower) || std::isnan(upper) || lower > upper)
    throw ModelError("inverted bounds for variable " + variable_name(var));
  if (v.kind == VarKind::kBinary && (lower < 0.0 || upper > 1.0))
    throw ModelError("binary variable bounds outside [0,1]");
  v.lower = lower;
  v.upper = upper;
}

void Model::add_objective_term(VarId var, double coef) {
  check_var(var);
  auto it = std::find_if(objective_.terms.begin(), objective_.terms.end(),
                         [&](const Term& t) { return t.var == var; });
  if (it == objective_.terms.end())
    objective_.terms.push_back(Term{var, coef});
  else
    it->coef += coef;
}

void Model::add_piecewise_objective(PiecewiseTerm term) {
  check_var(term.var);
  if (term.breakpoints.size() < 2 ||
      term.slopes.size() + 1 != term.breakpoints.size())
    throw ModelError("piecewise term needs m+1 breakpoints for m slopes");
  for (std::size_t j = 1; j < term.breakpoints.size(); ++j)
    if (!(term.breakpoints[j] > term.breakpoints[j - 1]))
      throw ModelError("piecewise breakpoints must be strictly increasing");
  const bool minimize = objective_.sense == ObjSense::kMinimize;
  for (std::size_t j = 1; j < term.slopes.size(); ++j) {
    const bool ok = minimize ? term.slopes[j] >= term.slopes[j - 1]
                             : term.slopes[j] <= term.slopes[j - 1];
    if (!ok)
      throw ModelError(minimize
                           ? "piecewise objective term is not convex"
                           : "piecewise objective term is not concave");
  }
  objective_.piecewise.push_back(std::move(term));
}

const VarDecl& Model::variable(VarId id) const {
  check_var(id);
  return vars_[static_cast<std::size_t>(id)];
}

const LinRow& Model::constraint(RowId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= rows_.size())
    throw ModelError("unknown constraint id " + std::to_string(id));
  return rows_[static_cast<std::size_t>(id)];
}

bool Model::has_integers() const {
  return std::any_of(vars_.begin(), vars_.end(), [](const VarDecl& v) {
    return v.kind == VarKind::kBinary;
  });
}

std::string Model::variable_name(VarId id) const {
  const VarDecl& v = variable(id);
  return v.name.empty() ? "x" + std::to_string(id) : v.name;
}

Model Model::expand_piecewise() const {
  Model out = *this;
  out.objective_.piecewise.clear();
  const bool minimize = objective_.sense == ObjSense::kMinimize;
  int counter = 0;
  for (const PiecewiseTerm& pw : objective_.piecewise) {
    const VarId t = out.add_continuous(-kInf, kInf,
                                       "pwl_" + std::to_string(counter++));
    out.add_objective_term(t, 1.0);
    double value = pw.value_at_first;
    for (std::size_t j = 0; j < pw.slopes.size(); ++j) {
      const double at = pw.breakpoints[j];
      // minimize: t >= value + slope (x - at)  <=>  t - slope x >= value - slope at
      out.add_constraint({{t, 1.0}, {pw.var, -pw.slopes[j]}},
                         minimize ? RowSense::kGreaterEqual : RowSense::kLessEqual,
                         value - pw.slopes[j] * at);
      value += pw.slopes[j] * (pw.breakpoints[j + 1] - at);
    }
  }
  return out;
}

double row_activity(const LinRow& row, std::span<const double> values) {
  double sum = 0.0;
  for (const Term& t : row.terms) sum += t.coef * values[static_cast<std::size_t>(t.var)];
  return sum;
}

double Model::evaluate_objective(std::span<const double> values) const {
  double sum = objective_.constant;
  for (const Term& t : objective_.terms)
    sum += t.coef * values[static_cast<std::size_t>(t.var)];
  for (const PiecewiseTerm& pw : objective_.piecewise)
    sum += pw.evaluate(values[static_cast<std::size_t>(pw.var)]);
  return sum;
}

double Model::max_violation(std::span<const double> values) const {
  if (values.size() < vars_.size())
    throw ModelError("value vector shorter than variable count");
  double worst = 0.0;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    worst = std::max(worst, vars_[j].lower - values[j]);
    worst = std::max(worst, values[j] - vars_[j].upper);
  }
  for (const LinRow& row : rows_) {
    const double act = row_activity(row, values);
    switch (row.sense) {
      case RowSense::kLessEqual: worst = std::max(worst, act - row.rhs); break;
      case RowSense::kGreaterEqual: worst = std::max(worst, row.rhs - act); break;
      case RowSense::kEqual: worst = std::max(worst, std::abs(act - row.rhs)); break;
    }
  }
  return worst;
}

void Model::validate() const {
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    const VarDecl& v = vars_[j];
    if (!(v.lower <= v.upper))
      throw ModelError("variable " + variable_name(static_cast<VarId>(j)) +
                       " has inverted bounds");
    if (v.kind == VarKind::kBinary && (v.lower < 0.0 || v.upper > 1.0))
      throw ModelError("binary variable outside [0,1]");
  }
  for (const LinRow& row : rows_)
    for (const Term& t : row.terms) check_var(t.var);
  for (const Term& t : objective_.terms) check_var(t.var);
  const bool minimize = objective_.sense == ObjSense::kMinimize;
  for (const PiecewiseTerm& pw : objective_.piecewise) {
    check_var(pw.var);
    for (std::size_t j = 1; j < pw.slopes.size(); ++j)
      if (minimize ? pw.slopes[j] < pw.slopes[j - 1]
                   : pw.slopes[j] > pw.slopes[j - 1])
        throw ModelError("piecewise objective term lost convexity");
  }
}

}  // namespace wdrjcc
