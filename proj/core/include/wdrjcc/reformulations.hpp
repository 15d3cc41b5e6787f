#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wdrjcc/instance.hpp"
#include "wdrjcc/model.hpp"

namespace wdrjcc {

/// Affine expression `sum coef * var + constant` over host variables.
struct AffineExpr {
  std::vector<Term> terms;
  double constant = 0.0;

  [[nodiscard]] double evaluate(std::span<const double> values) const;
};

/// a_p^T x for every safety row, written over host model variables.
class XExpression {
 public:
  XExpression() = default;
  explicit XExpression(std::vector<AffineExpr> rows) : rows_(std::move(rows)) {}

  /// a_p^T x with x_j = host variable x_vars[j].
  static XExpression from_system(const SafetySystem& sys, std::span<const VarId> x_vars);
  /// Constant rows a_p^T x for a fixed x.
  static XExpression fixed(const SafetySystem& sys, std::span<const double> x);
  /// Constant rows with the given activities.
  static XExpression constants(std::span<const double> activities);

  [[nodiscard]] std::size_t P() const { return rows_.size(); }
  [[nodiscard]] const AffineExpr& row(std::size_t p) const { return rows_[p]; }
  /// Throws ModelError when a row references a variable the model lacks.
  void check(const Model& model, std::size_t P) const;

 private:
  std::vector<AffineExpr> rows_;
};

enum class Method { kExactMIP, kExactS, kLA, kSFLA, kWCVaR, kBonferroni };

/// Case-insensitive: exactmip, exacts, la, sfla, wcvar, bonferroni.
[[nodiscard]] Method parse_method(std::string_view text);
[[nodiscard]] std::string_view to_string(Method m);
[[nodiscard]] const std::vector<Method>& all_methods();
[[nodiscard]] bool uses_binaries(Method m);

/// Variables and rows a builder appended to the host model.
struct ReformulationBlock {
  Method method = Method::kSFLA;
  std::optional<VarId> s;
  std::vector<VarId> r;
  std::vector<VarId> z;
  std::vector<VarId> alpha;
  std::optional<VarId> beta;
  std::optional<VarId> tau;
  std::vector<RowId> rows;
  std::size_t first_var = 0;
  std::size_t num_vars = 0;

  std::vector<double> kappa;
  std::vector<double> w;
  std::vector<double> eps_alloc;
  std::vector<double> eta;
  double big_m = 0.0;

  [[nodiscard]] std::size_t num_rows() const { return rows.size(); }
};

/// Largest |b_p^T xi_i + d_p - a_p^T x| / ||b_p||_* over scenarios, rows
/// and corners of the x box, clamped below at 1 and scaled by 1.05.
/// Throws ModelError when the x box is unbounded.
[[nodiscard]] double compute_bigM(const SafetySystem& sys, const ScenarioSet& scen);
/// Same bound with a_p^T x ranged over the host model's variable bounds.
[[nodiscard]] double compute_bigM(const XExpression& xexpr, const Model& model,
                                  const SafetySystem& sys, const ScenarioSet& scen);

[[nodiscard]] std::vector<double> uniform_weights(std::size_t P);
/// w_p proportional to 1 / ||b_p||_*.
[[nodiscard]] std::vector<double> wstar_weights(const SafetySystem& sys);

ReformulationBlock build_exact_mip(Model& model, const XExpression& xexpr,
                                   const ScenarioSet& scen, const SafetySystem& sys,
                                   const AmbiguityConfig& amb, std::optional<double> big_m = {});
ReformulationBlock build_exacts(Model& model, const XExpression& xexpr, const ScenarioSet& scen,
                                const SafetySystem& sys, const AmbiguityConfig& amb,
                                std::optional<double> big_m = {});
/// Empty kappa means all ones.
ReformulationBlock build_la(Model& model, const XExpression& xexpr, const ScenarioSet& scen,
                            const SafetySystem& sys, const AmbiguityConfig& amb,
                            std::span<const double> kappa = {});
ReformulationBlock build_sfla(Model& model, const XExpression& xexpr, const ScenarioSet& scen,
                              const SafetySystem& sys, const AmbiguityConfig& amb,
                              std::span<const double> kappa = {});
/// Empty w means uniform 1/P.
ReformulationBlock build_wcvar(Model& model, const XExpression& xexpr, const ScenarioSet& scen,
                               const SafetySystem& sys, const AmbiguityConfig& amb,
                               std::span<const double> w = {});
/// Empty allocation means epsilon / P per row.
ReformulationBlock build_bonferroni(Model& model, const XExpression& xexpr,
                                    const ScenarioSet& scen, const SafetySystem& sys,
                                    const AmbiguityConfig& amb,
                                    std::span<const double> eps_alloc = {});

/// Per-method knobs for build_block().
struct BuildParams {
  std::vector<double> kappa;
  std::vector<double> w;
  std::vector<double> eps_alloc;
  std::optional<double> big_m;
};

ReformulationBlock build_block(Method method, Model& model, const XExpression& xexpr,
                               const ScenarioSet& scen, const SafetySystem& sys,
                               const AmbiguityConfig& amb, const BuildParams& params = {});

/// Closed-form row count of a block, for assertions.
[[nodiscard]] std::size_t expected_rows(Method method, const ScenarioSet& scen,
                                        const SafetySystem& sys, const AmbiguityConfig& amb);
[[nodiscard]] std::size_t expected_vars(Method method, const ScenarioSet& scen,
                                        const SafetySystem& sys);

/// Worst-case VaR of -b^T xi over the Wasserstein ball, per safety row.
struct BonferroniVaR {
  double eta = 0.0;
  double eps_p = 0.0;
  int iterations = 0;
  double tolerance = 1e-7;
};

/// g(eta) = min { theta*beta + (1/N) sum alpha_i : alpha_i >= 1 - m_i (eta + v_i),
/// beta >= m_i ||b||_*, alpha, m >= 0 } with v_i = b^T xi_i, evaluated in
/// closed form.
[[nodiscard]] double bonferroni_g(double eta, std::span<const double> values, double dual_norm_b,
                                  double theta);

/// Smallest eta with g(eta) <= eps_p, by bisection to 1e-7. Throws
/// UnboundedVaRError when 60 bracket doublings never reach eps_p.
[[nodiscard]] BonferroniVaR bonferroni_var(const ScenarioSet& scen, const SafetySystem& sys,
                                           std::size_t p, const AmbiguityConfig& amb,
                                           double eps_p);

}  // namespace wdrjcc
