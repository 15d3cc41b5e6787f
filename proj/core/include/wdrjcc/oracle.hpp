#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wdrjcc/instance.hpp"
#include "wdrjcc/reformulations.hpp"

namespace wdrjcc {

/// a_p^T x for every row.
[[nodiscard]] std::vector<double> activities(const SafetySystem& sys, std::span<const double> x);

/// eps*N*s - sum_i (s - dist_i)^+.
[[nodiscard]] double budget_value(std::span<const double> dists, double epsilon, double s);

struct OracleResult {
  bool feasible = false;
  double s_star = 0.0;
  /// budget_value at s_star.
  double value = 0.0;
  /// value / N - theta; feasible iff margin >= 0.
  double margin = 0.0;
  std::vector<double> dists;
};

/// Exact membership: s* is the (k+1)-th smallest distance and x is feasible
/// iff eps*N*s* - sum (s* - dist_i)^+ >= theta*N.
[[nodiscard]] OracleResult exact_feasible(std::span<const double> x, const ScenarioSet& scen,
                                          const SafetySystem& sys, const AmbiguityConfig& amb);
/// Same with the row activities a_p^T x given directly.
[[nodiscard]] OracleResult exact_feasible_at(std::span<const double> ax, const ScenarioSet& scen,
                                             const SafetySystem& sys, const AmbiguityConfig& amb);

/// Number of training scenarios with dist(x, xi_i) <= 1e-9.
[[nodiscard]] std::size_t in_sample_violations(std::span<const double> x, const ScenarioSet& scen,
                                               const SafetySystem& sys);
[[nodiscard]] std::size_t in_sample_violations_at(std::span<const double> ax,
                                                  const Matrix& samples, const SafetySystem& sys);

/// Fraction of holdout rows satisfying every safety row (weak inequality).
/// Throws ModelError when the holdout is empty.
[[nodiscard]] double reliability(std::span<const double> x, const Matrix& holdout,
                                 const SafetySystem& sys);
[[nodiscard]] double reliability_at(std::span<const double> ax, const Matrix& holdout,
                                    const SafetySystem& sys);

/// Method parameters shared by every fixed-x membership test.
struct MembershipParams {
  std::vector<double> kappa;      // empty: all ones
  std::vector<double> w;          // empty: uniform
  std::vector<double> eps_alloc;  // empty: eps / P
  std::string backend = "highs";
  double tol = 1e-6;
  /// Test hook: scales theta inside the LP/MIP builds only.
  double theta_scale = 1.0;
};

/// Per-instance state for repeated membership queries (order statistics,
/// Bonferroni VaR values and resolved parameters are computed once).
class MembershipOracle {
 public:
  MembershipOracle(const ScenarioSet& scen, const SafetySystem& sys, const AmbiguityConfig& amb,
                   MembershipParams params = {});

  /// Closed-form margin: >= 0 means member. ExactMIP and ExactS use the
  /// exact oracle. Bonferroni throws UnboundedVaRError when its VaR
  /// does not exist.
  [[nodiscard]] double margin(std::span<const double> x, Method method) const;
  /// Solves the fixed-x ancillary LP (MIP for ExactMIP/ExactS). Bonferroni
  /// is checked directly.
  [[nodiscard]] bool member(std::span<const double> x, Method method) const;
  /// Optimal value of the fixed-x problem, normalized like margin().
  [[nodiscard]] std::optional<double> lp_margin(std::span<const double> x, Method method) const;

  [[nodiscard]] const std::vector<double>& kappa() const { return kappa_; }
  [[nodiscard]] const std::vector<double>& w() const { return w_; }
  [[nodiscard]] const std::vector<double>& eta() const;
  [[nodiscard]] const OrderData& order() const { return od_; }
  [[nodiscard]] const MembershipParams& params() const { return params_; }
  [[nodiscard]] const ScenarioSet& scenarios() const { return scen_; }
  [[nodiscard]] const SafetySystem& system() const { return sys_; }
  [[nodiscard]] const AmbiguityConfig& ambiguity() const { return amb_; }

 private:
  const ScenarioSet& scen_;
  const SafetySystem& sys_;
  AmbiguityConfig amb_;
  MembershipParams params_;
  OrderData od_;
  std::vector<double> kappa_;
  std::vector<double> w_;
  mutable std::optional<std::vector<double>> eta_;
};

/// One-shot fixed-x membership test.
[[nodiscard]] bool membership(std::span<const double> x, Method method,
                              const MembershipParams& params, const ScenarioSet& scen,
                              const SafetySystem& sys, const AmbiguityConfig& amb);

struct MembershipReport {
  std::vector<double> x;
  bool oracle = false;
  std::optional<bool> exact_mip;
  std::optional<bool> exacts;
  bool la = false;
  bool sfla = false;
  bool wcvar = false;
  std::optional<bool> bonferroni;  // empty when the VaR does not exist
  double s_star = 0.0;
  std::vector<double> dists;
};

/// Evaluates every method at x; the MIP methods only when `with_mip`.
[[nodiscard]] MembershipReport membership_report(const MembershipOracle& oracle,
                                                 std::span<const double> x, bool with_mip);

}  // namespace wdrjcc
