#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wdrjcc/oracle.hpp"
#include "wdrjcc/rng.hpp"

namespace wdrjcc {

/// Draws one x from the instance's box.
using XSampler = std::function<std::vector<double>(Rng&)>;

/// Uniform over the x box of `sys`. Throws ModelError when unbounded.
[[nodiscard]] XSampler uniform_box_sampler(const SafetySystem& sys);

struct CompareOptions {
  std::size_t n_samples = 200;
  std::uint64_t seed = 0;
  /// Share of samples placed next to the LA boundary.
  double boundary_fraction = 0.1;
  MembershipParams params;
  /// Evaluate the ExactMIP and ExactS fixed-x MIPs as well.
  bool with_mip = false;
  std::string instance = "instance";
};

/// One violated implication or equivalence at a sampled x.
struct Counterexample {
  std::string relation;
  std::vector<double> x;
  double lhs_margin = 0.0;
  double rhs_margin = 0.0;
};

struct RegionComparison {
  std::string instance;
  std::size_t samples = 0;
  std::size_t borderline = 0;
  std::map<std::string, std::size_t> accepted;
  std::vector<Counterexample> counterexamples;
  /// x accepted by SFLA and rejected by LA.
  std::vector<std::vector<double>> witnesses;
  bool unit_kappa = false;
  bool wstar_weights = false;

  [[nodiscard]] bool consistent() const { return counterexamples.empty(); }
  [[nodiscard]] std::string to_json() const;
};

/// Evaluates every membership test on sampled x and checks
/// LA => SFLA => Exact, WCVaR => Exact and Bonferroni => Exact; with unit
/// kappa also SFLA <=> LA, and with w* weights SFLA <=> WCVaR. Samples whose
/// closed-form margin for any compared method lies within params.tol of zero
/// are counted as borderline and skipped. LP and closed-form verdicts that
/// disagree outside that band are reported as counterexamples too.
[[nodiscard]] RegionComparison compare_regions(const ScenarioSet& scen, const SafetySystem& sys,
                                               const AmbiguityConfig& amb,
                                               const CompareOptions& opts,
                                               const XSampler& sampler = {});

}  // namespace wdrjcc
