#pragma once

#include "wdrjcc/reformulations.hpp"

namespace wdrjcc::detail {

/// Switches used by the fixed-x membership tests and the comparison
/// harness; the public builders always use the defaults.
struct BuildFlags {
  bool budget_row = true;
  double theta_scale = 1.0;
};

ReformulationBlock build_block(Method method, Model& model, const XExpression& xexpr,
                               const ScenarioSet& scen, const SafetySystem& sys,
                               const AmbiguityConfig& amb, const BuildParams& params,
                               const BuildFlags& flags);

}  // namespace wdrjcc::detail
