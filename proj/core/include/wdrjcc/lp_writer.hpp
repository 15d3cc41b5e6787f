#pragma once

#include <string>

#include "wdrjcc/model.hpp"

namespace wdrjcc {

/// CPLEX-style LP text (Minimize/Maximize, Subject To, Bounds, Binaries,
/// End). Piecewise objective terms are expanded to epigraph rows first.
/// Numbers use 17 significant digits, so the output is byte-stable.
[[nodiscard]] std::string emit_lp_text(const Model& model);

/// Fixed-format MPS. Columns and rows are renamed C0000000/R0000000 to fit
/// the 8-character name fields.
[[nodiscard]] std::string emit_mps_text(const Model& model);

}  // namespace wdrjcc
