#pragma once

#include <memory>

#include "wdrjcc/solve.hpp"

namespace wdrjcc::detail {

std::unique_ptr<SolverBackend> make_highs_backend();
std::unique_ptr<SolverBackend> make_simplex_backend();

}  // namespace wdrjcc::detail
