#include <algorithm>
#include <cmath>

#include "wdrjcc/data_io.hpp"
#include "wdrjcc/error.hpp"
#include "wdrjcc/rng.hpp"

namespace wdrjcc {

void SynthSpec::validate() const {
  if (K == 0 || N == 0) throw ModelError("synthetic spec needs K >= 1 and N >= 1");
  if (marginal == Marginal::kNormal && !(sd > 0.0))
    throw ModelError("normal marginal needs sd > 0");
  if (marginal == Marginal::kUniform && !(a < b))
    throw ModelError("uniform marginal needs a < b");
  if (!(std::abs(rho) < 1.0)) throw ModelError("rho must satisfy |rho| < 1");
  if (!(lower <= upper)) throw ModelError("truncation bounds are inverted");
}

Matrix synth_matrix(const SynthSpec& spec, std::size_t rows, std::uint64_t stream) {
  spec.validate();
  Rng rng(spec.seed * 0x9e3779b97f4a7c15ULL + stream);
  Matrix m(rows, spec.K);
  const double innov = std::sqrt(1.0 - spec.rho * spec.rho);
  for (std::size_t i = 0; i < rows; ++i) {
    double z = rng.normal();
    for (std::size_t j = 0; j < spec.K; ++j) {
      if (j > 0) z = spec.rho * z + innov * rng.normal();
      double v = spec.marginal == Marginal::kNormal
                     ? spec.mean + spec.sd * z
                     : spec.a + (spec.b - spec.a) * normal_cdf(z);
      m(i, j) = std::clamp(v, spec.lower, spec.upper);
    }
  }
  return m;
}

ScenarioSet synth_scenarios(const SynthSpec& spec) {
  Matrix samples = synth_matrix(spec, spec.N, 0);
  Matrix holdout = spec.holdout > 0 ? synth_matrix(spec, spec.holdout, 1) : Matrix{};
  return ScenarioSet(std::move(samples), std::move(holdout));
}

}  // namespace wdrjcc
