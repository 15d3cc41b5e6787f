#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "wdrjcc/error.hpp"
#include "wdrjcc/reformulations.hpp"

namespace wdrjcc {

// For fixed beta the best m_i is beta/||b|| when eta + v_i > 0 and 0
// otherwise, so g reduces to a convex piecewise-linear function of beta with
// kinks at ||b|| / (eta + v_i).
double bonferroni_g(double eta, std::span<const double> values, double dual_norm_b,
                    double theta) {
  const double N = static_cast<double>(values.size());
  std::vector<double> pos;
  pos.reserve(values.size());
  double nonpos = 0.0;
  for (double v : values) {
    const double t = eta + v;
    if (t > 0.0)
      pos.push_back(t);
    else
      nonpos += 1.0;
  }
  std::sort(pos.begin(), pos.end(), std::greater<>());
  const std::size_t m = pos.size();
  std::vector<double> suffix(m + 1, 0.0);
  for (std::size_t j = m; j-- > 0;) suffix[j] = suffix[j + 1] + pos[j];

  double best = static_cast<double>(m) / N;
  for (std::size_t j = 0; j < m; ++j) {
    const double beta = dual_norm_b / pos[j];
    const double rest = static_cast<double>(m - j - 1) - suffix[j + 1] / pos[j];
    best = std::min(best, theta * beta + std::max(0.0, rest) / N);
  }
  return nonpos / N + best;
}

BonferroniVaR bonferroni_var(const ScenarioSet& scen, const SafetySystem& sys, std::size_t p,
                             const AmbiguityConfig& amb, double eps_p) {
  if (!(eps_p > 0.0 && eps_p < 1.0)) throw ModelError("eps_p must lie in (0,1)");
  if (!(amb.theta > 0.0)) throw ModelError("theta must be positive");
  check_compatible(scen, sys);
  if (p >= sys.P()) throw ModelError("safety row index out of range");

  std::vector<double> values(scen.N());
  for (std::size_t i = 0; i < scen.N(); ++i) values[i] = dot(sys.row(p).b, scen.sample(i));
  const double nb = sys.dual_norm(p);
  auto g = [&](double eta) { return bonferroni_g(eta, values, nb, amb.theta); };

  const auto [vmin, vmax] = std::minmax_element(values.begin(), values.end());
  BonferroniVaR out;
  out.eps_p = eps_p;
  // At eta = -max v every scenario has eta + v_i <= 0 and g = 1.
  double lo = -*vmax;
  double step = std::max(1.0, *vmax - *vmin);
  double hi = -*vmin + step;
  int doublings = 0;
  while (g(hi) > eps_p) {
    if (++doublings > 60)
      throw UnboundedVaRError("worst-case VaR of row " + std::to_string(p) +
                              " did not reach eps_p after 60 bracket doublings");
    lo = hi;
    step *= 2.0;
    hi += step;
  }
  while (hi - lo > out.tolerance && out.iterations < 400) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= eps_p)
      hi = mid;
    else
      lo = mid;
    ++out.iterations;
  }
  out.eta = hi;
  return out;
}

}  // namespace wdrjcc
