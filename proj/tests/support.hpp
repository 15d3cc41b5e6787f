#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "wdrjcc/instance.hpp"
#include "wdrjcc/model.hpp"
#include "wdrjcc/reformulations.hpp"
#include "wdrjcc/rng.hpp"
#include "wdrjcc/solve.hpp"

namespace wdrjcc::testing {

/// K=1, xi = {0, 0.1, 0.2, 0.3}, a = b = d = 1, x in [0, 2].
struct T1 {
  ScenarioSet scen;
  SafetySystem sys;
  AmbiguityConfig amb{0.5, 0.05};

  T1()
      : scen(Matrix::from_rows({{0.0}, {0.1}, {0.2}, {0.3}}),
             Matrix::from_rows({{0.0}, {0.1}, {0.2}, {0.3}})),
        sys({SafetyRow{{1.0}, {1.0}, 1.0}}, NormKind::kL2, {{0.0, 2.0}}) {}
};

struct RandomInstance {
  ScenarioSet scen;
  SafetySystem sys;
  AmbiguityConfig amb;
};

inline NormKind random_norm(Rng& rng) {
  switch (rng.below(3)) {
    case 0: return NormKind::kL1;
    case 1: return NormKind::kL2;
    default: return NormKind::kLinf;
  }
}

/// K <= 3, P <= 4, N <= 20, L in {1, 2}, x box [-1, 2]^L.
inline RandomInstance random_instance(Rng& rng, std::optional<std::size_t> L_fixed = {}) {
  const std::size_t K = 1 + rng.below(3);
  const std::size_t P = 1 + rng.below(4);
  const std::size_t N = 5 + rng.below(16);
  const std::size_t L = L_fixed.value_or(1 + rng.below(2));
  static const double eps_choices[] = {0.05, 0.1, 0.3};
  static const double theta_choices[] = {0.01, 0.1};
  AmbiguityConfig amb{eps_choices[rng.below(3)], theta_choices[rng.below(2)]};

  Matrix samples(N, K);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < K; ++k) samples(i, k) = rng.normal(0.0, 0.5);
  std::vector<SafetyRow> rows;
  for (std::size_t p = 0; p < P; ++p) {
    SafetyRow r;
    for (std::size_t j = 0; j < L; ++j) r.a.push_back(rng.uniform(-1.0, 1.0));
    for (std::size_t k = 0; k < K; ++k) r.b.push_back(rng.uniform(-1.0, 1.0));
    if (std::all_of(r.b.begin(), r.b.end(), [](double v) { return std::abs(v) < 0.1; }))
      r.b[0] = 1.0;
    r.d = rng.uniform(0.5, 2.0);
    rows.push_back(std::move(r));
  }
  std::vector<Bounds> box(L, {-1.0, 2.0});
  return RandomInstance{ScenarioSet(std::move(samples)),
                        SafetySystem(std::move(rows), random_norm(rng), std::move(box)), amb};
}

/// Test-side (k+1)-th order statistic and strict-below count per row.
struct RowOrder {
  double q;
  std::size_t below;
};

inline RowOrder row_order(const ScenarioSet& scen, const SafetyRow& row, std::size_t k) {
  std::vector<double> v;
  for (std::size_t i = 0; i < scen.N(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < row.b.size(); ++j) s += row.b[j] * scen.sample(i)[j];
    v.push_back(s);
  }
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  const double q = sorted[k];
  return {q, static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [q](double s) { return s < q; }))};
}

/// Distances to the unsafe set computed directly from the rows.
inline std::vector<double> brute_dists(std::span<const double> x, const ScenarioSet& scen,
                                       const SafetySystem& sys) {
  std::vector<double> d;
  for (std::size_t i = 0; i < scen.N(); ++i) {
    double best = 1e300;
    for (std::size_t p = 0; p < sys.P(); ++p) {
      const SafetyRow& r = sys.row(p);
      double bx = 0.0, ax = 0.0;
      for (std::size_t j = 0; j < r.b.size(); ++j) bx += r.b[j] * scen.sample(i)[j];
      for (std::size_t j = 0; j < r.a.size(); ++j) ax += r.a[j] * x[j];
      best = std::min(best, (bx + r.d - ax) / sys.dual_norm(p));
    }
    d.push_back(std::max(0.0, best));
  }
  return d;
}

/// max over a dense s grid (plus every distance) of eps N s - sum (s - d_i)^+.
inline double grid_budget_max(const std::vector<double>& dists, double eps, std::size_t points) {
  auto f = [&](double s) {
    double v = eps * static_cast<double>(dists.size()) * s;
    for (double d : dists) v -= std::max(0.0, s - d);
    return v;
  };
  const double top = *std::max_element(dists.begin(), dists.end()) * 1.1 + 1e-3;
  double best = f(0.0);
  for (std::size_t g = 1; g <= points; ++g)
    best = std::max(best, f(top * static_cast<double>(g) / static_cast<double>(points)));
  for (double d : dists) best = std::max(best, f(d));
  return best;
}

/// Brute-force exact membership: maximize the budget over a dense grid.
inline bool brute_exact(std::span<const double> x, const ScenarioSet& scen, const SafetySystem& sys,
                        const AmbiguityConfig& amb) {
  const std::vector<double> d = brute_dists(x, scen, sys);
  return grid_budget_max(d, amb.epsilon, 2000) >= amb.theta * static_cast<double>(scen.N()) - 1e-12;
}

/// g(eta) by solving its defining LP.
inline double bonferroni_g_lp(double eta, const std::vector<double>& v, double nb, double theta) {
  Model m;
  const VarId beta = m.add_continuous(0.0, kInf, "beta");
  m.add_objective_term(beta, theta);
  const double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const VarId a = m.add_continuous(0.0, kInf);
    const VarId mi = m.add_continuous(0.0, kInf);
    m.add_objective_term(a, 1.0 / n);
    m.add_constraint({{a, 1.0}, {mi, eta + v[i]}}, RowSense::kGreaterEqual, 1.0);
    m.add_constraint({{beta, 1.0}, {mi, -nb}}, RowSense::kGreaterEqual, 0.0);
  }
  SolveOptions o;
  o.threads = 1;
  const SolveResult r = solve(m, o);
  return r.objective.value_or(1e300);
}

inline Model box_model(const SafetySystem& sys, std::vector<VarId>& x) {
  Model m;
  x.clear();
  for (const Bounds& b : sys.x_bounds()) x.push_back(m.add_continuous(b.first, b.second));
  return m;
}

}  // namespace wdrjcc::testing
