// Acceptance run: one PASS/FAIL line per criterion. Criterion 12 is
// report-only and never changes the exit code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"
#include "wdrjcc/error.hpp"
#include "wdrjcc/oracle.hpp"
#include "wdrjcc/uc.hpp"

using namespace wdrjcc;
using testing::RandomInstance;

namespace {

constexpr double kTol = 1e-6;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& what, bool gating = true) {
  std::printf("[%s] %2d %s%s\n", pass ? "PASS" : "FAIL", id, what.c_str(),
              gating ? "" : " (report-only)");
  std::fflush(stdout);
  if (gating && !pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SolveOptions exact_options() {
  SolveOptions o;
  o.threads = 1;
  o.mip_gap = 1e-9;
  o.time_limit_s = 120.0;
  return o;
}

std::vector<double> random_x(Rng& rng, const SafetySystem& sys) {
  std::vector<double> x(sys.L());
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = rng.uniform(sys.x_bounds()[j].first, sys.x_bounds()[j].second);
  return x;
}

// A point 1e-3 (in chord fraction) to either side of the exact boundary.
std::vector<double> near_exact_boundary(Rng& rng, const RandomInstance& ri) {
  auto feasible = [&](const std::vector<double>& x) {
    return exact_feasible(x, ri.scen, ri.sys, ri.amb).margin >= 0.0;
  };
  std::vector<double> a = random_x(rng, ri.sys);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<double> b = random_x(rng, ri.sys);
    if (feasible(a) == feasible(b)) continue;
    const bool fa = feasible(a);
    auto at = [&](double t) {
      std::vector<double> x(a.size());
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = a[j] + t * (b[j] - a[j]);
      return x;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible(at(mid)) == fa ? lo : hi) = mid;
    }
    const double step = rng.uniform() < 0.5 ? -1e-3 : 1e-3;
    return at(std::clamp(0.5 * (lo + hi) + step, 0.0, 1.0));
  }
  return a;
}

std::size_t host_rows(Method m, const RandomInstance& ri, const BuildParams& bp = {}) {
  std::vector<VarId> x;
  Model model = testing::box_model(ri.sys, x);
  return build_block(m, model, XExpression::from_system(ri.sys, x), ri.scen, ri.sys, ri.amb, bp)
      .num_rows();
}

struct SweepStats {
  std::size_t instances = 0;
  std::size_t samples = 0;
  std::size_t borderline = 0;
  std::size_t chain_violations = 0;
  std::size_t mip_mismatch = 0;
  std::size_t c2_agree = 0, c2_total = 0;
  std::size_t c3_agree = 0, c3_total = 0;
  std::size_t c4_instances = 0, c4_agree = 0, c4_total = 0;
  std::size_t c4_closed_agree = 0, c4_closed_total = 0;
  std::size_t c8_builds = 0, c8_bad = 0, c8_distinct = 0, c8_distinct_bad = 0;
  std::size_t c9_feasible = 0, c9_bad = 0;
  double seconds = 0.0;
};

// Criteria 1, 2, 3, 4, 8, 9 share one sweep over random instances.
SweepStats sweep() {
  SweepStats st;
  const auto t0 = Clock::now();
  Rng rng(20240601);
  for (int inst = 0; inst < 50; ++inst) {
    const RandomInstance ri = testing::random_instance(rng);
    const std::size_t N = ri.scen.N(), P = ri.sys.P(), k = ri.amb.k(N);
    ++st.instances;

    MembershipParams unit;
    unit.w = wstar_weights(ri.sys);
    MembershipParams rand_k;
    rand_k.kappa.resize(N);
    for (double& v : rand_k.kappa) v = rng.uniform();
    const MembershipOracle ou(ri.scen, ri.sys, ri.amb, unit);
    const MembershipOracle orand(ri.scen, ri.sys, ri.amb, rand_k);

    // Row counts against test-side order statistics.
    std::size_t below = 0;
    bool distinct = true;
    for (std::size_t p = 0; p < P; ++p) {
      below += testing::row_order(ri.scen, ri.sys.row(p), k).below;
      std::vector<double> v;
      for (std::size_t i = 0; i < N; ++i) v.push_back(dot(ri.sys.row(p).b, ri.scen.sample(i)));
      std::sort(v.begin(), v.end());
      distinct = distinct && std::adjacent_find(v.begin(), v.end()) == v.end();
    }
    BuildParams bp;
    bp.kappa = rand_k.kappa;
    for (const BuildParams& params : {BuildParams{}, bp}) {
      st.c8_builds += 2;
      if (host_rows(Method::kSFLA, ri, params) != 1 + below + P) ++st.c8_bad;
      if (host_rows(Method::kLA, ri, params) != 1 + N * P) ++st.c8_bad;
    }
    if (distinct) {
      ++st.c8_distinct;
      if (below != k * P) ++st.c8_distinct_bad;
    }

    const bool small_eps = ri.amb.epsilon <= 1.0 / static_cast<double>(N);
    st.c4_instances += small_eps;

    for (int s = 0; s < 200; ++s) {
      const std::vector<double> x = s < 180 ? random_x(rng, ri.sys) : near_exact_boundary(rng, ri);
      ++st.samples;
      const OracleResult ex = exact_feasible(x, ri.scen, ri.sys, ri.amb);
      const std::vector<double> d = testing::brute_dists(x, ri.scen, ri.sys);

      if (ex.margin >= 0.0) {
        ++st.c9_feasible;
        const auto viol = std::count_if(d.begin(), d.end(), [](double v) { return v <= 1e-9; });
        if (static_cast<std::size_t>(viol) > k) ++st.c9_bad;
      }
      if (small_eps && k == 0) {
        ++st.c4_closed_total;
        const double mind = *std::min_element(d.begin(), d.end());
        st.c4_closed_agree += (ri.amb.epsilon * mind >= ri.amb.theta) == ex.feasible;
      }

      const double margins[] = {ex.margin,
                                ou.margin(x, Method::kLA),
                                ou.margin(x, Method::kSFLA),
                                ou.margin(x, Method::kWCVaR),
                                orand.margin(x, Method::kLA),
                                orand.margin(x, Method::kSFLA)};
      if (std::any_of(std::begin(margins), std::end(margins),
                      [](double m) { return std::abs(m) < kTol; })) {
        ++st.borderline;
        continue;
      }

      const bool exact = ex.margin >= 0.0;
      const bool la1 = ou.member(x, Method::kLA);
      const bool sfla1 = ou.member(x, Method::kSFLA);
      const bool wc = ou.member(x, Method::kWCVaR);
      const bool lak = orand.member(x, Method::kLA);
      const bool sflak = orand.member(x, Method::kSFLA);
      const bool mip = ou.member(x, Method::kExactMIP);
      const bool exs = ou.member(x, Method::kExactS);

      st.chain_violations += (la1 && !sfla1) + (sfla1 && !exact) + (lak && !sflak) +
                             (sflak && !exact);
      st.mip_mismatch += (mip != exact) + (exs != exact);
      ++st.c2_total;
      st.c2_agree += sfla1 == la1;
      ++st.c3_total;
      st.c3_agree += sfla1 == wc;
      if (small_eps) {
        ++st.c4_total;
        st.c4_agree += sfla1 == exact;
      }
    }
  }
  st.seconds = seconds_since(t0);
  return st;
}

// Criterion 5: full optimization with ExactMIP and ExactS.
void criterion5() {
  Rng rng(777);
  std::size_t solved = 0, mismatch = 0, grid_checked = 0, grid_bad = 0, tries = 0;
  double worst = 0.0;
  while (solved < 20 && tries < 500) {
    ++tries;
    const bool one_d = solved % 2 == 0;
    RandomInstance ri = testing::random_instance(rng, one_d ? std::optional<std::size_t>(1)
                                                            : std::nullopt);
    std::vector<double> c(ri.sys.L());
    for (double& v : c) v = rng.uniform(-1.0, 1.0);

    std::optional<double> obj[2];
    for (int which = 0; which < 2; ++which) {
      std::vector<VarId> x;
      Model m = testing::box_model(ri.sys, x);
      for (std::size_t j = 0; j < x.size(); ++j) m.add_objective_term(x[j], c[j]);
      (void)build_block(which == 0 ? Method::kExactMIP : Method::kExactS, m,
                        XExpression::from_system(ri.sys, x), ri.scen, ri.sys, ri.amb);
      const SolveResult r = solve(m, exact_options());
      if (r.status == SolveStatus::kOptimal) obj[which] = r.objective;
    }
    if (!obj[0] || !obj[1]) continue;
    ++solved;
    const double diff = std::abs(*obj[0] - *obj[1]);
    worst = std::max(worst, diff);
    if (diff > 1e-6 * (1.0 + std::abs(*obj[0]))) ++mismatch;

    if (one_d) {
      const auto [lo, hi] = ri.sys.x_bounds()[0];
      const double h = (hi - lo) / 199.0;
      std::optional<double> best;
      for (int g = 0; g < 200; ++g) {
        const std::vector<double> xg{lo + h * g};
        if (testing::brute_exact(xg, ri.scen, ri.sys, ri.amb))
          best = std::min(best.value_or(1e300), c[0] * xg[0]);
      }
      if (!best) continue;
      ++grid_checked;
      const double slack = std::abs(c[0]) * h + 1e-6;
      for (const double o : {*obj[0], *obj[1]})
        if (o > *best + 1e-6 || o < *best - slack) ++grid_bad;
    }
  }
  report(5, solved == 20 && mismatch == 0 && grid_checked > 0 && grid_bad == 0,
         fmt("ExactMIP vs ExactS on %zu solvable instances: %zu mismatches (max |diff| %.2e); "
             "%zu 1-D grid checks, %zu off the grid minimum",
             solved, mismatch, worst, grid_checked, grid_bad));
}

// Criterion 6: dense s-grid never beats s*.
void criterion6() {
  Rng rng(606);
  std::size_t bad = 0;
  double worst = -1e300;
  for (int pair = 0; pair < 50; ++pair) {
    const RandomInstance ri = testing::random_instance(rng);
    const std::vector<double> x = random_x(rng, ri.sys);
    const OracleResult ex = exact_feasible(x, ri.scen, ri.sys, ri.amb);
    const std::vector<double> d = testing::brute_dists(x, ri.scen, ri.sys);
    const double top = *std::max_element(d.begin(), d.end()) * 1.5;
    double best = -1e300;
    for (int g = 0; g < 10000; ++g)
      best = std::max(best, budget_value(d, ri.amb.epsilon, top * g / 9999.0));
    worst = std::max(worst, best - ex.value);
    if (best > ex.value + 1e-9) ++bad;
  }
  report(6, bad == 0,
         fmt("s-grid vs s* on 50 pairs: %zu exceed by > 1e-9 (largest excess %.2e)", bad, worst));
}

// Criterion 7: some x is accepted by SFLA and rejected by LA for kappa != 1.
void criterion7() {
  Rng rng(707);
  int trials = 0;
  bool found = false;
  while (!found && trials < 1000) {
    ++trials;
    const RandomInstance ri = testing::random_instance(rng);
    MembershipParams mp;
    mp.kappa.resize(ri.scen.N());
    for (double& v : mp.kappa) v = rng.uniform(0.05, 0.95);
    const MembershipOracle o(ri.scen, ri.sys, ri.amb, mp);
    const std::vector<double> x = random_x(rng, ri.sys);
    if (std::abs(o.margin(x, Method::kSFLA)) < kTol || std::abs(o.margin(x, Method::kLA)) < kTol)
      continue;
    found = o.member(x, Method::kSFLA) && !o.member(x, Method::kLA);
  }
  report(7, found,
         found ? fmt("SFLA-only witness found after %d trials", trials)
               : fmt("no SFLA-only witness in %d trials", trials));
}

// Criterion 10: Bonferroni VaR behaviour.
void criterion10() {
  Rng rng(1010);
  std::size_t nonmono = 0;
  for (int row = 0; row < 20; ++row) {
    std::vector<double> v(5 + rng.below(20));
    for (double& x : v) x = rng.normal();
    const double nb = rng.uniform(0.5, 2.0), theta = rng.uniform(0.01, 0.3);
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    double prev = 1e300;
    for (int g = 0; g < 50; ++g) {
      const double eta = -*mx - 1.0 + (*mx - *mn + 3.0) * g / 49.0;
      const double val = bonferroni_g(eta, v, nb, theta);
      if (val > prev + 1e-12) ++nonmono;
      prev = val;
    }
  }

  double worst_q = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t N = 30 + rng.below(40);
    Matrix samples(N, 2);
    for (std::size_t i = 0; i < N; ++i) {
      samples(i, 0) = rng.normal();
      samples(i, 1) = rng.normal();
    }
    const ScenarioSet scen(samples);
    const SafetySystem sys({{{1.0}, {rng.uniform(-1, 1), rng.uniform(-1, 1)}, 1.0}},
                           NormKind::kL2, {{0.0, 1.0}});
    double eps = rng.uniform(0.05, 0.3);
    while (std::abs(eps * N - std::round(eps * N)) < 0.1) eps += 0.01;
    const BonferroniVaR var = bonferroni_var(scen, sys, 0, {eps, 1e-12}, eps);
    std::vector<double> loss;
    for (std::size_t i = 0; i < N; ++i) loss.push_back(-dot(sys.row(0).b, scen.sample(i)));
    std::sort(loss.begin(), loss.end(), std::greater<>());
    const double q = loss[static_cast<std::size_t>(std::floor(eps * N))];
    worst_q = std::max(worst_q, std::abs(var.eta - q));
  }

  int tries = 0;
  bool witness = false;
  while (!witness && tries < 500) {
    ++tries;
    const RandomInstance ri = testing::random_instance(rng);
    std::vector<double> c(ri.sys.L());
    for (double& v : c) v = rng.uniform(-1.0, 1.0);
    auto status = [&](Method m) {
      std::vector<VarId> x;
      Model model = testing::box_model(ri.sys, x);
      for (std::size_t j = 0; j < x.size(); ++j) model.add_objective_term(x[j], c[j]);
      try {
        (void)build_block(m, model, XExpression::from_system(ri.sys, x), ri.scen, ri.sys, ri.amb);
      } catch (const UnboundedVaRError&) {
        return SolveStatus::kInfeasible;
      }
      return solve(model, exact_options()).status;
    };
    witness = status(Method::kBonferroni) == SolveStatus::kInfeasible &&
              status(Method::kSFLA) == SolveStatus::kOptimal;
  }
  report(10, nonmono == 0 && worst_q <= 1e-4 && witness,
         fmt("g nonincreasing on 20 rows (%zu rises); theta=1e-12 VaR off the empirical "
             "quantile by at most %.2e; Bonferroni-infeasible/SFLA-feasible instance %s",
             nonmono, worst_q, witness ? fmt("found after %d tries", tries).c_str() : "not found"));
}

// Criterion 11: unit commitment, tiny preset.
void criterion11() {
  const AmbiguityConfig amb{0.05, 0.1};
  SolveOptions opts;
  opts.threads = 1;
  opts.time_limit_s = 60.0;
  opts.mip_gap = 1e-3;
  std::size_t runs = 0, slow = 0, order_bad = 0, rows_bad = 0, rel_bad = 0;
  double rel_min = 1.0, rel_max = 0.0, rel_sum = 0.0, slowest = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const UCInstance inst = generate_uc_instance("tiny", seed, 20, 2000);
    const SafetySystem sys = uc_safety_system(inst.config);
    const std::size_t N = 20, P = sys.P(), k = amb.k(N);
    std::size_t below = 0;
    for (std::size_t p = 0; p < P; ++p) below += testing::row_order(inst.scenarios, sys.row(p), k).below;

    std::optional<double> obj_sfla, obj_exs;
    for (Method m : {Method::kSFLA, Method::kExactS, Method::kLA}) {
      ++runs;
      const UCModel model = build_uc_model(inst.config, inst.scenarios, amb, m);
      std::size_t want = expected_rows(m, inst.scenarios, model.system, amb);
      if (m == Method::kSFLA) want = 1 + below + P;
      if (m == Method::kLA) want = 1 + N * P;
      if (model.block.num_rows() != want) ++rows_bad;

      const SolveResult r = solve(model.model, opts);
      slowest = std::max(slowest, r.wall_time_s);
      if (r.status != SolveStatus::kOptimal || r.wall_time_s > 60.0) {
        ++slow;
        continue;
      }
      if (m == Method::kSFLA) obj_sfla = r.objective;
      if (m == Method::kExactS) obj_exs = r.objective;
      const double rel =
          reliability_at(uc_activities(model, r.values), inst.scenarios.holdout(), model.system);
      if (!(rel >= 0.0 && rel <= 1.0)) ++rel_bad;
      rel_min = std::min(rel_min, rel);
      rel_max = std::max(rel_max, rel);
      rel_sum += rel;
    }
    if (!obj_sfla || !obj_exs ||
        *obj_sfla < *obj_exs - (opts.mip_gap * std::abs(*obj_exs) + 1e-6))
      ++order_bad;
  }
  report(11, slow == 0 && order_bad == 0 && rows_bad == 0 && rel_bad == 0,
         fmt("UC tiny, 10 seeds, %zu runs: %zu not optimal within 60 s (slowest %.2f s), "
             "%zu cost-order violations, %zu row-count mismatches, reliability in [%.3f, %.3f] "
             "mean %.3f",
             runs, slow, slowest, order_bad, rows_bad, rel_min, rel_max,
             rel_sum / static_cast<double>(runs - slow)));
}

// Criterion 12: SFLA vs LA build+solve time on a larger pure LP.
void criterion12() {
  Rng rng(1212);
  const std::size_t N = 500, P = 20, K = 5, L = 3;
  Matrix samples(N, K);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < K; ++k) samples(i, k) = rng.normal(0.0, 0.3);
  std::vector<SafetyRow> rows;
  for (std::size_t p = 0; p < P; ++p) {
    SafetyRow r;
    for (std::size_t j = 0; j < L; ++j) r.a.push_back(rng.uniform(0.2, 1.0));
    for (std::size_t k = 0; k < K; ++k) r.b.push_back(rng.uniform(-1.0, 1.0));
    r.d = rng.uniform(1.0, 3.0);
    rows.push_back(std::move(r));
  }
  const ScenarioSet scen(std::move(samples));
  const SafetySystem sys(std::move(rows), NormKind::kL2, std::vector<Bounds>(L, {0.0, 5.0}));
  const AmbiguityConfig amb{0.05, 0.05};

  auto median_time = [&](Method m) {
    std::vector<double> t;
    for (int run = 0; run < 10; ++run) {
      const auto t0 = Clock::now();
      std::vector<VarId> x;
      Model model(ObjSense::kMaximize);
      for (std::size_t j = 0; j < L; ++j) {
        x.push_back(model.add_continuous(0.0, 5.0));
        model.add_objective_term(x.back(), 1.0);
      }
      (void)build_block(m, model, XExpression::from_system(sys, x), scen, sys, amb);
      SolveOptions o;
      o.threads = 1;
      (void)solve(model, o);
      t.push_back(seconds_since(t0));
    }
    std::nth_element(t.begin(), t.begin() + 5, t.end());
    return t[5];
  };
  const double sfla = median_time(Method::kSFLA);
  const double la = median_time(Method::kLA);
  report(12, sfla <= la,
         fmt("median build+solve over 10 runs at N=500, P=20: SFLA %.4f s, LA %.4f s (%.1fx)",
             sfla, la, la / sfla),
         false);
}

}  // namespace

int main() {
  try {
    const SweepStats st = sweep();
    report(1, st.chain_violations == 0 && st.mip_mismatch == 0 && st.seconds < 600.0,
           fmt("inclusion chain over %zu instances, %zu samples (%zu borderline): %zu chain "
               "violations, %zu ExactMIP/ExactS vs oracle mismatches, %.1f s",
               st.instances, st.samples, st.borderline, st.chain_violations, st.mip_mismatch,
               st.seconds));
    report(2, st.c2_agree == st.c2_total,
           fmt("SFLA(1) vs LA(1) agree on %zu/%zu samples", st.c2_agree, st.c2_total));
    report(3, st.c3_agree == st.c3_total,
           fmt("SFLA(1) vs WCVaR(w*) agree on %zu/%zu samples", st.c3_agree, st.c3_total));
    report(4,
           st.c4_instances > 0 && st.c4_agree == st.c4_total &&
               st.c4_closed_agree == st.c4_closed_total,
           fmt("%zu instances with eps <= 1/N: SFLA(1) vs oracle %zu/%zu, k=0 closed form "
               "%zu/%zu",
               st.c4_instances, st.c4_agree, st.c4_total, st.c4_closed_agree,
               st.c4_closed_total));
    criterion5();
    criterion6();
    criterion7();
    report(8, st.c8_bad == 0 && st.c8_distinct_bad == 0,
           fmt("%zu builds: %zu row-count mismatches; %zu distinct-value instances, %zu with "
               "sum |[N]_p| != kP",
               st.c8_builds, st.c8_bad, st.c8_distinct, st.c8_distinct_bad));
    report(9, st.c9_bad == 0,
           fmt("%zu oracle-feasible samples: %zu with more than floor(eps N) in-sample "
               "violations",
               st.c9_feasible, st.c9_bad));
    criterion10();
    criterion11();
    criterion12();
  } catch (const std::exception& e) {
    std::printf("[FAIL] aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%s: %d gating criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
