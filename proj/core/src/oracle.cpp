#include "wdrjcc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "build_detail.hpp"
#include "wdrjcc/error.hpp"
#include "wdrjcc/solve.hpp"

namespace wdrjcc {
namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

// max over s in [0, cap] of eps*N*s - sum (s - e_i)^+ ; e_i may be +inf.
double max_budget(std::vector<double> e, double epsilon, double cap) {
  std::sort(e.begin(), e.end());
  const double eN = epsilon * static_cast<double>(e.size());
  std::vector<double> prefix(e.size() + 1, 0.0);
  for (std::size_t i = 0; i < e.size(); ++i)
    prefix[i + 1] = prefix[i] + (std::isfinite(e[i]) ? e[i] : 0.0);
  auto value = [&](double s) {
    const auto cnt = static_cast<std::size_t>(std::lower_bound(e.begin(), e.end(), s) - e.begin());
    return eN * s - (static_cast<double>(cnt) * s - prefix[cnt]);
  };
  double best = value(0.0);
  if (std::isfinite(cap)) best = std::max(best, value(cap));
  for (double s : e)
    if (s > 0.0 && s <= cap && std::isfinite(s)) best = std::max(best, value(s));
  return best;
}

SolveOptions membership_options() {
  SolveOptions o;
  o.time_limit_s = 300.0;
  o.mip_gap = 1e-9;
  o.threads = 1;
  return o;
}

}  // namespace

std::vector<double> activities(const SafetySystem& sys, std::span<const double> x) {
  if (x.size() != sys.L())
    throw ModelError("x has " + std::to_string(x.size()) + " entries, expected " +
                     std::to_string(sys.L()));
  std::vector<double> ax(sys.P());
  for (std::size_t p = 0; p < sys.P(); ++p) ax[p] = dot(sys.row(p).a, x);
  return ax;
}

double budget_value(std::span<const double> dists, double epsilon, double s) {
  double v = epsilon * static_cast<double>(dists.size()) * s;
  for (double d : dists) v -= std::max(0.0, s - d);
  return v;
}

namespace {

double signed_dist_at(std::span<const double> ax, std::span<const double> xi,
                      const SafetySystem& sys) {
  double best = kInfD;
  for (std::size_t p = 0; p < sys.P(); ++p) {
    const SafetyRow& r = sys.row(p);
    best = std::min(best, (dot(r.b, xi) + r.d - ax[p]) / sys.dual_norm(p));
  }
  return best;
}

void check_activity(std::span<const double> ax, const SafetySystem& sys) {
  if (ax.size() != sys.P())
    throw ModelError("expected " + std::to_string(sys.P()) + " row activities, got " +
                     std::to_string(ax.size()));
}

}  // namespace

OracleResult exact_feasible_at(std::span<const double> ax, const ScenarioSet& scen,
                               const SafetySystem& sys, const AmbiguityConfig& amb) {
  amb.validate();
  check_compatible(scen, sys);
  check_activity(ax, sys);
  const std::size_t N = scen.N();
  OracleResult out;
  out.dists.resize(N);
  for (std::size_t i = 0; i < N; ++i)
    out.dists[i] = std::max(0.0, signed_dist_at(ax, scen.sample(i), sys));
  std::vector<double> sorted = out.dists;
  const std::size_t k = amb.k(N);
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end());
  out.s_star = sorted[k];
  out.value = budget_value(out.dists, amb.epsilon, out.s_star);
  out.feasible = out.value >= amb.theta * static_cast<double>(N);
  out.margin = out.value / static_cast<double>(N) - amb.theta;
  return out;
}

OracleResult exact_feasible(std::span<const double> x, const ScenarioSet& scen,
                            const SafetySystem& sys, const AmbiguityConfig& amb) {
  return exact_feasible_at(activities(sys, x), scen, sys, amb);
}

std::size_t in_sample_violations_at(std::span<const double> ax, const Matrix& samples,
                                    const SafetySystem& sys) {
  check_activity(ax, sys);
  std::size_t n = 0;
  for (std::size_t i = 0; i < samples.rows(); ++i)
    if (signed_dist_at(ax, samples.row(i), sys) <= 1e-9) ++n;
  return n;
}

std::size_t in_sample_violations(std::span<const double> x, const ScenarioSet& scen,
                                 const SafetySystem& sys) {
  check_compatible(scen, sys);
  return in_sample_violations_at(activities(sys, x), scen.samples(), sys);
}

double reliability_at(std::span<const double> ax, const Matrix& holdout, const SafetySystem& sys) {
  check_activity(ax, sys);
  if (holdout.empty()) throw ModelError("reliability needs a nonempty holdout set");
  if (holdout.cols() != sys.K()) throw ModelError("holdout width does not match K");
  std::size_t ok = 0;
  for (std::size_t i = 0; i < holdout.rows(); ++i) {
    bool all = true;
    for (std::size_t p = 0; p < sys.P() && all; ++p) {
      const SafetyRow& r = sys.row(p);
      all = ax[p] <= dot(r.b, holdout.row(i)) + r.d;
    }
    if (all) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(holdout.rows());
}

double reliability(std::span<const double> x, const Matrix& holdout, const SafetySystem& sys) {
  return reliability_at(activities(sys, x), holdout, sys);
}

MembershipOracle::MembershipOracle(const ScenarioSet& scen, const SafetySystem& sys,
                                   const AmbiguityConfig& amb, MembershipParams params)
    : scen_(scen), sys_(sys), amb_(amb), params_(std::move(params)) {
  amb_.validate();
  od_ = order_data(scen_, sys_, amb_);
  kappa_ = params_.kappa.empty() ? std::vector<double>(scen_.N(), 1.0) : params_.kappa;
  if (kappa_.size() != scen_.N()) throw ModelError("kappa length must equal N");
  for (double k : kappa_)
    if (!(k >= 0.0 && k <= 1.0)) throw ModelError("kappa entries must lie in [0,1]");
  w_ = params_.w.empty() ? uniform_weights(sys_.P()) : params_.w;
  if (w_.size() != sys_.P()) throw ModelError("w length must equal P");
}

const std::vector<double>& MembershipOracle::eta() const {
  if (!eta_) {
    const std::size_t P = sys_.P();
    std::vector<double> eps = params_.eps_alloc.empty()
                                  ? std::vector<double>(P, amb_.epsilon / static_cast<double>(P))
                                  : params_.eps_alloc;
    std::vector<double> eta(P);
    for (std::size_t p = 0; p < P; ++p) eta[p] = bonferroni_var(scen_, sys_, p, amb_, eps[p]).eta;
    eta_ = std::move(eta);
  }
  return *eta_;
}

double MembershipOracle::margin(std::span<const double> x, Method method) const {
  const std::vector<double> ax = activities(sys_, x);
  const std::size_t N = scen_.N(), P = sys_.P();
  const double Nd = static_cast<double>(N);
  switch (method) {
    case Method::kExactMIP:
    case Method::kExactS: return exact_feasible_at(ax, scen_, sys_, amb_).margin;
    case Method::kLA: {
      std::vector<double> e(N);
      for (std::size_t i = 0; i < N; ++i)
        e[i] = kappa_[i] * signed_dist_at(ax, scen_.sample(i), sys_);
      return max_budget(std::move(e), amb_.epsilon, kInfD) / Nd - amb_.theta;
    }
    case Method::kSFLA: {
      double cap = kInfD;
      for (std::size_t p = 0; p < P; ++p)
        cap = std::min(cap, (od_.q[p] + sys_.row(p).d - ax[p]) / sys_.dual_norm(p));
      if (cap < 0.0) return cap;
      std::vector<double> e(N, kInfD);
      for (std::size_t p = 0; p < P; ++p)
        for (std::size_t i : od_.below[p]) {
          const double slack = (od_.values[p][i] + sys_.row(p).d - ax[p]) / sys_.dual_norm(p);
          e[i] = std::min(e[i], kappa_[i] * slack);
        }
      return max_budget(std::move(e), amb_.epsilon, cap) / Nd - amb_.theta;
    }
    case Method::kWCVaR: {
      double beta = 0.0;
      for (std::size_t p = 0; p < P; ++p) beta = std::max(beta, w_[p] * sys_.dual_norm(p));
      std::vector<double> c(N, -kInfD);
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t p = 0; p < P; ++p)
          c[i] = std::max(c[i], w_[p] * (ax[p] - od_.values[p][i] - sys_.row(p).d));
      double best = kInfD;
      for (double tau : c) {
        double tail = 0.0;
        for (double ci : c) tail += std::max(0.0, ci - tau);
        best = std::min(best, tau + (amb_.theta * beta + tail / Nd) / amb_.epsilon);
      }
      return -best;
    }
    case Method::kBonferroni: {
      const std::vector<double>& eta_v = eta();
      double m = kInfD;
      for (std::size_t p = 0; p < P; ++p) m = std::min(m, sys_.row(p).d - eta_v[p] - ax[p]);
      return m;
    }
  }
  throw ModelError("unknown method");
}

std::optional<double> MembershipOracle::lp_margin(std::span<const double> x,
                                                  Method method) const {
  const std::vector<double> ax = activities(sys_, x);
  if (method == Method::kBonferroni) return margin(x, method);

  detail::BuildFlags flags;
  flags.budget_row = false;
  flags.theta_scale = params_.theta_scale;
  BuildParams bp;
  bp.kappa = kappa_;
  bp.w = w_;
  bp.eps_alloc = params_.eps_alloc;

  const bool maximize = method != Method::kWCVaR;
  Model model(maximize ? ObjSense::kMaximize : ObjSense::kMinimize);
  const XExpression xexpr = XExpression::constants(ax);
  const ReformulationBlock block =
      detail::build_block(method, model, xexpr, scen_, sys_, amb_, bp, flags);
  const double Nd = static_cast<double>(scen_.N());
  const double theta = amb_.theta * params_.theta_scale;
  if (maximize) {
    model.add_objective_term(*block.s, amb_.epsilon * Nd);
    for (VarId r : block.r) model.add_objective_term(r, -1.0);
  } else {
    model.add_objective_term(*block.tau, 1.0);
    model.add_objective_term(*block.beta, theta / amb_.epsilon);
    for (VarId a : block.alpha) model.add_objective_term(a, 1.0 / (amb_.epsilon * Nd));
  }
  const SolveResult res = solve(model, membership_options(), params_.backend);
  if (res.status == SolveStatus::kInfeasible) return std::nullopt;
  if (res.status != SolveStatus::kOptimal)
    throw BackendError(std::string("membership solve for ") + std::string(to_string(method)) +
                       " ended with status " + std::string(to_string(res.status)) + " " +
                       res.message);
  if (maximize) return *res.objective / Nd - theta;
  return -*res.objective;
}

bool MembershipOracle::member(std::span<const double> x, Method method) const {
  const std::optional<double> m = lp_margin(x, method);
  return m && *m >= -params_.tol;
}

bool membership(std::span<const double> x, Method method, const MembershipParams& params,
                const ScenarioSet& scen, const SafetySystem& sys, const AmbiguityConfig& amb) {
  return MembershipOracle(scen, sys, amb, params).member(x, method);
}

MembershipReport membership_report(const MembershipOracle& oracle, std::span<const double> x,
                                   bool with_mip) {
  MembershipReport rep;
  rep.x.assign(x.begin(), x.end());
  OracleResult ex = exact_feasible(x, oracle.scenarios(), oracle.system(), oracle.ambiguity());
  rep.oracle = ex.feasible;
  rep.s_star = ex.s_star;
  rep.dists = std::move(ex.dists);
  rep.la = oracle.member(x, Method::kLA);
  rep.sfla = oracle.member(x, Method::kSFLA);
  rep.wcvar = oracle.member(x, Method::kWCVaR);
  try {
    rep.bonferroni = oracle.member(x, Method::kBonferroni);
  } catch (const UnboundedVaRError&) {
    rep.bonferroni.reset();
  }
  if (with_mip) {
    rep.exact_mip = oracle.member(x, Method::kExactMIP);
    rep.exacts = oracle.member(x, Method::kExactS);
  }
  return rep;
}

}  // namespace wdrjcc
