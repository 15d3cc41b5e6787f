#include "wdrjcc/reformulations.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "build_detail.hpp"
#include "wdrjcc/error.hpp"

namespace wdrjcc {

double AffineExpr::evaluate(std::span<const double> values) const {
  double v = constant;
  for (const Term& t : terms) v += t.coef * values[static_cast<std::size_t>(t.var)];
  return v;
}

XExpression XExpression::from_system(const SafetySystem& sys, std::span<const VarId> x_vars) {
  if (x_vars.size() != sys.L())
    throw ModelError("expected " + std::to_string(sys.L()) + " x variables, got " +
                     std::to_string(x_vars.size()));
  std::vector<AffineExpr> rows(sys.P());
  for (std::size_t p = 0; p < sys.P(); ++p)
    for (std::size_t j = 0; j < sys.L(); ++j)
      if (sys.row(p).a[j] != 0.0) rows[p].terms.push_back({x_vars[j], sys.row(p).a[j]});
  return XExpression(std::move(rows));
}

XExpression XExpression::fixed(const SafetySystem& sys, std::span<const double> x) {
  if (x.size() != sys.L())
    throw ModelError("x has " + std::to_string(x.size()) + " entries, expected " +
                     std::to_string(sys.L()));
  std::vector<AffineExpr> rows(sys.P());
  for (std::size_t p = 0; p < sys.P(); ++p) rows[p].constant = dot(sys.row(p).a, x);
  return XExpression(std::move(rows));
}

XExpression XExpression::constants(std::span<const double> activities) {
  std::vector<AffineExpr> rows(activities.size());
  for (std::size_t p = 0; p < activities.size(); ++p) rows[p].constant = activities[p];
  return XExpression(std::move(rows));
}

void XExpression::check(const Model& model, std::size_t P) const {
  if (rows_.size() != P)
    throw ModelError("x expression has " + std::to_string(rows_.size()) + " rows, expected " +
                     std::to_string(P));
  for (const AffineExpr& e : rows_)
    for (const Term& t : e.terms)
      if (t.var < 0 || static_cast<std::size_t>(t.var) >= model.num_variables())
        throw ModelError("x expression references undeclared variable " + std::to_string(t.var));
}

Method parse_method(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::erase(s, '-');
  std::erase(s, '_');
  if (s == "exactmip" || s == "exact") return Method::kExactMIP;
  if (s == "exacts") return Method::kExactS;
  if (s == "la") return Method::kLA;
  if (s == "sfla") return Method::kSFLA;
  if (s == "wcvar") return Method::kWCVaR;
  if (s == "bonferroni") return Method::kBonferroni;
  throw ParseError("unknown method '" + std::string(text) + "'");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kExactMIP: return "ExactMIP";
    case Method::kExactS: return "ExactS";
    case Method::kLA: return "LA";
    case Method::kSFLA: return "SFLA";
    case Method::kWCVaR: return "WCVaR";
    case Method::kBonferroni: return "Bonferroni";
  }
  return "SFLA";
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = {Method::kExactMIP, Method::kExactS, Method::kLA,
                                              Method::kSFLA,     Method::kWCVaR,  Method::kBonferroni};
  return methods;
}

bool uses_binaries(Method m) { return m == Method::kExactMIP || m == Method::kExactS; }

namespace {

std::pair<double, double> expr_range(const AffineExpr& e, const Model& model) {
  double lo = e.constant, hi = e.constant;
  for (const Term& t : e.terms) {
    const VarDecl& v = model.variable(t.var);
    lo += t.coef > 0 ? t.coef * v.lower : t.coef * v.upper;
    hi += t.coef > 0 ? t.coef * v.upper : t.coef * v.lower;
  }
  return {lo, hi};
}

std::pair<double, double> activity_range(const SafetyRow& row, const std::vector<Bounds>& box) {
  double lo = 0.0, hi = 0.0;
  for (std::size_t j = 0; j < row.a.size(); ++j) {
    const double a = row.a[j];
    if (a == 0.0) continue;
    lo += a > 0 ? a * box[j].first : a * box[j].second;
    hi += a > 0 ? a * box[j].second : a * box[j].first;
  }
  return {lo, hi};
}

double bigM_from_ranges(const std::vector<std::pair<double, double>>& ranges,
                        const SafetySystem& sys, const ScenarioSet& scen) {
  check_compatible(scen, sys);
  double m = 1.0;
  for (std::size_t p = 0; p < sys.P(); ++p) {
    const auto [lo, hi] = ranges[p];
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw ModelError("big-M needs finite bounds on every variable in a_p^T x");
    const double nb = sys.dual_norm(p);
    for (std::size_t i = 0; i < scen.N(); ++i) {
      const double v = dot(sys.row(p).b, scen.sample(i)) + sys.row(p).d;
      m = std::max({m, std::abs(v - lo) / nb, std::abs(v - hi) / nb});
    }
  }
  return 1.05 * m;
}

void check_kappa(std::span<const double> kappa, std::size_t N) {
  if (kappa.empty()) return;
  if (kappa.size() != N)
    throw ModelError("kappa has " + std::to_string(kappa.size()) + " entries, expected " +
                     std::to_string(N));
  for (double k : kappa)
    if (!(k >= 0.0 && k <= 1.0)) throw ModelError("kappa entries must lie in [0,1]");
}

void check_weights(std::span<const double> w, std::size_t P) {
  if (w.size() != P)
    throw ModelError("w has " + std::to_string(w.size()) + " entries, expected " +
                     std::to_string(P));
  double sum = 0.0;
  for (double x : w) {
    if (!(x > 0.0 && x <= 1.0)) throw ModelError("w entries must lie in (0,1]");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ModelError("w entries must sum to 1");
}

void check_alloc(std::span<const double> eps, std::size_t P, double epsilon) {
  if (eps.size() != P)
    throw ModelError("epsilon allocation has " + std::to_string(eps.size()) +
                     " entries, expected " + std::to_string(P));
  double sum = 0.0;
  for (double e : eps) {
    if (!(e > 0.0)) throw ModelError("epsilon allocation entries must be positive");
    sum += e;
  }
  if (sum > epsilon * (1.0 + 1e-12)) throw ModelError("epsilon allocation exceeds epsilon");
}

class Builder {
 public:
  Builder(Method method, Model& model, const XExpression& xexpr, const ScenarioSet& scen,
          const SafetySystem& sys, const AmbiguityConfig& amb, const detail::BuildFlags& flags)
      : model_(model), xexpr_(xexpr), scen_(scen), sys_(sys), amb_(amb), flags_(flags),
        prefix_(lower(to_string(method))) {
    amb_.validate();
    check_compatible(scen_, sys_);
    xexpr_.check(model_, sys_.P());
    block_.method = method;
    block_.first_var = model_.num_variables();
  }

  ReformulationBlock finish() {
    block_.num_vars = model_.num_variables() - block_.first_var;
    return std::move(block_);
  }

  double theta() const { return amb_.theta * flags_.theta_scale; }
  double N() const { return static_cast<double>(scen_.N()); }

  void add_s_r() {
    block_.s = model_.add_continuous(0.0, kInf, prefix_ + "_s");
    for (std::size_t i = 0; i < scen_.N(); ++i)
      block_.r.push_back(model_.add_continuous(0.0, kInf, prefix_ + "_r" + std::to_string(i)));
  }

  void add_z() {
    for (std::size_t i = 0; i < scen_.N(); ++i)
      block_.z.push_back(model_.add_binary(prefix_ + "_z" + std::to_string(i)));
  }

  // eps N s - sum r >= theta N
  void add_budget() {
    if (!flags_.budget_row) return;
    std::vector<Term> terms;
    terms.push_back({*block_.s, amb_.epsilon * N()});
    for (VarId r : block_.r) terms.push_back({r, -1.0});
    add_row(std::move(terms), RowSense::kGreaterEqual, theta() * N(), "budget");
  }

  // kappa (v + d - E_p) / ||b|| + extra >= s - r_i
  void add_distance_row(std::size_t p, std::size_t i, double kappa, double v,
                        std::vector<Term> extra) {
    const double nb = sys_.dual_norm(p);
    const AffineExpr& e = xexpr_.row(p);
    std::vector<Term> terms = std::move(extra);
    if (kappa != 0.0)
      for (const Term& t : e.terms) terms.push_back({t.var, -kappa * t.coef / nb});
    terms.push_back({*block_.s, -1.0});
    terms.push_back({block_.r[i], 1.0});
    const double rhs = -kappa * (v + sys_.row(p).d - e.constant) / nb;
    add_row(std::move(terms), RowSense::kGreaterEqual, rhs,
            "dist_" + std::to_string(i) + "_" + std::to_string(p));
  }

  // M (1 - z_i) >= s - r_i
  void add_bigM_row(std::size_t i, double M) {
    add_row({{*block_.s, 1.0}, {block_.r[i], -1.0}, {block_.z[i], M}}, RowSense::kLessEqual, M,
            "bigm_" + std::to_string(i));
  }

  // (q_p + d_p - E_p) / ||b|| >= s
  void add_q_row(std::size_t p, double q) {
    const double nb = sys_.dual_norm(p);
    const AffineExpr& e = xexpr_.row(p);
    std::vector<Term> terms;
    for (const Term& t : e.terms) terms.push_back({t.var, t.coef / nb});
    terms.push_back({*block_.s, 1.0});
    add_row(std::move(terms), RowSense::kLessEqual, (q + sys_.row(p).d - e.constant) / nb,
            "q_" + std::to_string(p));
  }

  RowId add_row(std::vector<Term> terms, RowSense sense, double rhs, const std::string& name) {
    const RowId id = model_.add_constraint(std::move(terms), sense, rhs, prefix_ + "_" + name);
    block_.rows.push_back(id);
    return id;
  }

  double value(std::size_t p, std::size_t i) const {
    return dot(sys_.row(p).b, scen_.sample(i));
  }

  Model& model_;
  const XExpression& xexpr_;
  const ScenarioSet& scen_;
  const SafetySystem& sys_;
  const AmbiguityConfig& amb_;
  detail::BuildFlags flags_;
  std::string prefix_;
  ReformulationBlock block_;

 private:
  static std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  }
};

double resolve_bigM(std::optional<double> big_m, const Builder& b) {
  if (big_m) {
    if (!(*big_m > 0.0) || !std::isfinite(*big_m)) throw ModelError("big-M must be positive");
    return *big_m;
  }
  return compute_bigM(b.xexpr_, b.model_, b.sys_, b.scen_);
}

ReformulationBlock exact_mip(Builder b, std::optional<double> big_m) {
  const double M = resolve_bigM(big_m, b);
  b.block_.big_m = M;
  b.add_s_r();
  b.add_z();
  b.add_budget();
  for (std::size_t i = 0; i < b.scen_.N(); ++i) b.add_bigM_row(i, M);
  for (std::size_t i = 0; i < b.scen_.N(); ++i)
    for (std::size_t p = 0; p < b.sys_.P(); ++p)
      b.add_distance_row(p, i, 1.0, b.value(p, i), {{b.block_.z[i], M}});
  return b.finish();
}

ReformulationBlock exacts(Builder b, std::optional<double> big_m) {
  const double M = resolve_bigM(big_m, b);
  const OrderData od = order_data(b.scen_, b.sys_, b.amb_);
  b.block_.big_m = M;
  b.add_s_r();
  b.add_z();
  b.add_budget();
  std::vector<Term> card;
  for (VarId z : b.block_.z) card.push_back({z, 1.0});
  b.add_row(std::move(card), RowSense::kLessEqual, static_cast<double>(od.k), "card");
  for (std::size_t i = 0; i < b.scen_.N(); ++i) b.add_bigM_row(i, M);
  for (std::size_t p = 0; p < b.sys_.P(); ++p)
    for (std::size_t i : od.below[p]) {
      const double v = od.values[p][i];
      const double coef = (od.q[p] - v) / b.sys_.dual_norm(p);
      b.add_distance_row(p, i, 1.0, v, {{b.block_.z[i], coef}});
    }
  for (std::size_t p = 0; p < b.sys_.P(); ++p) b.add_q_row(p, od.q[p]);
  return b.finish();
}

std::vector<double> resolve_kappa(std::span<const double> kappa, std::size_t N) {
  check_kappa(kappa, N);
  if (kappa.empty()) return std::vector<double>(N, 1.0);
  return {kappa.begin(), kappa.end()};
}

ReformulationBlock la(Builder b, std::span<const double> kappa_in) {
  b.block_.kappa = resolve_kappa(kappa_in, b.scen_.N());
  b.add_s_r();
  b.add_budget();
  for (std::size_t i = 0; i < b.scen_.N(); ++i)
    for (std::size_t p = 0; p < b.sys_.P(); ++p)
      b.add_distance_row(p, i, b.block_.kappa[i], b.value(p, i), {});
  return b.finish();
}

ReformulationBlock sfla(Builder b, std::span<const double> kappa_in) {
  b.block_.kappa = resolve_kappa(kappa_in, b.scen_.N());
  const OrderData od = order_data(b.scen_, b.sys_, b.amb_);
  b.add_s_r();
  b.add_budget();
  for (std::size_t p = 0; p < b.sys_.P(); ++p)
    for (std::size_t i : od.below[p])
      b.add_distance_row(p, i, b.block_.kappa[i], od.values[p][i], {});
  for (std::size_t p = 0; p < b.sys_.P(); ++p) b.add_q_row(p, od.q[p]);
  return b.finish();
}

ReformulationBlock wcvar(Builder b, std::span<const double> w_in) {
  const std::size_t P = b.sys_.P();
  std::vector<double> w = w_in.empty() ? uniform_weights(P) : std::vector<double>(w_in.begin(), w_in.end());
  check_weights(w, P);
  b.block_.w = w;
  const std::size_t N = b.scen_.N();
  for (std::size_t i = 0; i < N; ++i)
    b.block_.alpha.push_back(
        b.model_.add_continuous(0.0, kInf, b.prefix_ + "_alpha" + std::to_string(i)));
  b.block_.beta = b.model_.add_continuous(-kInf, kInf, b.prefix_ + "_beta");
  b.block_.tau = b.model_.add_continuous(-kInf, kInf, b.prefix_ + "_tau");
  const double eps = b.amb_.epsilon;
  if (b.flags_.budget_row) {
    std::vector<Term> terms{{*b.block_.tau, 1.0}, {*b.block_.beta, b.theta() / eps}};
    for (VarId a : b.block_.alpha) terms.push_back({a, 1.0 / (eps * b.N())});
    b.add_row(std::move(terms), RowSense::kLessEqual, 0.0, "budget");
  }
  // alpha_i >= w_p (E_p - v - d) - tau
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t p = 0; p < P; ++p) {
      const AffineExpr& e = b.xexpr_.row(p);
      std::vector<Term> terms{{b.block_.alpha[i], 1.0}, {*b.block_.tau, 1.0}};
      for (const Term& t : e.terms) terms.push_back({t.var, -w[p] * t.coef});
      const double rhs = w[p] * (e.constant - b.value(p, i) - b.sys_.row(p).d);
      b.add_row(std::move(terms), RowSense::kGreaterEqual, rhs,
                "cvar_" + std::to_string(i) + "_" + std::to_string(p));
    }
  for (std::size_t p = 0; p < P; ++p)
    b.add_row({{*b.block_.beta, 1.0}}, RowSense::kGreaterEqual, w[p] * b.sys_.dual_norm(p),
              "beta_" + std::to_string(p));
  return b.finish();
}

ReformulationBlock bonferroni(Builder b, std::span<const double> eps_in) {
  const std::size_t P = b.sys_.P();
  std::vector<double> eps = eps_in.empty()
                                ? std::vector<double>(P, b.amb_.epsilon / static_cast<double>(P))
                                : std::vector<double>(eps_in.begin(), eps_in.end());
  check_alloc(eps, P, b.amb_.epsilon);
  b.block_.eps_alloc = eps;
  AmbiguityConfig scaled = b.amb_;
  scaled.theta = b.theta();
  for (std::size_t p = 0; p < P; ++p)
    b.block_.eta.push_back(bonferroni_var(b.scen_, b.sys_, p, scaled, eps[p]).eta);
  // E_p <= d_p - eta_p
  for (std::size_t p = 0; p < P; ++p) {
    const AffineExpr& e = b.xexpr_.row(p);
    b.add_row(e.terms, RowSense::kLessEqual, b.sys_.row(p).d - b.block_.eta[p] - e.constant,
              "var_" + std::to_string(p));
  }
  return b.finish();
}

}  // namespace

double compute_bigM(const SafetySystem& sys, const ScenarioSet& scen) {
  if (!sys.bounded()) throw ModelError("big-M needs a bounded x box");
  std::vector<std::pair<double, double>> ranges;
  for (const SafetyRow& row : sys.rows()) ranges.push_back(activity_range(row, sys.x_bounds()));
  return bigM_from_ranges(ranges, sys, scen);
}

double compute_bigM(const XExpression& xexpr, const Model& model, const SafetySystem& sys,
                    const ScenarioSet& scen) {
  xexpr.check(model, sys.P());
  std::vector<std::pair<double, double>> ranges;
  for (std::size_t p = 0; p < sys.P(); ++p) ranges.push_back(expr_range(xexpr.row(p), model));
  return bigM_from_ranges(ranges, sys, scen);
}

std::vector<double> uniform_weights(std::size_t P) {
  return std::vector<double>(P, 1.0 / static_cast<double>(P));
}

std::vector<double> wstar_weights(const SafetySystem& sys) {
  std::vector<double> w(sys.P());
  double total = 0.0;
  for (std::size_t p = 0; p < sys.P(); ++p) total += 1.0 / sys.dual_norm(p);
  for (std::size_t p = 0; p < sys.P(); ++p) w[p] = (1.0 / sys.dual_norm(p)) / total;
  return w;
}

namespace detail {

ReformulationBlock build_block(Method method, Model& model, const XExpression& xexpr,
                               const ScenarioSet& scen, const SafetySystem& sys,
                               const AmbiguityConfig& amb, const BuildParams& params,
                               const BuildFlags& flags) {
  Builder b(method, model, xexpr, scen, sys, amb, flags);
  switch (method) {
    case Method::kExactMIP: return exact_mip(std::move(b), params.big_m);
    case Method::kExactS: return exacts(std::move(b), params.big_m);
    case Method::kLA: return la(std::move(b), params.kappa);
    case Method::kSFLA: return sfla(std::move(b), params.kappa);
    case Method::kWCVaR: return wcvar(std::move(b), params.w);
    case Method::kBonferroni: return bonferroni(std::move(b), params.eps_alloc);
  }
  throw ModelError("unknown method");
}

}  // namespace detail

ReformulationBlock build_block(Method method, Model& model, const XExpression& xexpr,
                               const ScenarioSet& scen, const SafetySystem& sys,
                               const AmbiguityConfig& amb, const BuildParams& params) {
  return detail::build_block(method, model, xexpr, scen, sys, amb, params, {});
}

ReformulationBlock build_exact_mip(Model& model, const XExpression& xexpr, const ScenarioSet& scen,
                                   const SafetySystem& sys, const AmbiguityConfig& amb,
                                   std::optional<double> big_m) {
  BuildParams params;
  params.big_m = big_m;
  return build_block(Method::kExactMIP, model, xexpr, scen, sys, amb, params);
}

ReformulationBlock build_exacts(Model& model, const XExpression& xexpr, const ScenarioSet& scen,
                                const SafetySystem& sys, const AmbiguityConfig& amb,
                                std::optional<double> big_m) {
  BuildParams params;
  params.big_m = big_m;
  return build_block(Method::kExactS, model, xexpr, scen, sys, amb, params);
}

ReformulationBlock build_la(Model& model, const XExpression& xexpr, const ScenarioSet& scen,
                            const SafetySystem& sys, const AmbiguityConfig& amb,
                            std::span<const double> kappa) {
  BuildParams params;
  params.kappa.assign(kappa.begin(), kappa.end());
  return build_block(Method::kLA, model, xexpr, scen, sys, amb, params);
}

ReformulationBlock build_sfla(Model& model, const XExpression& xexpr, const ScenarioSet& scen,
                              const SafetySystem& sys, const AmbiguityConfig& amb,
                              std::span<const double> kappa) {
  BuildParams params;
  params.kappa.assign(kappa.begin(), kappa.end());
  return build_block(Method::kSFLA, model, xexpr, scen, sys, amb, params);
}

ReformulationBlock build_wcvar(Model& model, const XExpression& xexpr, const ScenarioSet& scen,
                               const SafetySystem& sys, const AmbiguityConfig& amb,
                               std::span<const double> w) {
  BuildParams params;
  params.w.assign(w.begin(), w.end());
  return build_block(Method::kWCVaR, model, xexpr, scen, sys, amb, params);
}

ReformulationBlock build_bonferroni(Model& model, const XExpression& xexpr,
                                    const ScenarioSet& scen, const SafetySystem& sys,
                                    const AmbiguityConfig& amb, std::span<const double> eps_alloc) {
  BuildParams params;
  params.eps_alloc.assign(eps_alloc.begin(), eps_alloc.end());
  return build_block(Method::kBonferroni, model, xexpr, scen, sys, amb, params);
}

std::size_t expected_rows(Method method, const ScenarioSet& scen, const SafetySystem& sys,
                          const AmbiguityConfig& amb) {
  const std::size_t N = scen.N(), P = sys.P();
  switch (method) {
    case Method::kExactMIP: return 1 + N + N * P;
    case Method::kExactS: return 2 + N + order_data(scen, sys, amb).total_below() + P;
    case Method::kLA: return 1 + N * P;
    case Method::kSFLA: return 1 + order_data(scen, sys, amb).total_below() + P;
    case Method::kWCVaR: return 1 + N * P + P;
    case Method::kBonferroni: return P;
  }
  return 0;
}

std::size_t expected_vars(Method method, const ScenarioSet& scen, const SafetySystem&) {
  const std::size_t N = scen.N();
  switch (method) {
    case Method::kExactMIP:
    case Method::kExactS: return 1 + 2 * N;
    case Method::kLA:
    case Method::kSFLA: return 1 + N;
    case Method::kWCVaR: return N + 2;
    case Method::kBonferroni: return 0;
  }
  return 0;
}

}  // namespace wdrjcc
