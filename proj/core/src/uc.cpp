#include "wdrjcc/uc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "json.hpp"
#include "wdrjcc/data_io.hpp"
#include "wdrjcc/error.hpp"
#include "wdrjcc/rng.hpp"

namespace wdrjcc {
namespace {

constexpr std::array<double, 24> kLoadShape = {
    0.62, 0.58, 0.56, 0.55, 0.57, 0.63, 0.72, 0.82, 0.90, 0.94, 0.96, 0.97,
    0.96, 0.95, 0.94, 0.95, 0.98, 1.00, 0.99, 0.95, 0.88, 0.80, 0.72, 0.66};

constexpr std::size_t kPoolSize = 1000;
constexpr std::uint64_t kPoolSeed = 2012;

struct Line {
  std::size_t from;
  std::size_t to;
  double x;
  double limit;
};

struct Preset {
  std::size_t T;
  std::size_t buses;
  std::vector<Line> lines;
  std::vector<Generator> gens;
  std::vector<WindFarm> wind;
  std::vector<LoadPoint> loads;
  double peak;
  double error_sd;  // share of farm capacity
  double rho;
};

Generator gen(std::size_t bus, double pmax, double pmin, double a, double b, double c, double su,
              double sd, double rs, bool on, double p0) {
  Generator g;
  g.bus = bus;
  g.p_max = pmax;
  g.p_min = pmin;
  g.ramp_up = g.ramp_down = 0.5 * pmax;
  g.r_up_max = g.r_down_max = 0.5 * pmax;
  g.min_up = 2;
  g.min_down = 1;
  g.a = a;
  g.b = b;
  g.c = c;
  g.c_startup = su;
  g.c_shutdown = sd;
  g.c_reserve = rs;
  g.on_initially = on;
  g.p_initial = on ? p0 : 0.0;
  return g;
}

Preset preset_data(std::string_view name) {
  if (name == "tiny") {
    return Preset{
        8,
        3,
        {{0, 1, 1.0, 55.0}, {0, 2, 1.0, 55.0}, {1, 2, 1.0, 55.0}},
        {gen(0, 90, 20, 0.010, 15, 100, 300, 50, 2, true, 50),
         gen(1, 60, 10, 0.020, 20, 80, 200, 40, 3, true, 20),
         gen(2, 40, 5, 0.040, 30, 50, 100, 20, 4, false, 0)},
        {{1, 35, 60}, {2, 35, 60}},
        {{1, 0.45}, {2, 0.55}},
        130.0,
        0.10,
        0.7};
  }
  if (name == "small") {
    return Preset{
        12,
        6,
        {{0, 1, 1.0, 90.0},
         {1, 2, 1.0, 90.0},
         {2, 3, 1.0, 90.0},
         {3, 4, 1.0, 90.0},
         {4, 5, 1.0, 90.0},
         {5, 0, 1.0, 90.0},
         {1, 4, 1.0, 90.0}},
        {gen(0, 100, 25, 0.008, 14, 120, 400, 60, 2, true, 60),
         gen(0, 60, 12, 0.015, 18, 90, 250, 40, 3, true, 30),
         gen(2, 50, 10, 0.020, 22, 70, 200, 30, 3, true, 25),
         gen(3, 40, 8, 0.030, 26, 60, 150, 25, 4, false, 0),
         gen(4, 30, 5, 0.040, 30, 50, 120, 20, 4, false, 0),
         gen(5, 20, 4, 0.050, 35, 40, 80, 15, 5, false, 0)},
        {{1, 40, 60}, {3, 40, 60}, {5, 40, 60}},
        {{1, 0.15}, {2, 0.20}, {3, 0.25}, {4, 0.20}, {5, 0.20}},
        200.0,
        0.10,
        0.7};
  }
  throw ModelError("unknown UC preset '" + std::string(name) + "'");
}

// PTDF with bus 0 as slack, by inverting the reduced susceptance matrix.
Matrix compute_ptdf(std::size_t buses, const std::vector<Line>& lines) {
  const std::size_t n = buses - 1;
  std::vector<std::vector<double>> bmat(n, std::vector<double>(2 * n, 0.0));
  for (const Line& l : lines) {
    const double y = 1.0 / l.x;
    if (l.from > 0) bmat[l.from - 1][l.from - 1] += y;
    if (l.to > 0) bmat[l.to - 1][l.to - 1] += y;
    if (l.from > 0 && l.to > 0) {
      bmat[l.from - 1][l.to - 1] -= y;
      bmat[l.to - 1][l.from - 1] -= y;
    }
  }
  for (std::size_t i = 0; i < n; ++i) bmat[i][n + i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(bmat[r][c]) > std::abs(bmat[piv][c])) piv = r;
    if (std::abs(bmat[piv][c]) < 1e-12) throw ModelError("network is not connected");
    std::swap(bmat[c], bmat[piv]);
    const double d = bmat[c][c];
    for (double& v : bmat[c]) v /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || bmat[r][c] == 0.0) continue;
      const double f = bmat[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) bmat[r][k] -= f * bmat[c][k];
    }
  }
  auto xinv = [&](std::size_t i, std::size_t j) {
    return i == 0 || j == 0 ? 0.0 : bmat[i - 1][n + j - 1];
  };
  Matrix ptdf(lines.size(), buses);
  for (std::size_t l = 0; l < lines.size(); ++l)
    for (std::size_t b = 1; b < buses; ++b)
      ptdf(l, b) = (xinv(lines[l].from, b) - xinv(lines[l].to, b)) / lines[l].x;
  return ptdf;
}

double wind_shape(std::size_t j, std::size_t hour) {
  const double phase = 3.0 + 3.0 * static_cast<double>(j);
  return 0.45 + 0.2 * std::cos(2.0 * std::numbers::pi * (static_cast<double>(hour) - phase) / 24.0);
}

double jitter(Rng& rng, double base) { return base * rng.uniform(0.8, 1.2); }

}  // namespace

double UCConfig::total_demand(std::size_t t) const {
  double s = 0.0;
  for (std::size_t k = 0; k < demand.rows(); ++k) s += demand(k, t);
  return s;
}

double UCConfig::peak_load() const {
  double peak = 0.0;
  for (std::size_t t = 0; t < T; ++t) peak = std::max(peak, total_demand(t));
  return peak;
}

double UCConfig::total_capacity() const {
  double s = 0.0;
  for (const Generator& g : gens) s += g.p_max;
  return s;
}

void UCConfig::validate() const {
  if (T == 0 || gens.empty() || wind.empty() || loads.empty() || line_limit.empty())
    throw ModelError("UC instance needs periods, generators, wind farms, loads and lines");
  for (const Generator& g : gens) {
    if (!(g.p_max > 0.0) || g.p_min < 0.0 || g.p_min > g.p_max)
      throw ModelError("generator capacity limits are invalid");
    if (!(g.ramp_up > 0.0) || !(g.ramp_down > 0.0) || g.r_up_max < 0.0 || g.r_down_max < 0.0)
      throw ModelError("generator ramp or reserve limits are invalid");
    if (g.min_up < 1 || g.min_down < 1 || static_cast<std::size_t>(g.min_up) > T ||
        static_cast<std::size_t>(g.min_down) > T)
      throw ModelError("minimum up/down times must lie in [1, T]");
    if (g.bus >= buses) throw ModelError("generator bus out of range");
  }
  for (const WindFarm& w : wind)
    if (!(w.capacity > 0.0) || w.bus >= buses) throw ModelError("wind farm data is invalid");
  for (const LoadPoint& l : loads)
    if (l.bus >= buses) throw ModelError("load bus out of range");
  for (double lim : line_limit)
    if (!(lim > 0.0)) throw ModelError("line limits must be positive");
  if (ptdf.rows() != L() || ptdf.cols() != buses)
    throw ModelError("PTDF must be lines x buses");
  if (demand.rows() != loads.size() || demand.cols() != T)
    throw ModelError("demand table must be loads x T");
  if (wind_fore.rows() != J() || wind_fore.cols() != T)
    throw ModelError("wind forecast table must be farms x T");
  if (r_up_extra.size() != T || r_down_extra.size() != T)
    throw ModelError("reserve margins need one value per period");
  if (fuel_segments < 1) throw ModelError("fuel cost needs at least one segment");
}

const std::vector<std::string>& uc_presets() {
  static const std::vector<std::string> names{"tiny", "small"};
  return names;
}

UCInstance generate_uc_instance(std::string_view preset, std::uint64_t seed, std::size_t N,
                                std::size_t holdout) {
  const Preset pre = preset_data(preset);
  if (N == 0 || N > kPoolSize) throw ModelError("UC sample count must lie in [1, 1000]");
  Rng rng(seed);

  UCConfig uc;
  uc.preset = std::string(preset);
  uc.seed = seed;
  uc.T = pre.T;
  uc.buses = pre.buses;
  uc.start_hour = static_cast<std::size_t>(rng.below(24));
  uc.gens = pre.gens;
  for (Generator& g : uc.gens) {
    g.a = jitter(rng, g.a);
    g.b = jitter(rng, g.b);
    g.c = jitter(rng, g.c);
    g.c_startup = jitter(rng, g.c_startup);
    g.c_shutdown = jitter(rng, g.c_shutdown);
    g.c_reserve = jitter(rng, g.c_reserve);
  }
  uc.wind = pre.wind;
  uc.loads = pre.loads;
  uc.ptdf = compute_ptdf(pre.buses, pre.lines);
  for (const Line& l : pre.lines) uc.line_limit.push_back(l.limit);

  uc.demand = Matrix(uc.loads.size(), uc.T);
  uc.wind_fore = Matrix(uc.J(), uc.T);
  for (std::size_t t = 0; t < uc.T; ++t) {
    const std::size_t hour = (uc.start_hour + t) % 24;
    for (std::size_t k = 0; k < uc.loads.size(); ++k)
      uc.demand(k, t) = pre.peak * uc.loads[k].share * kLoadShape[hour];
    for (std::size_t j = 0; j < uc.J(); ++j)
      uc.wind_fore(j, t) = uc.wind[j].capacity * wind_shape(j, hour);
  }
  const double extra = 0.02 * uc.peak_load();
  uc.r_up_extra.assign(uc.T, extra);
  uc.r_down_extra.assign(uc.T, extra);
  uc.validate();
  if (uc.total_capacity() < uc.peak_load()) throw ModelError("preset capacity below peak load");

  // Errors are stacked farm-major so the AR(1) chain runs along time.
  const double cap = uc.wind.front().capacity;
  SynthSpec spec;
  spec.K = uc.K();
  spec.N = kPoolSize;
  spec.holdout = holdout;
  spec.sd = pre.error_sd * cap;
  spec.rho = pre.rho;
  spec.lower = -0.5 * cap;
  spec.upper = 0.5 * cap;
  spec.seed = kPoolSeed;
  const Matrix pool = synth_matrix(spec, kPoolSize, 0);

  std::vector<std::size_t> idx(kPoolSize);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < N; ++i)
    std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.below(kPoolSize - i))]);
  Matrix samples;
  for (std::size_t i = 0; i < N; ++i) samples.append_row(pool.row(idx[i]));
  Matrix hold = holdout > 0 ? synth_matrix(spec, holdout, 1) : Matrix{};
  return UCInstance{std::move(uc), ScenarioSet(std::move(samples), std::move(hold))};
}

SafetySystem uc_safety_system(const UCConfig& uc) {
  uc.validate();
  std::vector<SafetyRow> rows;
  rows.reserve(uc.P());
  for (std::size_t t = 0; t < uc.T; ++t) {
    SafetyRow up{{}, std::vector<double>(uc.K(), 0.0), -uc.r_up_extra[t]};
    SafetyRow dn{{}, std::vector<double>(uc.K(), 0.0), -uc.r_down_extra[t]};
    for (std::size_t j = 0; j < uc.J(); ++j) {
      up.b[xi_index(uc, j, t)] = 1.0;
      dn.b[xi_index(uc, j, t)] = -1.0;
    }
    rows.push_back(std::move(up));
    rows.push_back(std::move(dn));
    for (std::size_t l = 0; l < uc.L(); ++l) {
      SafetyRow hi{{}, std::vector<double>(uc.K(), 0.0), uc.line_limit[l]};
      SafetyRow lo{{}, std::vector<double>(uc.K(), 0.0), uc.line_limit[l]};
      for (std::size_t j = 0; j < uc.J(); ++j) {
        const double s = uc.ptdf(l, uc.wind[j].bus);
        hi.b[xi_index(uc, j, t)] = -s;
        lo.b[xi_index(uc, j, t)] = s;
      }
      rows.push_back(std::move(hi));
      rows.push_back(std::move(lo));
    }
  }
  return SafetySystem(std::move(rows), uc.norm, {});
}

UCModel build_uc_model(const UCConfig& uc, const ScenarioSet& scen, const AmbiguityConfig& amb,
                       Method method, const BuildParams& params) {
  uc.validate();
  if (scen.K() != uc.K())
    throw ModelError("scenario width " + std::to_string(scen.K()) + " does not match J*T = " +
                     std::to_string(uc.K()));
  const std::size_t T = uc.T, G = uc.G(), J = uc.J();
  UCModel m;
  m.system = uc_safety_system(uc);
  Model& md = m.model;
  auto gt = [T](std::size_t g, std::size_t t) { return g * T + t; };
  auto nm = [](const char* base, std::size_t a, std::size_t b) {
    return std::string(base) + "_" + std::to_string(a) + "_" + std::to_string(b);
  };

  for (std::size_t g = 0; g < G; ++g) {
    const Generator& gen = uc.gens[g];
    for (std::size_t t = 0; t < T; ++t) {
      m.v.push_back(md.add_binary(nm("v", g, t)));
      m.p.push_back(md.add_continuous(0.0, gen.p_max, nm("p", g, t)));
      m.r_up.push_back(md.add_continuous(0.0, gen.r_up_max, nm("rup", g, t)));
      m.r_down.push_back(md.add_continuous(0.0, gen.r_down_max, nm("rdn", g, t)));
      m.c_su.push_back(md.add_continuous(0.0, kInf, nm("csu", g, t)));
      m.c_sd.push_back(md.add_continuous(0.0, kInf, nm("csd", g, t)));
    }
  }
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t t = 0; t < T; ++t)
      m.w_cur.push_back(md.add_continuous(0.0, uc.wind_fore(j, t), nm("wcur", j, t)));

  // Objective: startup, shutdown, fuel, reserve and curtailment costs.
  for (std::size_t g = 0; g < G; ++g) {
    const Generator& gen = uc.gens[g];
    const int segs = uc.fuel_segments;
    for (std::size_t t = 0; t < T; ++t) {
      const std::size_t i = gt(g, t);
      md.add_objective_term(m.c_su[i], 1.0);
      md.add_objective_term(m.c_sd[i], 1.0);
      md.add_objective_term(m.v[i], gen.c);
      md.add_objective_term(m.r_up[i], gen.c_reserve);
      md.add_objective_term(m.r_down[i], gen.c_reserve);
      PiecewiseTerm pw;
      pw.var = m.p[i];
      for (int s = 0; s <= segs; ++s) pw.breakpoints.push_back(gen.p_max * s / segs);
      for (int s = 0; s < segs; ++s) {
        const double x0 = pw.breakpoints[s], x1 = pw.breakpoints[s + 1];
        pw.slopes.push_back(gen.a * (x0 + x1) + gen.b);
      }
      md.add_piecewise_objective(std::move(pw));
    }
  }
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t t = 0; t < T; ++t) md.add_objective_term(m.w_cur[j * T + t], uc.wind[j].c_curtail);

  for (std::size_t g = 0; g < G; ++g) {
    const Generator& gen = uc.gens[g];
    const double v0 = gen.on_initially ? 1.0 : 0.0;
    const double big_m = gen.p_max;
    for (std::size_t t = 0; t < T; ++t) {
      const std::size_t i = gt(g, t);
      const bool first = t == 0;
      // c_su >= C_su (v_t - v_{t-1})
      if (first) {
        md.add_constraint({{m.c_su[i], 1.0}, {m.v[i], -gen.c_startup}}, RowSense::kGreaterEqual,
                          -gen.c_startup * v0, nm("su", g, t));
        md.add_constraint({{m.c_sd[i], 1.0}, {m.v[i], gen.c_shutdown}}, RowSense::kGreaterEqual,
                          gen.c_shutdown * v0, nm("sd", g, t));
      } else {
        md.add_constraint({{m.c_su[i], 1.0}, {m.v[i], -gen.c_startup}, {m.v[i - 1], gen.c_startup}},
                          RowSense::kGreaterEqual, 0.0, nm("su", g, t));
        md.add_constraint(
            {{m.c_sd[i], 1.0}, {m.v[i], gen.c_shutdown}, {m.v[i - 1], -gen.c_shutdown}},
            RowSense::kGreaterEqual, 0.0, nm("sd", g, t));
      }
      md.add_constraint({{m.p[i], 1.0}, {m.r_up[i], 1.0}, {m.v[i], -gen.p_max}},
                        RowSense::kLessEqual, 0.0, nm("pmax", g, t));
      md.add_constraint({{m.p[i], 1.0}, {m.r_down[i], -1.0}, {m.v[i], -gen.p_min}},
                        RowSense::kGreaterEqual, 0.0, nm("pmin", g, t));
      // p_t - p_{t-1} <= R + (2 - v_{t-1} - v_t) M, and the mirror for ramp-down.
      if (first) {
        md.add_constraint({{m.p[i], 1.0}, {m.v[i], big_m}}, RowSense::kLessEqual,
                          gen.ramp_up + (2.0 - v0) * big_m + gen.p_initial, nm("rampup", g, t));
        md.add_constraint({{m.p[i], -1.0}, {m.v[i], big_m}}, RowSense::kLessEqual,
                          gen.ramp_down + (2.0 - v0) * big_m - gen.p_initial,
                          nm("rampdn", g, t));
      } else {
        md.add_constraint(
            {{m.p[i], 1.0}, {m.p[i - 1], -1.0}, {m.v[i], big_m}, {m.v[i - 1], big_m}},
            RowSense::kLessEqual, gen.ramp_up + 2.0 * big_m, nm("rampup", g, t));
        md.add_constraint(
            {{m.p[i], -1.0}, {m.p[i - 1], 1.0}, {m.v[i], big_m}, {m.v[i - 1], big_m}},
            RowSense::kLessEqual, gen.ramp_down + 2.0 * big_m, nm("rampdn", g, t));
      }
    }

    // Minimum up time: a start at t keeps the unit on for min_up periods,
    // or until the horizon ends.
    const auto up = static_cast<std::size_t>(gen.min_up);
    const auto dn = static_cast<std::size_t>(gen.min_down);
    for (std::size_t t = 0; t < T; ++t) {
      const std::size_t last = std::min(T, t + up);
      const double span = static_cast<double>(last - t);
      std::vector<Term> terms;
      for (std::size_t tau = t; tau < last; ++tau) terms.push_back({m.v[gt(g, tau)], 1.0});
      terms.push_back({m.v[gt(g, t)], -span});
      double rhs = 0.0;
      if (t == 0)
        rhs = -span * v0;
      else
        terms.push_back({m.v[gt(g, t - 1)], span});
      md.add_constraint(std::move(terms), RowSense::kGreaterEqual, rhs, nm("minup", g, t));
    }
    for (std::size_t t = 0; t < T; ++t) {
      const std::size_t last = std::min(T, t + dn);
      const double span = static_cast<double>(last - t);
      // sum (1 - v_tau) >= span (v_{t-1} - v_t)
      std::vector<Term> terms;
      for (std::size_t tau = t; tau < last; ++tau) terms.push_back({m.v[gt(g, tau)], -1.0});
      terms.push_back({m.v[gt(g, t)], span});
      double rhs = -span;
      if (t == 0)
        rhs += span * v0;
      else
        terms.push_back({m.v[gt(g, t - 1)], -span});
      md.add_constraint(std::move(terms), RowSense::kGreaterEqual, rhs, nm("mindn", g, t));
    }
  }

  // Balance: sum p + sum (w_fore - w_cur) = demand.
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<Term> terms;
    for (std::size_t g = 0; g < G; ++g) terms.push_back({m.p[gt(g, t)], 1.0});
    double wind = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
      terms.push_back({m.w_cur[j * T + t], -1.0});
      wind += uc.wind_fore(j, t);
    }
    md.add_constraint(std::move(terms), RowSense::kEqual, uc.total_demand(t) - wind,
                      "balance_" + std::to_string(t));
  }

  std::vector<AffineExpr> rows;
  rows.reserve(uc.P());
  for (std::size_t t = 0; t < T; ++t) {
    AffineExpr up, dn;
    for (std::size_t g = 0; g < G; ++g) {
      up.terms.push_back({m.r_up[gt(g, t)], -1.0});
      dn.terms.push_back({m.r_down[gt(g, t)], -1.0});
    }
    rows.push_back(std::move(up));
    rows.push_back(std::move(dn));
    for (std::size_t l = 0; l < uc.L(); ++l) {
      AffineExpr flow;
      for (std::size_t g = 0; g < G; ++g)
        if (double s = uc.ptdf(l, uc.gens[g].bus); s != 0.0) flow.terms.push_back({m.p[gt(g, t)], s});
      for (std::size_t j = 0; j < J; ++j) {
        const double s = uc.ptdf(l, uc.wind[j].bus);
        if (s == 0.0) continue;
        flow.terms.push_back({m.w_cur[j * T + t], -s});
        flow.constant += s * uc.wind_fore(j, t);
      }
      for (std::size_t k = 0; k < uc.loads.size(); ++k)
        flow.constant -= uc.ptdf(l, uc.loads[k].bus) * uc.demand(k, t);
      AffineExpr neg = flow;
      for (Term& term : neg.terms) term.coef = -term.coef;
      neg.constant = -neg.constant;
      rows.push_back(std::move(flow));
      rows.push_back(std::move(neg));
    }
  }
  m.xexpr = XExpression(std::move(rows));

  BuildParams bp = params;
  if (uses_binaries(method) && !bp.big_m) bp.big_m = compute_bigM(m.xexpr, md, m.system, scen);
  m.block = build_block(method, md, m.xexpr, scen, m.system, amb, bp);
  return m;
}

std::vector<double> uc_activities(const UCModel& m, const std::vector<double>& values) {
  std::vector<double> ax(m.xexpr.P());
  for (std::size_t p = 0; p < ax.size(); ++p) ax[p] = m.xexpr.row(p).evaluate(values);
  return ax;
}

UCCheck check_uc_solution(const UCConfig& uc, const UCModel& m,
                          const std::vector<double>& values) {
  UCCheck c;
  const std::size_t T = uc.T;
  for (std::size_t t = 0; t < T; ++t) {
    double supply = 0.0;
    for (std::size_t g = 0; g < uc.G(); ++g) supply += values[static_cast<std::size_t>(m.p[g * T + t])];
    for (std::size_t j = 0; j < uc.J(); ++j)
      supply += uc.wind_fore(j, t) - values[static_cast<std::size_t>(m.w_cur[j * T + t])];
    c.balance_residual = std::max(c.balance_residual, std::abs(supply - uc.total_demand(t)));
  }
  for (std::size_t g = 0; g < uc.G(); ++g) {
    const Generator& gen = uc.gens[g];
    std::vector<int> on(T + 1);
    on[0] = gen.on_initially ? 1 : 0;
    for (std::size_t t = 0; t < T; ++t)
      on[t + 1] = values[static_cast<std::size_t>(m.v[g * T + t])] > 0.5 ? 1 : 0;
    for (std::size_t t = 1; t <= T; ++t) {
      if (on[t] == on[t - 1]) continue;
      const int need = on[t] ? gen.min_up : gen.min_down;
      for (std::size_t tau = t; tau < std::min(T + 1, t + static_cast<std::size_t>(need)); ++tau)
        if (on[tau] != on[t]) c.min_up_down_ok = false;
    }
  }
  c.max_violation = m.model.max_violation(values);
  return c;
}

std::string uc_config_json(const UCConfig& uc) {
  using nlohmann::json;
  json doc;
  doc["preset"] = uc.preset;
  doc["seed"] = uc.seed;
  doc["T"] = uc.T;
  doc["start_hour"] = uc.start_hour;
  doc["buses"] = uc.buses;
  doc["norm"] = std::string(to_string(uc.norm));
  doc["fuel_segments"] = uc.fuel_segments;
  doc["generators"] = json::array();
  for (const Generator& g : uc.gens)
    doc["generators"].push_back({{"bus", g.bus},
                                 {"p_max", g.p_max},
                                 {"p_min", g.p_min},
                                 {"ramp_up", g.ramp_up},
                                 {"ramp_down", g.ramp_down},
                                 {"r_up_max", g.r_up_max},
                                 {"r_down_max", g.r_down_max},
                                 {"min_up", g.min_up},
                                 {"min_down", g.min_down},
                                 {"a", g.a},
                                 {"b", g.b},
                                 {"c", g.c},
                                 {"c_startup", g.c_startup},
                                 {"c_shutdown", g.c_shutdown},
                                 {"c_reserve", g.c_reserve},
                                 {"on_initially", g.on_initially},
                                 {"p_initial", g.p_initial}});
  doc["wind"] = json::array();
  for (const WindFarm& w : uc.wind)
    doc["wind"].push_back({{"bus", w.bus}, {"capacity", w.capacity}, {"c_curtail", w.c_curtail}});
  doc["loads"] = json::array();
  for (const LoadPoint& l : uc.loads) doc["loads"].push_back({{"bus", l.bus}, {"share", l.share}});
  auto rows = [](const Matrix& mat) {
    json out = json::array();
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      auto r = mat.row(i);
      out.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return out;
  };
  doc["ptdf"] = rows(uc.ptdf);
  doc["line_limit"] = uc.line_limit;
  doc["demand"] = rows(uc.demand);
  doc["wind_forecast"] = rows(uc.wind_fore);
  doc["r_up_extra"] = uc.r_up_extra;
  doc["r_down_extra"] = uc.r_down_extra;
  return doc.dump(2) + "\n";
}

}  // namespace wdrjcc
