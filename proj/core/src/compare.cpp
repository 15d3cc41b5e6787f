#include "wdrjcc/compare.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "wdrjcc/error.hpp"

namespace wdrjcc {

XSampler uniform_box_sampler(const SafetySystem& sys) {
  if (!sys.bounded()) throw ModelError("uniform sampling needs a bounded x box");
  std::vector<Bounds> box = sys.x_bounds();
  return [box](Rng& rng) {
    std::vector<double> x(box.size());
    for (std::size_t j = 0; j < box.size(); ++j) x[j] = rng.uniform(box[j].first, box[j].second);
    return x;
  };
}

namespace {

std::vector<double> lerp(const std::vector<double>& a, const std::vector<double>& b, double t) {
  std::vector<double> x(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) x[j] = a[j] + t * (b[j] - a[j]);
  return x;
}

// A point a small step to either side of the LA boundary on a random chord.
std::vector<double> near_la_boundary(const MembershipOracle& oracle, const XSampler& sampler,
                                     Rng& rng) {
  std::vector<double> a = sampler(rng);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<double> b = sampler(rng);
    const bool in_a = oracle.margin(a, Method::kLA) >= 0.0;
    const bool in_b = oracle.margin(b, Method::kLA) >= 0.0;
    if (in_a == in_b) {
      a = std::move(b);
      continue;
    }
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((oracle.margin(lerp(a, b, mid), Method::kLA) >= 0.0) == in_a)
        lo = mid;
      else
        hi = mid;
    }
    const double step = (rng.uniform() < 0.5 ? -1.0 : 1.0) * 1e-3;
    return lerp(a, b, std::clamp(0.5 * (lo + hi) + step, 0.0, 1.0));
  }
  return a;
}

bool all_ones(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double k) { return k == 1.0; });
}

bool matches_wstar(const std::vector<double>& w, const SafetySystem& sys) {
  const std::vector<double> ws = wstar_weights(sys);
  for (std::size_t p = 0; p < ws.size(); ++p)
    if (std::abs(w[p] - ws[p]) > 1e-12) return false;
  return true;
}

}  // namespace

RegionComparison compare_regions(const ScenarioSet& scen, const SafetySystem& sys,
                                 const AmbiguityConfig& amb, const CompareOptions& opts,
                                 const XSampler& sampler_in) {
  const MembershipOracle oracle(scen, sys, amb, opts.params);
  const XSampler sampler = sampler_in ? sampler_in : uniform_box_sampler(sys);
  const double tol = opts.params.tol;

  RegionComparison rep;
  rep.instance = opts.instance;
  rep.samples = opts.n_samples;
  rep.unit_kappa = all_ones(oracle.kappa());
  rep.wstar_weights = matches_wstar(oracle.w(), sys);
  for (const char* name : {"Exact", "LA", "SFLA", "WCVaR", "Bonferroni"}) rep.accepted[name] = 0;
  if (opts.with_mip) rep.accepted["ExactMIP"] = rep.accepted["ExactS"] = 0;

  bool have_bonf = true;
  try {
    (void)oracle.eta();
  } catch (const UnboundedVaRError&) {
    have_bonf = false;
  }

  Rng rng(opts.seed);
  const auto n_boundary = static_cast<std::size_t>(
      std::llround(opts.boundary_fraction * static_cast<double>(opts.n_samples)));
  for (std::size_t s = 0; s < opts.n_samples; ++s) {
    const std::vector<double> x = s + n_boundary < opts.n_samples
                                      ? sampler(rng)
                                      : near_la_boundary(oracle, sampler, rng);
    const double m_exact = oracle.margin(x, Method::kExactMIP);
    const double m_la = oracle.margin(x, Method::kLA);
    const double m_sfla = oracle.margin(x, Method::kSFLA);
    const double m_wc = oracle.margin(x, Method::kWCVaR);
    const double m_bf = have_bonf ? oracle.margin(x, Method::kBonferroni) : -1.0;
    bool border = std::abs(m_exact) < tol || std::abs(m_la) < tol || std::abs(m_sfla) < tol ||
                  std::abs(m_wc) < tol || (have_bonf && std::abs(m_bf) < tol);
    if (border) {
      ++rep.borderline;
      continue;
    }

    const bool exact = m_exact >= 0.0;
    const bool la = oracle.member(x, Method::kLA);
    const bool sfla = oracle.member(x, Method::kSFLA);
    const bool wc = oracle.member(x, Method::kWCVaR);
    const bool bf = have_bonf && m_bf >= 0.0;
    rep.accepted["Exact"] += exact;
    rep.accepted["LA"] += la;
    rep.accepted["SFLA"] += sfla;
    rep.accepted["WCVaR"] += wc;
    rep.accepted["Bonferroni"] += bf;

    auto fail = [&](const std::string& rel, double l, double r) {
      rep.counterexamples.push_back({rel, x, l, r});
    };
    if (la != (m_la >= 0.0)) fail("LA lp != closed form", m_la, m_la);
    if (sfla != (m_sfla >= 0.0)) fail("SFLA lp != closed form", m_sfla, m_sfla);
    if (wc != (m_wc >= 0.0)) fail("WCVaR lp != closed form", m_wc, m_wc);
    if (la && !sfla) fail("LA => SFLA", m_la, m_sfla);
    if (sfla && !exact) fail("SFLA => Exact", m_sfla, m_exact);
    if (la && !exact) fail("LA => Exact", m_la, m_exact);
    if (wc && !exact) fail("WCVaR => Exact", m_wc, m_exact);
    if (bf && !exact) fail("Bonferroni => Exact", m_bf, m_exact);
    if (rep.unit_kappa && sfla && !la) fail("SFLA => LA (unit kappa)", m_sfla, m_la);
    if (rep.unit_kappa && rep.wstar_weights && sfla != wc)
      fail("SFLA <=> WCVaR (w*)", m_sfla, m_wc);
    if (opts.with_mip) {
      const bool em = oracle.member(x, Method::kExactMIP);
      const bool es = oracle.member(x, Method::kExactS);
      rep.accepted["ExactMIP"] += em;
      rep.accepted["ExactS"] += es;
      if (em != exact) fail("ExactMIP <=> Exact", m_exact, m_exact);
      if (es != exact) fail("ExactS <=> Exact", m_exact, m_exact);
    }
    if (sfla && !la) rep.witnesses.push_back(x);
  }
  return rep;
}

std::string RegionComparison::to_json() const {
  nlohmann::json doc;
  doc["instance"] = instance;
  doc["samples"] = samples;
  doc["borderline_excluded"] = borderline;
  doc["unit_kappa"] = unit_kappa;
  doc["wstar_weights"] = wstar_weights;
  doc["accepted"] = accepted;
  doc["verdict"] = consistent() ? "PASS" : "FAIL";
  doc["counterexamples"] = nlohmann::json::array();
  for (const Counterexample& c : counterexamples)
    doc["counterexamples"].push_back(
        {{"relation", c.relation}, {"x", c.x}, {"lhs_margin", c.lhs_margin},
         {"rhs_margin", c.rhs_margin}});
  doc["witnesses"] = witnesses;
  return doc.dump(2) + "\n";
}

}  // namespace wdrjcc
