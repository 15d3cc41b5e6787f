#include <cstdlib>
#include <string>

#include "json.hpp"
#include "wdrjcc/cli.hpp"
#include "wdrjcc/data_io.hpp"
#include "wdrjcc/error.hpp"

namespace wdrjcc {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ParseError("config key '" + key + "': " + what);
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) bad(key, "expected a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) bad(key, "expected a number or an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

std::string text(const json& j, const std::string& key) {
  if (!j.is_string()) bad(key, "expected a string");
  return j.get<std::string>();
}

double bound(const json& j, const std::string& key, double inf) {
  if (j.is_null()) return inf;
  return number(j, key);
}

ProblemSpec parse_problem(const json& p) {
  if (!p.is_object()) bad("problem", "expected an object");
  ProblemSpec spec;
  if (p.contains("norm")) spec.norm = parse_norm(text(p["norm"], "problem.norm"));
  if (!p.contains("rows") || !p["rows"].is_array() || p["rows"].empty())
    bad("problem.rows", "expected a non-empty array");
  for (std::size_t i = 0; i < p["rows"].size(); ++i) {
    const json& r = p["rows"][i];
    const std::string key = "problem.rows[" + std::to_string(i) + "]";
    if (!r.is_object() || !r.contains("a") || !r.contains("b"))
      bad(key, "expected an object with \"a\", \"b\" and \"d\"");
    SafetyRow row;
    row.a = numbers(r["a"], key + ".a");
    row.b = numbers(r["b"], key + ".b");
    row.d = r.contains("d") ? number(r["d"], key + ".d") : 0.0;
    spec.rows.push_back(std::move(row));
  }
  const std::size_t L = spec.rows.front().a.size();
  if (p.contains("x_bounds")) {
    const json& xb = p["x_bounds"];
    if (!xb.is_array()) bad("problem.x_bounds", "expected an array of [lower, upper] pairs");
    for (std::size_t j = 0; j < xb.size(); ++j) {
      const std::string key = "problem.x_bounds[" + std::to_string(j) + "]";
      if (!xb[j].is_array() || xb[j].size() != 2) bad(key, "expected [lower, upper]");
      spec.x_bounds.emplace_back(bound(xb[j][0], key, -kInf), bound(xb[j][1], key, kInf));
    }
  } else {
    spec.x_bounds.assign(L, {-kInf, kInf});
  }
  if (spec.x_bounds.size() != L)
    bad("problem.x_bounds", "expected " + std::to_string(L) + " entries");
  spec.objective = p.contains("objective") ? numbers(p["objective"], "problem.objective")
                                           : std::vector<double>(L, 0.0);
  if (spec.objective.size() != L)
    bad("problem.objective", "expected " + std::to_string(L) + " coefficients");
  if (p.contains("sense")) {
    const std::string s = text(p["sense"], "problem.sense");
    if (s == "minimize" || s == "min")
      spec.sense = ObjSense::kMinimize;
    else if (s == "maximize" || s == "max")
      spec.sense = ObjSense::kMaximize;
    else
      bad("problem.sense", "expected \"minimize\" or \"maximize\"");
  }
  return spec;
}

std::filesystem::path resolve_path(const std::string& p, const std::filesystem::path& base) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

}  // namespace

WPolicy parse_w_policy(std::string_view t) {
  if (t == "uniform") return WPolicy::kUniform;
  if (t == "wstar" || t == "analytic-wstar") return WPolicy::kWStar;
  if (t == "explicit") return WPolicy::kExplicit;
  throw ParseError("unknown w policy '" + std::string(t) + "'");
}

RunConfig parse_run_config(std::string_view src, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(src);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config: top level must be an object");

  RunConfig cfg;
  try {
    if (doc.contains("problem")) {
      if (doc["problem"].is_string()) {
        const auto path = resolve_path(doc["problem"].get<std::string>(), base_dir);
        json inner;
        try {
          inner = json::parse(read_file(path));
        } catch (const json::parse_error& e) {
          throw ParseError(path.string() + ": " + e.what());
        }
        cfg.problem = parse_problem(inner);
      } else {
        cfg.problem = parse_problem(doc["problem"]);
      }
    }
    if (doc.contains("scenarios"))
      cfg.scenarios = resolve_path(text(doc["scenarios"], "scenarios"), base_dir);
    if (doc.contains("method")) cfg.method = parse_method(text(doc["method"], "method"));
    if (doc.contains("epsilon")) cfg.amb.epsilon = number(doc["epsilon"], "epsilon");
    if (doc.contains("theta")) cfg.amb.theta = number(doc["theta"], "theta");
    if (doc.contains("norm")) cfg.problem.norm = parse_norm(text(doc["norm"], "norm"));
    if (doc.contains("kappa")) cfg.kappa = numbers(doc["kappa"], "kappa");
    if (doc.contains("w_policy")) cfg.w_policy = parse_w_policy(text(doc["w_policy"], "w_policy"));
    if (doc.contains("w")) {
      cfg.w = numbers(doc["w"], "w");
      if (!doc.contains("w_policy")) cfg.w_policy = WPolicy::kExplicit;
    }
    if (doc.contains("eps_alloc")) cfg.eps_alloc = numbers(doc["eps_alloc"], "eps_alloc");
    if (doc.contains("solver")) {
      const json& s = doc["solver"];
      if (!s.is_object()) bad("solver", "expected an object");
      if (s.contains("backend")) cfg.backend = text(s["backend"], "solver.backend");
      if (s.contains("time_limit")) cfg.solve.time_limit_s = number(s["time_limit"], "solver.time_limit");
      if (s.contains("mip_gap")) cfg.solve.mip_gap = number(s["mip_gap"], "solver.mip_gap");
      if (s.contains("threads"))
        cfg.solve.threads = static_cast<int>(number(s["threads"], "solver.threads"));
      if (s.contains("seed")) cfg.solve.seed = static_cast<int>(number(s["seed"], "solver.seed"));
    }
    if (doc.contains("out")) cfg.out = resolve_path(text(doc["out"], "out"), base_dir);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  cfg.amb.validate();
  cfg.solve.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const std::string src = read_file(path);
  try {
    return parse_run_config(src, path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void apply_env_overrides(RunConfig& cfg) {
  if (const char* b = std::getenv("WDRJCC_BACKEND"); b && *b) cfg.backend = b;
  if (const char* t = std::getenv("WDRJCC_TIME_LIMIT"); t && *t) {
    char* end = nullptr;
    const double v = std::strtod(t, &end);
    if (end == t || *end != '\0' || !(v > 0.0))
      throw ParseError("WDRJCC_TIME_LIMIT must be a positive number");
    cfg.solve.time_limit_s = v;
  }
}

void apply_overrides(RunConfig& cfg, const CliOverrides& o) {
  if (o.method) cfg.method = parse_method(*o.method);
  if (o.epsilon) cfg.amb.epsilon = *o.epsilon;
  if (o.theta) cfg.amb.theta = *o.theta;
  if (o.norm) cfg.problem.norm = parse_norm(*o.norm);
  if (o.kappa) cfg.kappa = {*o.kappa};
  if (o.w_policy) cfg.w_policy = parse_w_policy(*o.w_policy);
  if (o.backend) cfg.backend = *o.backend;
  if (o.seed) cfg.solve.seed = static_cast<int>(*o.seed);
  if (o.time_limit) cfg.solve.time_limit_s = *o.time_limit;
  if (o.out) cfg.out = *o.out;
  cfg.amb.validate();
  cfg.solve.validate();
}

ResolvedRun resolve(const RunConfig& cfg) {
  if (cfg.problem.rows.empty()) throw ModelError("config has no problem rows");
  if (cfg.scenarios.empty()) throw ModelError("config has no scenarios path");
  ScenarioSet scen = load_scenarios(cfg.scenarios);
  SafetySystem sys(cfg.problem.rows, cfg.problem.norm, cfg.problem.x_bounds);
  check_compatible(scen, sys);
  BuildParams params;
  if (cfg.kappa.size() == 1)
    params.kappa.assign(scen.N(), cfg.kappa.front());
  else
    params.kappa = cfg.kappa;
  switch (cfg.w_policy) {
    case WPolicy::kUniform: break;
    case WPolicy::kWStar: params.w = wstar_weights(sys); break;
    case WPolicy::kExplicit:
      if (cfg.w.empty()) throw ModelError("w policy 'explicit' needs a \"w\" array");
      params.w = cfg.w;
      break;
  }
  params.eps_alloc = cfg.eps_alloc;
  return ResolvedRun{std::move(scen), std::move(sys), std::move(params)};
}

}  // namespace wdrjcc
