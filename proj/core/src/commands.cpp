#include <charconv>
#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"
#include "wdrjcc/cli.hpp"
#include "wdrjcc/compare.hpp"
#include "wdrjcc/data_io.hpp"
#include "wdrjcc/error.hpp"
#include "wdrjcc/oracle.hpp"
#include "wdrjcc/uc.hpp"

namespace wdrjcc {
namespace {

using nlohmann::json;

void emit(const std::filesystem::path& path, const std::string& content, std::ostream& out) {
  if (path.empty())
    out << content;
  else
    write_file(path, content);
}

MembershipParams membership_params(const RunConfig& cfg, const ResolvedRun& run) {
  MembershipParams mp;
  mp.kappa = run.params.kappa;
  mp.w = run.params.w;
  mp.eps_alloc = run.params.eps_alloc;
  mp.backend = cfg.backend;
  return mp;
}

std::string flag(const std::optional<bool>& b) {
  if (!b) return "";
  return *b ? "true" : "false";
}

// Shortest text that round-trips.
std::string g17(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const ResolvedRun run = resolve(cfg);
    const ProblemSpec& pb = cfg.problem;
    Model model(pb.sense);
    std::vector<VarId> x;
    for (std::size_t j = 0; j < pb.x_bounds.size(); ++j) {
      x.push_back(model.add_continuous(pb.x_bounds[j].first, pb.x_bounds[j].second,
                                       "x" + std::to_string(j)));
      model.add_objective_term(x.back(), pb.objective[j]);
    }
    const XExpression xexpr = XExpression::from_system(run.sys, x);
    ReformulationBlock block;
    try {
      block = build_block(cfg.method, model, xexpr, run.scen, run.sys, cfg.amb, run.params);
    } catch (const UnboundedVaRError& e) {
      json doc{{"method", to_string(cfg.method)}, {"status", "infeasible"}, {"message", e.what()}};
      emit(cfg.out, doc.dump(2) + "\n", out);
      err << "infeasible: " << e.what() << "\n";
      return kExitInfeasible;
    }
    const SolveResult res = solve(model, cfg.solve, cfg.backend);

    json doc;
    doc["method"] = to_string(cfg.method);
    doc["status"] = to_string(res.status);
    doc["wall_time_s"] = res.wall_time_s;
    doc["block_rows"] = block.num_rows();
    doc["expected_rows"] = expected_rows(cfg.method, run.scen, run.sys, cfg.amb);
    if (!res.message.empty()) doc["message"] = res.message;
    if (has_solution(res.status)) {
      std::vector<double> xv;
      for (VarId v : x) xv.push_back(res.values[static_cast<std::size_t>(v)]);
      doc["objective"] = *res.objective;
      doc["x"] = xv;
      doc["gap"] = res.gap;
      const OracleResult ex = exact_feasible(xv, run.scen, run.sys, cfg.amb);
      doc["oracle"] = {{"feasible", ex.margin >= -1e-6}, {"margin", ex.margin}, {"s_star", ex.s_star}};
    }
    emit(cfg.out, doc.dump(2) + "\n", out);
    if (!cfg.out.empty()) {
      out << to_string(cfg.method) << ": " << to_string(res.status);
      if (res.objective) out << " objective " << g17(*res.objective);
      out << "\n";
    }
    if (has_solution(res.status)) return kExitOk;
    if (res.status == SolveStatus::kInfeasible) return kExitInfeasible;
    err << "solve ended with status " << to_string(res.status) << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_oracle(const RunConfig& cfg, const std::filesystem::path& x_file, std::ostream& out,
               std::ostream& err) {
  try {
    const ResolvedRun run = resolve(cfg);
    const std::vector<std::vector<double>> points = load_points(x_file);
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].size() != run.sys.L())
        throw ModelError("x row " + std::to_string(i + 1) + " has " +
                         std::to_string(points[i].size()) + " entries, expected " +
                         std::to_string(run.sys.L()));
    const MembershipOracle oracle(run.scen, run.sys, cfg.amb, membership_params(cfg, run));
    std::ostringstream csv;
    for (std::size_t j = 0; j < run.sys.L(); ++j) csv << "x" << j << ",";
    csv << "oracle,exact_mip,exacts,la,sfla,wcvar,bonferroni,s_star\n";
    for (const std::vector<double>& x : points) {
      const MembershipReport r = membership_report(oracle, x, true);
      for (double v : x) csv << g17(v) << ",";
      csv << (r.oracle ? "true" : "false") << "," << flag(r.exact_mip) << "," << flag(r.exacts)
          << "," << (r.la ? "true" : "false") << "," << (r.sfla ? "true" : "false") << ","
          << (r.wcvar ? "true" : "false") << "," << flag(r.bonferroni) << "," << g17(r.s_star)
          << "\n";
    }
    emit(cfg.out, csv.str(), out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_compare(const RunConfig& cfg, const CompareArgs& args, std::ostream& out,
                std::ostream& err) {
  try {
    const ResolvedRun run = resolve(cfg);
    CompareOptions opts;
    opts.n_samples = args.samples;
    opts.seed = args.seed;
    opts.with_mip = args.with_mip;
    opts.params = membership_params(cfg, run);
    opts.params.theta_scale = args.theta_scale;
    opts.instance = cfg.scenarios.stem().string();
    const RegionComparison rep = compare_regions(run.scen, run.sys, cfg.amb, opts);

    if (!cfg.out.empty()) write_file(cfg.out, rep.to_json());
    std::ostringstream table;
    table << "instance " << rep.instance << ": " << rep.samples << " samples, " << rep.borderline
          << " borderline\n";
    for (const auto& [name, count] : rep.accepted)
      table << "  " << std::left << std::setw(11) << name << count << "\n";
    table << "  witnesses  " << rep.witnesses.size() << "\n";
    std::map<std::string, std::size_t> violated;
    for (const Counterexample& c : rep.counterexamples) ++violated[c.relation];
    for (const auto& [relation, count] : violated)
      table << "  violated   " << relation << " (" << count << ")\n";
    table << "verdict " << (rep.consistent() ? "PASS" : "FAIL") << "\n";
    if (cfg.out.empty())
      out << rep.to_json();
    else
      out << table.str();
    if (!rep.consistent()) {
      err << rep.counterexamples.size() << " inclusion counterexample(s)\n";
      return kExitCounterexample;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  try {
    BenchOptions opts;
    opts.presets = args.presets;
    opts.seeds = args.seeds;
    opts.methods.clear();
    for (const std::string& m : args.methods) opts.methods.push_back(parse_method(m));
    AmbiguityConfig amb{args.epsilon, args.theta};
    amb.validate();
    opts.amb_grid = {amb};
    opts.N = args.N;
    opts.holdout = args.holdout;
    opts.backend = args.backend;
    opts.solve.time_limit_s = args.time_limit;
    opts.solve.mip_gap = args.mip_gap;
    opts.solve.threads = 1;
    opts.jobs = args.jobs;
    for (const std::string& p : args.presets) (void)generate_uc_instance(p, 0, 1, 0);
    (void)make_backend(args.backend);
    const std::vector<UCBuildReport> reports = run_benchmark(opts);
    const std::string csv = bench_csv(reports);
    emit(args.out, csv, out);
    for (const UCBuildReport& r : reports)
      if (r.status == "error") err << "run " << r.run_id << ": " << r.message << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.kind == "synth") {
      SynthSpec spec;
      spec.K = args.K;
      spec.N = args.N;
      spec.holdout = args.holdout;
      if (args.marginal == "normal")
        spec.marginal = Marginal::kNormal;
      else if (args.marginal == "uniform")
        spec.marginal = Marginal::kUniform;
      else
        throw ParseError("unknown marginal '" + args.marginal + "'");
      spec.mean = args.mean;
      spec.sd = args.sd;
      spec.a = args.a;
      spec.b = args.b;
      spec.rho = args.rho;
      if (args.lower) spec.lower = *args.lower;
      if (args.upper) spec.upper = *args.upper;
      spec.seed = args.seed;
      const ScenarioSet s = synth_scenarios(spec);
      if (args.out.empty()) {
        out << format_scenarios_csv(s.samples());
      } else {
        const std::filesystem::path path(args.out);
        save_scenarios(path, s.samples(), format_for(path));
        if (!s.holdout().empty()) {
          std::filesystem::path hold = path;
          hold.replace_filename(path.stem().string() + "_holdout" + path.extension().string());
          save_scenarios(hold, s.holdout(), format_for(path));
        }
      }
      return kExitOk;
    }
    if (args.kind == "uc") {
      if (args.out.empty()) throw ParseError("uc generation needs --out <directory>");
      const UCInstance inst = generate_uc_instance(args.preset, args.seed, args.N, args.holdout);
      const std::filesystem::path dir(args.out);
      write_file(dir / "instance.json", uc_config_json(inst.config));
      save_scenarios(dir / "scenarios.csv", inst.scenarios.samples(), ScenarioFormat::kCsv);
      if (!inst.scenarios.holdout().empty())
        save_scenarios(dir / "holdout.csv", inst.scenarios.holdout(), ScenarioFormat::kCsv);
      out << "wrote " << (dir / "instance.json").string() << " and "
          << (dir / "scenarios.csv").string() << "\n";
      return kExitOk;
    }
    throw ParseError("unknown generator '" + args.kind + "' (expected synth or uc)");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace wdrjcc
