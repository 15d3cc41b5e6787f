#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>
#include <tuple>

#include "wdrjcc/error.hpp"
#include "wdrjcc/oracle.hpp"
#include "wdrjcc/uc.hpp"

namespace wdrjcc {
namespace {

struct Job {
  std::size_t instance;
  std::size_t amb;
  Method method;
  bool reported;
};

struct Outcome {
  std::string status;
  std::optional<double> objective;
  double time_s = 0.0;
  std::optional<std::vector<IncumbentEvent>> incumbents;
  std::optional<double> reliability;
  std::size_t jcc_rows = 0;
  std::size_t expected = 0;
  std::string message;
};

Outcome run_one(const UCInstance& inst, const AmbiguityConfig& amb, Method method,
                const BenchOptions& opts) {
  Outcome out;
  try {
    UCModel m = build_uc_model(inst.config, inst.scenarios, amb, method, opts.params);
    out.jcc_rows = m.block.num_rows();
    out.expected = expected_rows(method, inst.scenarios, m.system, amb);
    SolveResult res = solve(m.model, opts.solve, opts.backend);
    out.status = std::string(to_string(res.status));
    out.time_s = res.status == SolveStatus::kOptimal ? res.wall_time_s : opts.solve.time_limit_s;
    out.incumbents = res.incumbents;
    out.message = res.message;
    if (has_solution(res.status)) {
      out.objective = res.objective;
      if (!inst.scenarios.holdout().empty())
        out.reliability = reliability_at(uc_activities(m, res.values), inst.scenarios.holdout(),
                                         m.system);
    }
  } catch (const UnboundedVaRError& e) {
    out.status = "unbounded-var";
    out.message = e.what();
  } catch (const std::exception& e) {
    out.status = "error";
    out.message = e.what();
  }
  return out;
}

std::optional<double> first_incumbent(const Outcome& o) {
  if (!o.incumbents) return std::nullopt;
  if (o.incumbents->empty()) return o.objective ? std::optional<double>(o.time_s) : std::nullopt;
  return o.incumbents->front().time_s;
}

std::optional<double> first_within(const Outcome& o, double target, double gap) {
  if (!o.incumbents) return std::nullopt;
  const double threshold = target + gap * std::abs(target);
  for (const IncumbentEvent& ev : *o.incumbents)
    if (ev.objective <= threshold) return ev.time_s;
  // Solved without an intermediate incumbent report.
  if (o.objective && *o.objective <= threshold) return o.time_s;
  return std::nullopt;
}

std::string num(const std::optional<double>& v) {
  if (!v) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", *v);
  return buf;
}

}  // namespace

std::vector<UCBuildReport> run_benchmark(const BenchOptions& opts) {
  opts.solve.validate();
  std::vector<UCInstance> instances;
  std::vector<std::pair<std::string, std::uint64_t>> keys;
  std::vector<std::string> instance_errors;
  for (const std::string& preset : opts.presets)
    for (std::uint64_t seed : opts.seeds) {
      keys.emplace_back(preset, seed);
      try {
        instances.push_back(generate_uc_instance(preset, seed, opts.N, opts.holdout));
        instance_errors.emplace_back();
      } catch (const std::exception& e) {
        instances.emplace_back();
        instance_errors.emplace_back(e.what());
      }
    }

  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (std::size_t a = 0; a < opts.amb_grid.size(); ++a) {
      bool has_sfla = false;
      for (Method m : opts.methods) {
        jobs.push_back({i, a, m, true});
        has_sfla = has_sfla || m == Method::kSFLA;
      }
      if (!has_sfla) jobs.push_back({i, a, Method::kSFLA, false});
    }

  std::vector<Outcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      if (!instance_errors[job.instance].empty()) {
        outcomes[j].status = "error";
        outcomes[j].message = instance_errors[job.instance];
        continue;
      }
      outcomes[j] = run_one(instances[job.instance], opts.amb_grid[job.amb], job.method, opts);
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(opts.jobs, jobs.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> sfla_of;
  for (std::size_t j = 0; j < jobs.size(); ++j)
    if (jobs[j].method == Method::kSFLA) sfla_of.emplace(std::pair{jobs[j].instance, jobs[j].amb}, j);

  std::vector<UCBuildReport> reports;
  const double gap = opts.solve.mip_gap;
  const double limit = opts.solve.time_limit_s;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Job& job = jobs[j];
    if (!job.reported) continue;
    const Outcome& o = outcomes[j];
    const Outcome& ref = outcomes[sfla_of.at({job.instance, job.amb})];
    UCBuildReport r;
    r.run_id = reports.size();
    std::tie(r.preset, r.seed) = keys[job.instance];
    r.method = job.method;
    r.epsilon = opts.amb_grid[job.amb].epsilon;
    r.theta = opts.amb_grid[job.amb].theta;
    r.N = opts.N;
    r.status = o.status;
    r.objective = o.objective;
    r.time_s = o.time_s;
    r.reliability = o.reliability;
    r.jcc_rows = o.jcc_rows;
    r.expected_jcc_rows = o.expected;
    r.message = o.message;
    if (o.incumbents) {
      if (ref.objective)
        r.timef_s = first_within(o, *ref.objective, gap);
      else
        r.timef_s = job.method == Method::kSFLA ? limit : first_incumbent(o).value_or(limit);
      if (!r.timef_s) r.timef_s = limit;
    }
    if (o.objective && ref.objective && *ref.objective != 0.0)
      r.obj_diff_vs_sfla = (*ref.objective - *o.objective) / std::abs(*ref.objective) * 100.0;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::string bench_csv(const std::vector<UCBuildReport>& reports) {
  std::string out =
      "run_id,preset,seed,method,epsilon,theta,N,status,objective,time_s,timef_s,reliability,"
      "obj_diff_vs_sfla\n";
  for (const UCBuildReport& r : reports) {
    out += std::to_string(r.run_id) + ',' + r.preset + ',' + std::to_string(r.seed) + ',' +
           std::string(to_string(r.method)) + ',' + num(r.epsilon) + ',' + num(r.theta) + ',' +
           std::to_string(r.N) + ',' + r.status + ',' + num(r.objective) + ',' + num(r.time_s) +
           ',' + num(r.timef_s) + ',' + num(r.reliability) + ',' + num(r.obj_diff_vs_sfla) + '\n';
  }
  return out;
}

}  // namespace wdrjcc
