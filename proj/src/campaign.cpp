#include "paint/campaign.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include "paint/errors.hpp"
#include "paint/rng.hpp"
#include "paint/svg.hpp"
#include "paint/trace_io.hpp"

namespace paint {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path.string() + ": cannot write");
  out << text;
}

}  // namespace

RunOutcome simulate_and_verify(const Scenario& scenario, std::uint64_t seed, bool keep_trace) {
  RunOutcome out;
  out.scenario = scenario.name;
  out.seed = seed;
  out.robots = scenario.config.robot_count();
  SimConfig cfg = scenario.config;
  cfg.schedule.seed = seed;
  try {
    Trace trace = run(cfg);
    out.report = verify_trace(trace);
    out.trace_hash = trace_hash(trace);
    out.ok = out.report.all_pass();
    if (keep_trace) out.trace = std::move(trace);
  } catch (const LivenessFailure& e) {
    out.liveness_failure = true;
    out.error = e.what();
    out.report = verify_trace(e.trace());
    if (keep_trace) out.trace = e.trace();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

std::vector<RunOutcome> run_batch(const std::vector<BatchJob>& jobs, unsigned threads) {
  std::vector<RunOutcome> results(jobs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
          results[i] = simulate_and_verify(jobs[i].scenario, jobs[i].seed);
        }
      });
    }
  }
  return results;
}

double nominal_t2(const SimConfig& c) {
  return c.world.length() * c.world.breadth() / (c.robot_count() * c.schedule.velocity);
}

double brush_t2(const SimConfig& c) { return nominal_t2(c) / (2.0 * c.params.eta); }

std::string summary_csv_header() {
  return "scenario,seed,n,t1_sim,t2_sim,path_length,completion,t2_nominal,t2_brush,all_pass,trace_hash";
}

std::string summary_csv_row(const RunOutcome& o, const SimConfig& config) {
  const TraceSummary& s = o.report.summary;
  std::string row = o.scenario + "," + std::to_string(o.seed) + "," + std::to_string(o.robots) + ",";
  row += format_float(s.t1) + "," + format_float(s.t2) + "," + format_float(s.path_length) + ",";
  row += format_float(s.completion) + "," + format_float(nominal_t2(config)) + "," + format_float(brush_t2(config));
  row += std::string(",") + (o.ok ? "true" : "false") + "," + hex64(o.trace_hash);
  return row;
}

Scenario random_scenario(int robots, std::uint64_t seed, const ProtocolParams& params) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Scenario sc;
  sc.name = "random_n" + std::to_string(robots) + "_s" + std::to_string(seed);
  sc.config.world = paper_world();
  sc.config.params = params;
  sc.config.schedule.seed = seed;
  const WorldRect& w = sc.config.world;
  constexpr double kMargin = 0.5;
  constexpr double kSeparation = 1.0;
  while (static_cast<int>(sc.config.robots.size()) < robots) {
    const Vec2 p(rng.uniform(w.x_min + kMargin, w.x_max - kMargin), rng.uniform(w.y_min + kMargin, w.y_max - kMargin));
    bool clear = true;
    for (const RobotInit& r : sc.config.robots) clear = clear && (r.position - p).norm() >= kSeparation;
    if (!clear) continue;
    RobotInit init;
    init.position = p;
    init.orientation = rng.bernoulli(0.5) ? Orientation::Positive : Orientation::Negative;
    init.scale = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    sc.config.robots.push_back(init);
  }
  sc.config.validate();
  return sc;
}

void apply_param_overrides(Scenario& scenario, std::optional<double> eta, std::optional<double> eps) {
  if (eta) {
    scenario.config.params.eta = *eta;
    scenario.config.params.eps = *eta / 4.0;
  }
  if (eps) scenario.config.params.eps = *eps;
  scenario.config.validate();
}

int run_command(const Scenario& scenario, std::uint64_t seed, const std::filesystem::path& out, bool svg,
                std::ostream& log) {
  std::filesystem::create_directories(out);
  RunOutcome o = simulate_and_verify(scenario, seed, /*keep_trace=*/true);
  if (!o.trace) {
    log << "error: " << o.error << "\n";
    return 1;
  }
  const Trace& trace = *o.trace;
  write_trace(trace, out / "trace.jsonl", scenario.name);

  nlohmann::ordered_json report;
  report["scenario"] = scenario.name;
  report["seed"] = seed;
  report["robots"] = o.robots;
  report["trace_hash"] = hex64(o.trace_hash);
  report["t2_nominal"] = nominal_t2(trace.config);
  report["t2_brush_estimate"] = brush_t2(trace.config);
  if (!o.error.empty()) report["error"] = o.error;
  report["verification"] = o.report.to_json();
  write_file(out / "report.json", report.dump(2) + "\n");
  write_file(out / "summary.csv", summary_csv_header() + "\n" + summary_csv_row(o, trace.config) + "\n");
  if (svg) {
    write_file(out / "trajectories.svg", render_trajectories(trace));
    write_file(out / "coverage.svg", render_coverage(trace));
  }

  log << scenario.name << " seed " << seed << ": " << (o.ok ? "all checks pass" : "CHECK FAILED")
      << " (t1_sim " << o.report.summary.t1 << " s, t2_sim " << o.report.summary.t2 << " s)\n";
  if (o.liveness_failure) {
    log << o.error << "\n";
    return 2;
  }
  return o.ok ? 0 : 1;
}

int sweep_command(int n_lo, int n_hi, int trials, std::uint64_t base_seed, const ProtocolParams& params,
                  const std::filesystem::path& out, std::ostream& log) {
  if (n_lo < 1 || n_hi < n_lo) throw ConfigError("--n must be a range lo..hi with 1 <= lo <= hi");
  if (trials < 1) throw ConfigError("--trials must be positive");
  std::vector<BatchJob> jobs;
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(n) * 1000003ULL + t;
      jobs.push_back(BatchJob{random_scenario(n, seed, params), seed});
    }
  }
  const std::vector<RunOutcome> results = run_batch(jobs);
  std::filesystem::create_directories(out);
  std::ofstream csv(out / "summary.csv", std::ios::binary);
  if (!csv) throw ConfigError((out / "summary.csv").string() + ": cannot write");
  csv << summary_csv_header() << "\n";
  int failures = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    csv << summary_csv_row(results[i], jobs[i].scenario.config) << "\n";
    if (!results[i].ok) {
      ++failures;
      log << "FAIL " << results[i].scenario << ": " << (results[i].error.empty() ? "check failed" : results[i].error)
          << "\n";
    }
  }
  log << results.size() << " runs, " << failures << " failures\n";
  return std::min(failures, 125);
}

}  // namespace paint
