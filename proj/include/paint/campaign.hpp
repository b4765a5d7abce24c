#pragma once

// Running scenarios end to end: simulate, verify, persist, and batch runs
// over seeds or random configurations.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paint/scenario.hpp"
#include "paint/sim.hpp"
#include "paint/verify.hpp"

namespace paint {

struct RunOutcome {
  std::string scenario;
  std::uint64_t seed = 0;
  int robots = 0;
  bool ok = false;
  bool liveness_failure = false;
  std::string error;
  VerificationReport report;
  std::uint64_t trace_hash = 0;
  std::optional<Trace> trace;
};

/// Runs `scenario` with its schedule seed replaced by `seed` and verifies the
/// trace. Never throws for simulation failures; they land in `error`.
RunOutcome simulate_and_verify(const Scenario& scenario, std::uint64_t seed, bool keep_trace = false);

struct BatchJob {
  Scenario scenario;
  std::uint64_t seed = 0;
};

/// Independent runs on a worker pool; results are in job order.
std::vector<RunOutcome> run_batch(const std::vector<BatchJob>& jobs, unsigned threads = 0);

/// Nominal Phase-II estimate L*B / (N*v).
double nominal_t2(const SimConfig& config);
/// Brush-aware estimate L*B / (2*eta*N*v).
double brush_t2(const SimConfig& config);

std::string summary_csv_header();
std::string summary_csv_row(const RunOutcome& outcome, const SimConfig& config);

/// Random configuration in the 40 x 30 world: positions at least 1 unit
/// apart and 0.5 from the walls, random orientations, scales in [0.1, 10].
Scenario random_scenario(int robots, std::uint64_t seed, const ProtocolParams& params);

/// Overrides eta (and eps = eta/4 unless eps is given) and re-validates.
void apply_param_overrides(Scenario& scenario, std::optional<double> eta, std::optional<double> eps);

/// `run`: writes trace.jsonl, report.json, summary.csv and optionally
/// trajectories.svg / coverage.svg into `out`. Returns 0 when every check
/// passes, 1 on a failed check, 2 on a liveness failure.
int run_command(const Scenario& scenario, std::uint64_t seed, const std::filesystem::path& out, bool svg,
                std::ostream& log);

/// `sweep`: `trials` random configurations for each N in [n_lo, n_hi];
/// writes summary.csv into `out`. Returns the number of failed runs (capped).
int sweep_command(int n_lo, int n_hi, int trials, std::uint64_t base_seed, const ProtocolParams& params,
                  const std::filesystem::path& out, std::ostream& log);

}  // namespace paint
