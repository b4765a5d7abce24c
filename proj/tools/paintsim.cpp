// paintsim: simulate, verify and render runs of the strip painting protocol.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "paint/campaign.hpp"
#include "paint/errors.hpp"
#include "paint/exhaustive.hpp"
#include "paint/scenario.hpp"
#include "paint/svg.hpp"
#include "paint/trace_io.hpp"
#include "paint/verify.hpp"

namespace {

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw paint::ConfigError("--n expects N or LO..HI, got '" + text + "'");
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw paint::ConfigError(path.string() + ": cannot write");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and verifier for distributed strip painting by oblivious robots"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string trace_path;
  std::string out_dir = "out";
  std::uint64_t seed = 7;
  std::optional<double> eta;
  std::optional<double> eps;
  bool svg = false;
  std::string n_range = "4..8";
  int trials = 100;
  int depth = 12;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--eta", eta, "Brush half-width (eps defaults to eta/4)");
    sub->add_option("--eps", eps, "Secondary-halt distance");
  };

  CLI::App* run = app.add_subcommand("run", "Simulate a scenario and verify the trace");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--seed", seed, "Scheduler seed");
  run->add_option("--out", out_dir, "Output directory");
  run->add_flag("--svg", svg, "Also write trajectories.svg and coverage.svg");
  add_params(run);

  CLI::App* sweep = app.add_subcommand("sweep", "Batch campaign over random configurations");
  sweep->add_option("--n", n_range, "Robot counts, N or LO..HI");
  sweep->add_option("--trials", trials, "Runs per robot count");
  sweep->add_option("--seed", seed, "Base seed");
  sweep->add_option("--out", out_dir, "Output directory");
  add_params(sweep);

  CLI::App* verify = app.add_subcommand("verify", "Re-run every check on a trace.jsonl");
  verify->add_option("trace", trace_path, "Trace file")->required();
  verify->add_option("--out", out_dir, "Directory for report.json");

  CLI::App* render = app.add_subcommand("render", "Render a trace.jsonl to SVG");
  render->add_option("trace", trace_path, "Trace file")->required();
  render->add_option("--out", out_dir, "Directory for the SVG files");

  CLI::App* exhaustive = app.add_subcommand("check-exhaustive", "Enumerate activation orders (N <= 3)");
  exhaustive->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  exhaustive->add_option("--depth", depth, "Number of steps to enumerate");
  add_params(exhaustive);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      paint::Scenario sc = paint::load_scenario(scenario_path);
      paint::apply_param_overrides(sc, eta, eps);
      return paint::run_command(sc, seed, out_dir, svg, std::cout);
    }
    if (sweep->parsed()) {
      const auto [lo, hi] = parse_range(n_range);
      paint::ProtocolParams params = eta ? paint::ProtocolParams::with_eta(*eta) : paint::ProtocolParams{};
      if (eps) params.eps = *eps;
      params.validate();
      return paint::sweep_command(lo, hi, trials, seed, params, out_dir, std::cout) == 0 ? 0 : 1;
    }
    if (verify->parsed()) {
      const paint::LoadedTrace loaded = paint::load_trace(trace_path);
      const paint::VerificationReport rep = paint::verify_trace(loaded.trace);
      std::filesystem::create_directories(out_dir);
      nlohmann::ordered_json doc;
      doc["scenario"] = loaded.scenario_name;
      doc["seed"] = loaded.trace.config.schedule.seed;
      doc["verification"] = rep.to_json();
      write_text(std::filesystem::path(out_dir) / "report.json", doc.dump(2) + "\n");
      std::cout << (rep.all_pass() ? "all checks pass" : "CHECK FAILED") << "\n";
      return rep.all_pass() ? 0 : 1;
    }
    if (render->parsed()) {
      const paint::LoadedTrace loaded = paint::load_trace(trace_path);
      std::filesystem::create_directories(out_dir);
      write_text(std::filesystem::path(out_dir) / "trajectories.svg", paint::render_trajectories(loaded.trace));
      write_text(std::filesystem::path(out_dir) / "coverage.svg", paint::render_coverage(loaded.trace));
      std::cout << "wrote " << out_dir << "/trajectories.svg and coverage.svg\n";
      return 0;
    }
    if (exhaustive->parsed()) {
      paint::Scenario sc = paint::load_scenario(scenario_path);
      paint::apply_param_overrides(sc, eta, eps);
      const paint::ExhaustiveResult res =
          paint::exhaustive_schedule_check(sc.config.world, sc.config.robots, sc.config.params, depth);
      std::cout << "states explored: " << res.states_explored << ", frontier: " << res.frontier_states
                << (res.partial ? " (PARTIAL: state cap reached)" : "") << "\n";
      std::cout << "first vertical movers:";
      for (int m : res.first_vertical_movers) std::cout << " R" << m + 1;
      std::cout << "\n";
      for (const auto& v : res.violations) std::cout << "violation [" << v.kind << "]: " << v.detail << "\n";
      std::cout << (res.ok() ? "no violations" : "VIOLATIONS FOUND") << "\n";
      return res.ok() ? 0 : 1;
    }
  } catch (const paint::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
