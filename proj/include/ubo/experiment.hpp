#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ubo/optimizer.hpp"

namespace ubo {

enum class Scenario {
  kSynthetic1D,
  kSynthetic2D,
  kGlass2D,
  kGlass3D,
  kBottle2D,
  kBottle3D,
  kMug2D,
  kMug3D,
};

enum class Method { kBO, kUBO };

Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario scenario);
int scenario_dimension(Scenario scenario);
Objective make_scenario_objective(Scenario scenario);

Method parse_method(const std::string& name);
std::string method_name(Method method);

/// One experiment: `runs` seeded optimization runs of a scenario with one
/// method, plus Monte-Carlo robustness tracking of the incumbent.
struct ExperimentConfig {
  Scenario scenario = Scenario::kSynthetic1D;
  Method method = Method::kUBO;
  bool cp = true;
  int runs = 20;
  int mc_samples = 10;
  bool mc_every_iteration = false;
  OptimizerConfig opt;
  std::string output_dir;

  std::string name() const;
  /// Derives dimension / acquisition / incumbent / cp flag from scenario and
  /// method and validates the whole config.
  void finalize();
};

struct McStats {
  double mean = 0.0;
  double stddev = 0.0;
};

/// Sample mean and standard deviation (denominator mc_samples - 1) of the
/// raw outcome f at x_opt + eps, eps ~ N(0, I sigma_x^2), clamped into the
/// unit hypercube. Robustness metrics never see the penalized f'.
McStats monte_carlo_eval(const Objective& objective, const Vector& x_opt,
                         int mc_samples, const InputNoise& noise, Rng& rng);

struct RunResult {
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  int fail_iteration = -1;
  RunRecord record;
  std::vector<McStats> robustness;  // per iteration, carried forward
};

struct AggregateStats {
  // Per-iteration statistics across completed runs.
  std::vector<double> ymc_mean_avg, ymc_mean_std, ymc_mean_ci95;
  std::vector<double> ymc_std_avg, ymc_std_std, ymc_std_ci95;
  int completed_runs = 0;
  int failed_runs = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RunResult> runs;
  AggregateStats aggregate;
};

/// Order- and scheduling-independent aggregation (per-iteration values are
/// sorted before accumulation).
AggregateStats aggregate_runs(const std::vector<RunResult>& runs, int budget);

/// Executes `config.runs` independent runs (seed + 1000 * run_index each),
/// re-evaluating robustness whenever the incumbent location changes. Runs
/// execute on `workers` threads (0 = hardware concurrency); output artifacts
/// (config.txt, trace.csv, aggregate.csv, summary.csv) are written to
/// config.output_dir when set and are independent of scheduling.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                int workers = 0);

/// Artifact writing, exposed for the CLI and tests.
void write_experiment_outputs(const ExperimentResult& result);

}  // namespace ubo
