#include "ubo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <thread>

#include "ubo/config.hpp"
#include "ubo/errors.hpp"
#include "ubo/format.hpp"

namespace ubo {

namespace {

constexpr std::uint64_t kMcStreamTag = 0x6d63;  // separate stream per run

struct ScenarioInfo {
  Scenario scenario;
  const char* name;
  int dimension;
};

constexpr ScenarioInfo kScenarios[] = {
    {Scenario::kSynthetic1D, "synthetic-1d", 1},
    {Scenario::kSynthetic2D, "synthetic-2d", 2},
    {Scenario::kGlass2D, "glass-2d", 2},
    {Scenario::kGlass3D, "glass-3d", 3},
    {Scenario::kBottle2D, "bottle-2d", 2},
    {Scenario::kBottle3D, "bottle-3d", 3},
    {Scenario::kMug2D, "mug-2d", 2},
    {Scenario::kMug3D, "mug-3d", 3},
};

const ScenarioInfo& scenario_info(Scenario scenario) {
  for (const ScenarioInfo& info : kScenarios)
    if (info.scenario == scenario) return info;
  throw ConfigError("unknown scenario");
}

}  // namespace

Scenario parse_scenario(const std::string& name) {
  for (const ScenarioInfo& info : kScenarios)
    if (name == info.name) return info.scenario;
  throw ConfigError("unknown scenario: " + name);
}

std::string scenario_name(Scenario scenario) { return scenario_info(scenario).name; }

int scenario_dimension(Scenario scenario) { return scenario_info(scenario).dimension; }

Objective make_scenario_objective(Scenario scenario) {
  switch (scenario) {
    case Scenario::kSynthetic1D:
      return make_synthetic_objective(SyntheticKind::kSafeRisky1D);
    case Scenario::kSynthetic2D:
      return make_synthetic_objective(SyntheticKind::kSafeRisky2D);
    case Scenario::kGlass2D:
      return make_grasp_objective(std::make_shared<GraspScene>(make_scene("glass", 2)));
    case Scenario::kGlass3D:
      return make_grasp_objective(std::make_shared<GraspScene>(make_scene("glass", 3)));
    case Scenario::kBottle2D:
      return make_grasp_objective(std::make_shared<GraspScene>(make_scene("bottle", 2)));
    case Scenario::kBottle3D:
      return make_grasp_objective(std::make_shared<GraspScene>(make_scene("bottle", 3)));
    case Scenario::kMug2D:
      return make_grasp_objective(std::make_shared<GraspScene>(make_scene("mug", 2)));
    case Scenario::kMug3D:
      return make_grasp_objective(std::make_shared<GraspScene>(make_scene("mug", 3)));
  }
  throw ConfigError("unknown scenario");
}

Method parse_method(const std::string& name) {
  if (name == "BO" || name == "bo") return Method::kBO;
  if (name == "UBO" || name == "ubo") return Method::kUBO;
  throw ConfigError("unknown method: " + name);
}

std::string method_name(Method method) {
  return method == Method::kBO ? "BO" : "UBO";
}

std::string ExperimentConfig::name() const {
  return scenario_name(scenario) + "_" +
         (method == Method::kBO ? "bo" : "ubo") + "_" + (cp ? "cp" : "nocp");
}

void ExperimentConfig::finalize() {
  opt.dimension = scenario_dimension(scenario);
  if (method == Method::kUBO) {
    opt.acquisition = AcquisitionRule::kUEI;
    opt.incumbent = IncumbentRule::kUnscented;
  } else {
    opt.acquisition = AcquisitionRule::kEI;
    opt.incumbent = IncumbentRule::kBestObserved;
  }
  opt.collision_penalty_enabled = cp;
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (mc_samples < 1) throw ConfigError("mc_samples must be >= 1");
  opt.validate();
}

McStats monte_carlo_eval(const Objective& objective, const Vector& x_opt,
                         int mc_samples, const InputNoise& noise, Rng& rng) {
  if (mc_samples < 1)
    throw std::invalid_argument("monte_carlo_eval: mc_samples must be >= 1");
  const Eigen::Index d = x_opt.size();
  Vector values(mc_samples);
  Vector probe(d);
  for (int i = 0; i < mc_samples; ++i) {
    for (Eigen::Index j = 0; j < d; ++j)
      probe(j) = clamp01(x_opt(j) + noise.sigma_x * rng.normal());
    values(i) = objective(probe).f;
  }
  McStats stats;
  stats.mean = values.mean();
  if (mc_samples > 1) {
    const double ss = (values.array() - stats.mean).square().sum();
    stats.stddev = std::sqrt(ss / (mc_samples - 1));
  }
  return stats;
}

namespace {

RunResult execute_run(const ExperimentConfig& config, const Objective& objective,
                      int run_index) {
  RunResult result;
  result.seed = config.opt.seed + 1000ull * static_cast<std::uint64_t>(run_index);
  OptimizerConfig run_config = config.opt;
  run_config.seed = result.seed;

  try {
    result.record = run_optimization(objective, run_config);
  } catch (const NumericalError& err) {
    result.failed = true;
    result.error = err.what();
    result.fail_iteration = err.iteration;
    return result;
  }

  Rng mc_rng = Rng(result.seed).derive(kMcStreamTag);
  result.robustness.reserve(result.record.entries.size());
  Eigen::Index previous_opt = -1;
  McStats carried;
  for (const IterationRecord& entry : result.record.entries) {
    if (entry.opt_index != previous_opt || config.mc_every_iteration) {
      carried = monte_carlo_eval(objective, entry.x_opt, config.mc_samples,
                                 config.opt.noise, mc_rng);
      previous_opt = entry.opt_index;
    }
    result.robustness.push_back(carried);
  }
  return result;
}

// Sorted accumulation: aggregate output is exactly permutation-invariant in
// run order.
void sorted_moments(std::vector<double> values, double& mean, double& stddev,
                    double& ci95) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  stddev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  ci95 = 1.96 * stddev / std::sqrt(n);
}

}  // namespace

AggregateStats aggregate_runs(const std::vector<RunResult>& runs, int budget) {
  AggregateStats stats;
  for (const RunResult& run : runs)
    run.failed ? ++stats.failed_runs : ++stats.completed_runs;
  if (stats.completed_runs == 0) return stats;

  stats.ymc_mean_avg.resize(budget);
  stats.ymc_mean_std.resize(budget);
  stats.ymc_mean_ci95.resize(budget);
  stats.ymc_std_avg.resize(budget);
  stats.ymc_std_std.resize(budget);
  stats.ymc_std_ci95.resize(budget);

  std::vector<double> means, stddevs;
  for (int i = 0; i < budget; ++i) {
    means.clear();
    stddevs.clear();
    for (const RunResult& run : runs) {
      if (run.failed) continue;
      means.push_back(run.robustness[i].mean);
      stddevs.push_back(run.robustness[i].stddev);
    }
    sorted_moments(means, stats.ymc_mean_avg[i], stats.ymc_mean_std[i],
                   stats.ymc_mean_ci95[i]);
    sorted_moments(stddevs, stats.ymc_std_avg[i], stats.ymc_std_std[i],
                   stats.ymc_std_ci95[i]);
  }
  return stats;
}

ExperimentResult run_experiment(const ExperimentConfig& config_in, int workers) {
  ExperimentConfig config = config_in;
  config.finalize();

  const Objective objective = make_scenario_objective(config.scenario);
  std::vector<RunResult> results(config.runs);

  int worker_count = workers > 0
                         ? workers
                         : static_cast<int>(std::thread::hardware_concurrency());
  worker_count = std::clamp(worker_count, 1, config.runs);

  std::atomic<int> next{0};
  auto drain = [&] {
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= config.runs) break;
      results[r] = execute_run(config, objective, r);
    }
  };
  if (worker_count == 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w) pool.emplace_back(drain);
    for (std::thread& t : pool) t.join();
  }

  ExperimentResult result;
  result.config = config;
  result.aggregate = aggregate_runs(results, config.opt.budget);
  result.runs = std::move(results);
  if (!config.output_dir.empty()) write_experiment_outputs(result);
  return result;
}

void write_experiment_outputs(const ExperimentResult& result) {
  namespace fs = std::filesystem;
  const ExperimentConfig& config = result.config;
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir.string());

  {
    std::ofstream out(dir / "config.txt");
    if (!out) throw IoError("cannot write " + (dir / "config.txt").string());
    out << render_config(config);
  }

  const int d = config.opt.dimension;
  {
    std::ofstream out(dir / "trace.csv");
    if (!out) throw IoError("cannot write " + (dir / "trace.csv").string());
    out << "run_id,iter";
    for (int j = 1; j <= d; ++j) out << ",x_" << j;
    out << ",f,f_prime,n_j";
    for (int j = 1; j <= d; ++j) out << ",opt_x_" << j;
    out << ",opt_value,ymc_mean,ymc_std\n";
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
      const RunResult& run = result.runs[r];
      if (run.failed) continue;
      for (std::size_t i = 0; i < run.record.entries.size(); ++i) {
        const IterationRecord& e = run.record.entries[i];
        out << r << ',' << e.iteration;
        for (int j = 0; j < d; ++j) out << ',' << format_double(e.x(j));
        out << ',' << format_double(e.f) << ',' << format_double(e.f_prime)
            << ',' << e.colliding_joints;
        for (int j = 0; j < d; ++j) out << ',' << format_double(e.x_opt(j));
        out << ',' << format_double(e.opt_value) << ','
            << format_double(run.robustness[i].mean) << ','
            << format_double(run.robustness[i].stddev) << '\n';
      }
    }
  }

  {
    std::ofstream out(dir / "aggregate.csv");
    if (!out) throw IoError("cannot write " + (dir / "aggregate.csv").string());
    out << "iter,ymc_mean_avg,ymc_mean_std,ymc_mean_ci95,"
           "ymc_std_avg,ymc_std_std,ymc_std_ci95\n";
    const AggregateStats& agg = result.aggregate;
    for (std::size_t i = 0; i < agg.ymc_mean_avg.size(); ++i) {
      out << (i + 1) << ',' << format_double(agg.ymc_mean_avg[i]) << ','
          << format_double(agg.ymc_mean_std[i]) << ','
          << format_double(agg.ymc_mean_ci95[i]) << ','
          << format_double(agg.ymc_std_avg[i]) << ','
          << format_double(agg.ymc_std_std[i]) << ','
          << format_double(agg.ymc_std_ci95[i]) << '\n';
    }
  }

  {
    std::ofstream out(dir / "summary.csv");
    if (!out) throw IoError("cannot write " + (dir / "summary.csv").string());
    out << "experiment,scenario,method,cp,runs,completed_runs,failed_runs,"
           "final_ymc_mean,final_ymc_std\n";
    const AggregateStats& agg = result.aggregate;
    const bool have = !agg.ymc_mean_avg.empty();
    out << config.name() << ',' << scenario_name(config.scenario) << ','
        << method_name(config.method) << ',' << (config.cp ? "true" : "false")
        << ',' << config.runs << ',' << agg.completed_runs << ','
        << agg.failed_runs << ','
        << (have ? format_double(agg.ymc_mean_avg.back()) : "nan") << ','
        << (have ? format_double(agg.ymc_std_avg.back()) : "nan") << '\n';
  }

  if (result.aggregate.failed_runs > 0) {
    std::ofstream out(dir / "failures.txt");
    for (const RunResult& run : result.runs)
      if (run.failed)
        out << "seed=" << run.seed << " iteration=" << run.fail_iteration
            << " error=" << run.error << '\n';
  }
}

}  // namespace ubo
