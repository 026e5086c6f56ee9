// Experiment runner for the grasp-optimization library: seeded BO/UBO runs,
// Monte-Carlo robustness tracking, and Table-style reporting.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ubo/config.hpp"
#include "ubo/errors.hpp"
#include "ubo/experiment.hpp"
#include "ubo/format.hpp"
#include "ubo/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

constexpr std::uint64_t kDefaultBenchSeed = 20160;

int finish_experiment(const ubo::ExperimentResult& result) {
  const ubo::AggregateStats& agg = result.aggregate;
  std::cout << result.config.name() << ": " << agg.completed_runs
            << " runs completed, " << agg.failed_runs << " failed";
  if (!agg.ymc_mean_avg.empty())
    std::cout << "; final ymc_mean = " << ubo::format_double(agg.ymc_mean_avg.back())
              << ", ymc_std = " << ubo::format_double(agg.ymc_std_avg.back());
  std::cout << "\n  artifacts: " << result.config.output_dir << std::endl;
  return agg.completed_runs == 0 ? kExitNumerical : kExitOk;
}

int run_command(const std::string& config_path,
                std::optional<std::uint64_t> seed, int workers) {
  ubo::ExperimentConfig config = ubo::parse_config_file(config_path);
  if (seed) {
    config.opt.seed = *seed;
    config.finalize();
  }
  if (config.output_dir.empty()) config.output_dir = "out/" + config.name();
  return finish_experiment(ubo::run_experiment(config, workers));
}

int bench_command(const std::string& suite, const std::string& out_dir,
                  std::uint64_t seed, int workers) {
  struct Arm {
    ubo::Scenario scenario;
    ubo::Method method;
    bool cp;
  };
  std::vector<Arm> arms;
  if (suite == "safe-synthetic") {
    arms = {{ubo::Scenario::kSynthetic1D, ubo::Method::kBO, true},
            {ubo::Scenario::kSynthetic1D, ubo::Method::kUBO, true}};
  } else if (suite == "planar-grasp") {
    for (const ubo::Scenario s3 : {ubo::Scenario::kGlass3D,
                                   ubo::Scenario::kBottle3D,
                                   ubo::Scenario::kMug3D}) {
      arms.push_back({s3, ubo::Method::kUBO, true});
      arms.push_back({s3, ubo::Method::kUBO, false});
      arms.push_back({s3, ubo::Method::kBO, true});
    }
    for (const ubo::Scenario s2 : {ubo::Scenario::kGlass2D,
                                   ubo::Scenario::kBottle2D,
                                   ubo::Scenario::kMug2D})
      arms.push_back({s2, ubo::Method::kUBO, true});
  } else {
    std::cerr << "unknown bench suite: " << suite << std::endl;
    return kExitUsage;
  }

  int status = kExitOk;
  for (const Arm& arm : arms) {
    ubo::ExperimentConfig config;
    config.scenario = arm.scenario;
    config.method = arm.method;
    config.cp = arm.cp;
    config.opt.seed = seed;  // shared master seed: arms are seed-paired
    config.finalize();
    config.output_dir =
        (std::filesystem::path(out_dir) / config.name()).string();
    const int code = finish_experiment(ubo::run_experiment(config, workers));
    if (code != kExitOk) status = code;
  }
  const ubo::ReportPaths paths = ubo::write_report(out_dir, ubo::ReportFormat::kCsv);
  std::cout << "report: " << paths.summary << std::endl;
  return status;
}

int report_command(const std::string& in_dir, const std::string& format) {
  ubo::ReportFormat fmt;
  if (format == "csv") {
    fmt = ubo::ReportFormat::kCsv;
  } else if (format == "md") {
    fmt = ubo::ReportFormat::kMarkdown;
  } else {
    std::cerr << "unknown report format: " << format << std::endl;
    return kExitUsage;
  }
  const ubo::ReportPaths paths = ubo::write_report(in_dir, fmt);
  std::cout << paths.iterations << "\n" << paths.summary << std::endl;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BO/UBO grasp-optimization experiment harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  int workers = 0;
  CLI::App* run = app.add_subcommand("run", "run one experiment from a config file");
  run->add_option("--config", config_path, "key = value config file")->required();
  run->add_option("--seed", seed_override, "override the master seed");
  run->add_option("--workers", workers, "worker threads (0 = all cores)");

  std::string suite, out_dir;
  std::uint64_t bench_seed = kDefaultBenchSeed;
  int bench_workers = 0;
  CLI::App* bench = app.add_subcommand("bench", "run a canonical experiment suite");
  bench->add_option("--suite", suite, "safe-synthetic | planar-grasp")->required();
  bench->add_option("--out", out_dir, "output directory")->required();
  bench->add_option("--seed", bench_seed, "master seed");
  bench->add_option("--workers", bench_workers, "worker threads (0 = all cores)");

  std::string in_dir, format = "csv";
  CLI::App* report = app.add_subcommand("report", "summarize experiment outputs");
  report->add_option("--in", in_dir, "directory with experiment outputs")->required();
  report->add_option("--format", format, "csv | md");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return err.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return run_command(config_path, seed_override, workers);
    if (bench->parsed()) return bench_command(suite, out_dir, bench_seed, bench_workers);
    if (report->parsed()) return report_command(in_dir, format);
  } catch (const ubo::ConfigError& err) {
    std::cerr << "config error: " << err.what() << std::endl;
    return kExitUsage;
  } catch (const ubo::NumericalError& err) {
    std::cerr << "numerical error: " << err.what() << std::endl;
    return kExitNumerical;
  } catch (const ubo::IoError& err) {
    std::cerr << "i/o error: " << err.what() << std::endl;
    return kExitIo;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return kExitUsage;
  }
  return kExitUsage;
}
