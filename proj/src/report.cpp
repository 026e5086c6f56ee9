#include "ubo/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "ubo/config.hpp"
#include "ubo/errors.hpp"
#include "ubo/format.hpp"

namespace ubo {

namespace {

namespace fs = std::filesystem;

struct ExperimentReport {
  std::string name;
  std::string scenario;
  std::string method;
  bool cp = true;
  int runs = 0;
  // Per iteration: mean and 95% half-width across runs for both metrics.
  std::vector<double> ymc_mean_avg, ymc_mean_ci95;
  std::vector<double> ymc_std_avg, ymc_std_ci95;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::string expected_header(int d) {
  std::ostringstream out;
  out << "run_id,iter";
  for (int j = 1; j <= d; ++j) out << ",x_" << j;
  out << ",f,f_prime,n_j";
  for (int j = 1; j <= d; ++j) out << ",opt_x_" << j;
  out << ",opt_value,ymc_mean,ymc_std";
  return out.str();
}

void moments(std::vector<double> values, double& mean, double& ci95) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double stddev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  ci95 = 1.96 * stddev / std::sqrt(n);
}

// Parses one experiment directory; appends problems to `offending` instead
// of throwing so that every broken file gets reported at once.
bool load_experiment(const fs::path& dir, ExperimentReport& report,
                     std::vector<std::string>& offending) {
  const fs::path config_path = dir / "config.txt";
  const fs::path trace_path = dir / "trace.csv";
  if (!fs::exists(config_path)) {
    offending.push_back(config_path.string() + " (missing)");
    return false;
  }
  if (!fs::exists(trace_path)) {
    offending.push_back(trace_path.string() + " (missing)");
    return false;
  }

  ExperimentConfig config;
  try {
    config = parse_config_file(config_path.string());
  } catch (const std::exception& err) {
    offending.push_back(config_path.string() + " (" + err.what() + ")");
    return false;
  }
  const int d = config.opt.dimension;
  const int budget = config.opt.budget;

  std::ifstream in(trace_path);
  std::string line;
  if (!std::getline(in, line) || line != expected_header(d)) {
    offending.push_back(trace_path.string() + " (bad header)");
    return false;
  }

  const std::size_t columns = 8 + 2 * static_cast<std::size_t>(d);
  const std::size_t ymc_mean_col = columns - 2;
  const std::size_t ymc_std_col = columns - 1;
  // iter -> per-run values
  std::vector<std::vector<double>> means(budget), stddevs(budget);
  std::map<long, int> rows_per_run;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != columns) {
      offending.push_back(trace_path.string() + " (line " +
                          std::to_string(line_no) + ": wrong column count)");
      return false;
    }
    try {
      const long run_id = std::stol(fields[0]);
      const int iter = std::stoi(fields[1]);
      if (iter < 1 || iter > budget) throw std::out_of_range("iter");
      means[iter - 1].push_back(std::stod(fields[ymc_mean_col]));
      stddevs[iter - 1].push_back(std::stod(fields[ymc_std_col]));
      ++rows_per_run[run_id];
    } catch (const std::exception&) {
      offending.push_back(trace_path.string() + " (line " +
                          std::to_string(line_no) + ": unparseable)");
      return false;
    }
  }
  if (rows_per_run.empty()) {
    offending.push_back(trace_path.string() + " (no data rows)");
    return false;
  }
  for (const auto& [run_id, count] : rows_per_run) {
    if (count != budget) {
      offending.push_back(trace_path.string() + " (run " +
                          std::to_string(run_id) + " has " +
                          std::to_string(count) + " rows, expected " +
                          std::to_string(budget) + ")");
      return false;
    }
  }

  report.name = config.name();
  report.scenario = scenario_name(config.scenario);
  report.method = method_name(config.method);
  report.cp = config.cp;
  report.runs = static_cast<int>(rows_per_run.size());
  report.ymc_mean_avg.resize(budget);
  report.ymc_mean_ci95.resize(budget);
  report.ymc_std_avg.resize(budget);
  report.ymc_std_ci95.resize(budget);
  for (int i = 0; i < budget; ++i) {
    moments(means[i], report.ymc_mean_avg[i], report.ymc_mean_ci95[i]);
    moments(stddevs[i], report.ymc_std_avg[i], report.ymc_std_ci95[i]);
  }
  return true;
}

}  // namespace

ReportPaths write_report(const std::string& input_dir, ReportFormat format) {
  const fs::path root(input_dir);
  if (!fs::is_directory(root))
    throw IoError("report input is not a directory: " + input_dir);

  std::vector<fs::path> candidates;
  if (fs::exists(root / "config.txt") || fs::exists(root / "trace.csv"))
    candidates.push_back(root);
  std::vector<fs::path> subdirs;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) subdirs.push_back(entry.path());
  std::sort(subdirs.begin(), subdirs.end());
  for (const fs::path& sub : subdirs)
    if (fs::exists(sub / "config.txt") || fs::exists(sub / "trace.csv"))
      candidates.push_back(sub);

  if (candidates.empty())
    throw IoError("no experiment outputs found in " + input_dir);

  std::vector<ExperimentReport> reports;
  std::vector<std::string> offending;
  for (const fs::path& dir : candidates) {
    ExperimentReport report;
    if (load_experiment(dir, report, offending)) reports.push_back(std::move(report));
  }
  if (!offending.empty()) {
    std::string message = "unreadable experiment outputs:";
    for (const std::string& o : offending) message += "\n  " + o;
    throw IoError(message);
  }

  std::sort(reports.begin(), reports.end(),
            [](const ExperimentReport& a, const ExperimentReport& b) {
              return a.name < b.name;
            });

  ReportPaths paths;
  paths.iterations = (root / "report_iterations.csv").string();
  {
    std::ofstream out(paths.iterations);
    if (!out) throw IoError("cannot write " + paths.iterations);
    out << "experiment,iter,ymc_mean_avg,ymc_mean_ci95,ymc_std_avg,ymc_std_ci95\n";
    for (const ExperimentReport& r : reports)
      for (std::size_t i = 0; i < r.ymc_mean_avg.size(); ++i)
        out << r.name << ',' << (i + 1) << ','
            << format_double(r.ymc_mean_avg[i]) << ','
            << format_double(r.ymc_mean_ci95[i]) << ','
            << format_double(r.ymc_std_avg[i]) << ','
            << format_double(r.ymc_std_ci95[i]) << '\n';
  }

  if (format == ReportFormat::kCsv) {
    paths.summary = (root / "report_summary.csv").string();
    std::ofstream out(paths.summary);
    if (!out) throw IoError("cannot write " + paths.summary);
    out << "experiment,scenario,method,cp,runs,final_ymc_mean,final_ymc_std\n";
    for (const ExperimentReport& r : reports)
      out << r.name << ',' << r.scenario << ',' << r.method << ','
          << (r.cp ? "true" : "false") << ',' << r.runs << ','
          << format_double(r.ymc_mean_avg.back()) << ','
          << format_double(r.ymc_std_avg.back()) << '\n';
  } else {
    paths.summary = (root / "report_summary.md").string();
    std::ofstream out(paths.summary);
    if (!out) throw IoError("cannot write " + paths.summary);
    out << "| experiment | scenario | method | cp | runs | ymc_mean | ymc_std |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const ExperimentReport& r : reports)
      out << "| " << r.name << " | " << r.scenario << " | " << r.method
          << " | " << (r.cp ? "true" : "false") << " | " << r.runs << " | "
          << format_double(r.ymc_mean_avg.back()) << " | "
          << format_double(r.ymc_std_avg.back()) << " |\n";
  }
  return paths;
}

}  // namespace ubo
