#pragma once

#include <string>

namespace ubo {

enum class ReportFormat { kCsv, kMarkdown };

struct ReportPaths {
  std::string iterations;
  std::string summary;
};

/// Scans a directory (and its immediate subdirectories) for experiment
/// outputs, recomputes the per-iteration aggregates from the traces, and
/// writes `report_iterations.csv` plus a final-iteration summary table
/// (`report_summary.csv` or `.md`) into the directory. Missing or corrupt
/// traces raise IoError listing the offending files; a directory without any
/// experiment outputs is an error.
ReportPaths write_report(const std::string& input_dir, ReportFormat format);

}  // namespace ubo
