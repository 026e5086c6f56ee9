#pragma once

#include <string>

#include "ubo/experiment.hpp"

namespace ubo {

/// Plain-text experiment config: one `key = value` per line, '#' comments.
/// Keys are the ExperimentConfig field names in lower_snake_case; unknown
/// keys are a hard error. `scenario` is required.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical echo of a config (every key, fixed order). Written next to the
/// experiment artifacts and re-parseable by the reporter.
std::string render_config(const ExperimentConfig& config);

}  // namespace ubo
