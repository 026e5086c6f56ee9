#include "ubo/config.hpp"

#include <fstream>
#include <sstream>

#include "ubo/errors.hpp"
#include "ubo/format.hpp"

namespace ubo {

namespace {

std::string trim(const std::string& s) {
  const std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("config key '" + key + "' expects true or false, got '" +
                    value + "'");
}

long long parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects an integer, got '" +
                      value + "'");
  }
}

double parse_real(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects a number, got '" +
                      value + "'");
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  bool have_scenario = false;
  bool have_dimension = false;
  int declared_dimension = 0;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key or value");

    if (key == "scenario") {
      config.scenario = parse_scenario(value);
      have_scenario = true;
    } else if (key == "method") {
      config.method = parse_method(value);
    } else if (key == "cp") {
      config.cp = parse_bool(value, key);
    } else if (key == "runs") {
      config.runs = static_cast<int>(parse_int(value, key));
    } else if (key == "mc_samples") {
      config.mc_samples = static_cast<int>(parse_int(value, key));
    } else if (key == "mc_every_iteration") {
      config.mc_every_iteration = parse_bool(value, key);
    } else if (key == "dimension") {
      declared_dimension = static_cast<int>(parse_int(value, key));
      have_dimension = true;
    } else if (key == "init_points") {
      config.opt.init_points = static_cast<int>(parse_int(value, key));
    } else if (key == "budget") {
      config.opt.budget = static_cast<int>(parse_int(value, key));
    } else if (key == "sigma_x") {
      config.opt.noise.sigma_x = parse_real(value, key);
    } else if (key == "k_scale") {
      config.opt.noise.k_scale = parse_real(value, key);
    } else if (key == "noise_variance") {
      config.opt.noise_variance = parse_real(value, key);
    } else if (key == "hyperparam_samples") {
      config.opt.hyperparam_samples = static_cast<int>(parse_int(value, key));
    } else if (key == "lambda") {
      config.opt.lambda = parse_real(value, key);
    } else if (key == "seed") {
      config.opt.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "acq_budget") {
      config.opt.acq_budget = parse_int(value, key);
    } else if (key == "output_dir") {
      config.output_dir = value;
    } else {
      throw ConfigError("unknown config key '" + key + "' on line " +
                        std::to_string(line_no));
    }
  }

  if (!have_scenario) throw ConfigError("config is missing required key 'scenario'");
  if (have_dimension && declared_dimension != scenario_dimension(config.scenario))
    throw ConfigError("dimension " + std::to_string(declared_dimension) +
                      " is inconsistent with scenario " +
                      scenario_name(config.scenario));
  config.finalize();
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string render_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "scenario = " << scenario_name(config.scenario) << '\n'
      << "method = " << method_name(config.method) << '\n'
      << "cp = " << (config.cp ? "true" : "false") << '\n'
      << "runs = " << config.runs << '\n'
      << "mc_samples = " << config.mc_samples << '\n'
      << "mc_every_iteration = " << (config.mc_every_iteration ? "true" : "false") << '\n'
      << "dimension = " << config.opt.dimension << '\n'
      << "init_points = " << config.opt.init_points << '\n'
      << "budget = " << config.opt.budget << '\n'
      << "sigma_x = " << format_double(config.opt.noise.sigma_x) << '\n'
      << "k_scale = " << format_double(config.opt.noise.k_scale) << '\n'
      << "noise_variance = " << format_double(config.opt.noise_variance) << '\n'
      << "hyperparam_samples = " << config.opt.hyperparam_samples << '\n'
      << "lambda = " << format_double(config.opt.lambda) << '\n'
      << "seed = " << config.opt.seed << '\n'
      << "acq_budget = " << config.opt.effective_acq_budget() << '\n';
  if (!config.output_dir.empty()) out << "output_dir = " << config.output_dir << '\n';
  return out.str();
}

}  // namespace ubo
