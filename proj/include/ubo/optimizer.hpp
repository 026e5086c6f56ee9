#pragma once

#include <cstdint>
#include <vector>

#include "ubo/acquisition.hpp"
#include "ubo/objective.hpp"
#include "ubo/unscented.hpp"

namespace ubo {

enum class AcquisitionRule { kEI, kUEI };
enum class IncumbentRule { kBestObserved, kUnscented };

struct OptimizerConfig {
  int dimension = 1;
  int init_points = 20;  // LHS design size p
  int budget = 160;      // total evaluations N, including the design
  InputNoise noise{};
  double noise_variance = 1e-8;  // observation noise sigma_eta^2
  int hyperparam_samples = 10;   // m
  AcquisitionRule acquisition = AcquisitionRule::kEI;
  IncumbentRule incumbent = IncumbentRule::kBestObserved;
  bool collision_penalty_enabled = true;
  double lambda = 0.1;
  std::uint64_t seed = 0;
  long acq_budget = 0;  // 0 means the default 1000 * dimension

  long effective_acq_budget() const {
    return acq_budget > 0 ? acq_budget : 1000L * dimension;
  }
  void validate() const;
};

struct IterationRecord {
  int iteration = 0;  // 1-based
  Vector x;
  double f = 0.0;
  double f_prime = 0.0;
  int colliding_joints = 0;
  Vector x_opt;
  double opt_value = 0.0;
  Eigen::Index opt_index = 0;
};

/// Full trace of one optimization run: exactly `budget` entries, the first
/// `init_points` of them the LHS design.
struct RunRecord {
  OptimizerConfig config;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> entries;
};

/// The BO/UBO outer loop. Each iteration refits the surrogate on all
/// penalized outcomes (hyperparameters re-sampled, chain warm-started),
/// maximizes EI or UEI with y_best = max observed f', evaluates the
/// penalized objective, and records the configured incumbent. Deterministic
/// given the seed. Surrogate failures abort with NumericalError carrying the
/// iteration index.
RunRecord run_optimization(const Objective& objective,
                           const OptimizerConfig& config);

}  // namespace ubo
