#include "ubo/optimizer.hpp"

#include <stdexcept>

#include "ubo/errors.hpp"
#include "ubo/slice.hpp"

namespace ubo {

void OptimizerConfig::validate() const {
  if (dimension < 1) throw ConfigError("dimension must be >= 1");
  if (init_points < 1) throw ConfigError("init_points must be >= 1");
  if (budget < init_points)
    throw ConfigError("budget must be at least init_points");
  if (lambda <= 0.0) throw ConfigError("lambda must be > 0");
  if (noise_variance < 0.0) throw ConfigError("noise_variance must be >= 0");
  if (hyperparam_samples < 1) throw ConfigError("hyperparam_samples must be >= 1");
  if (noise.sigma_x <= 0.0) throw ConfigError("sigma_x must be > 0");
  const bool uei = acquisition == AcquisitionRule::kUEI;
  const bool unscented = incumbent == IncumbentRule::kUnscented;
  if (uei != unscented)
    throw ConfigError("UEI acquisition and unscented incumbent must be used together");
}

RunRecord run_optimization(const Objective& objective,
                           const OptimizerConfig& config) {
  config.validate();

  RunRecord record;
  record.config = config;
  record.seed = config.seed;
  record.entries.reserve(config.budget);

  Rng rng(config.seed);
  const Matrix design =
      latin_hypercube(config.init_points, config.dimension, rng);

  ObservationSet data;
  HyperparamSampler sampler(config.dimension, config.noise_variance);
  GPModel model;

  for (int iter = 1; iter <= config.budget; ++iter) {
    Vector x;
    if (iter <= config.init_points) {
      x = design.row(iter - 1).transpose();
    } else {
      const double y_best = data.y.maxCoeff();
      ScalarField acq;
      if (config.acquisition == AcquisitionRule::kUEI) {
        acq = [&](const Vector& q) { return uei(model, q, y_best, config.noise); };
      } else {
        acq = [&](const Vector& q) {
          return expected_improvement(model, q, y_best);
        };
      }
      x = maximize_acquisition(acq, config.dimension,
                               config.effective_acq_budget());
    }

    const PenalizedSample sample = penalized_objective(
        objective, x, config.collision_penalty_enabled, config.lambda);
    data.append(x, sample.f_prime);

    try {
      const std::vector<KernelHyperparams> thetas =
          sampler.sample(data, config.hyperparam_samples, rng);
      model = fit(data, thetas, config.noise_variance);
    } catch (NumericalError& err) {
      err.iteration = iter;
      throw;
    }

    const Incumbent inc = config.incumbent == IncumbentRule::kUnscented
                              ? unscented_incumbent(model, data, config.noise)
                              : best_observed_incumbent(data);

    IterationRecord entry;
    entry.iteration = iter;
    entry.x = x;
    entry.f = sample.f;
    entry.f_prime = sample.f_prime;
    entry.colliding_joints = sample.colliding_joints;
    entry.x_opt = inc.x_opt;
    entry.opt_value = inc.y_opt;
    entry.opt_index = inc.index;
    record.entries.push_back(std::move(entry));
  }
  return record;
}

}  // namespace ubo
