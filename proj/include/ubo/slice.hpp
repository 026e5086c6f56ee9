#pragma once

#include <vector>

#include "ubo/gp.hpp"
#include "ubo/rng.hpp"

namespace ubo {

/// Markov chain over the (d+1)-dimensional log-hyperparameter space
/// [log l_1 .. log l_d, log sf2] targeting log_marginal_likelihood. Univariate
/// stepping-out/shrinkage slice sampling (Neal 2003), one coordinate per step,
/// cycling round-robin. The chain is kept alive across refits so each
/// optimization iteration warm-starts from the previous state; only the first
/// call pays the burn-in.
class HyperparamSampler {
 public:
  HyperparamSampler(int dim, double noise_variance);

  /// m retained states, `kThinSteps` slice steps apart.
  std::vector<KernelHyperparams> sample(const ObservationSet& data, int m,
                                        Rng& rng);

  const Vector& state() const { return state_; }

  static constexpr double kStepWidth = 1.0;
  static constexpr int kBurninSteps = 50;
  static constexpr int kThinSteps = 10;

 private:
  double target(const ObservationSet& data, const Vector& w) const;
  void step(const ObservationSet& data, Rng& rng);

  int dim_;
  double noise_variance_;
  Vector state_;
  int coord_ = 0;
  bool warmed_ = false;
};

/// One-shot variant: fresh chain, burn-in included. Deterministic in the rng
/// stream.
std::vector<KernelHyperparams> sample_hyperparams(const ObservationSet& data,
                                                  int m, double noise_variance,
                                                  Rng& rng);

}  // namespace ubo
