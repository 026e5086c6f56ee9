#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ubo/gp.hpp"
#include "ubo/grasp.hpp"

namespace ubo {

/// Raw evaluation of a target function: outcome plus the number of colliding
/// joints (always 0 for synthetic targets).
struct ObjectiveSample {
  double f = 0.0;
  int colliding_joints = 0;
};

using Objective = std::function<ObjectiveSample(const Vector&)>;

/// CP(n_j) = 1 - exp(-lambda * n_j); 0 at n_j = 0, increasing toward 1.
double collision_penalty(int colliding_joints, double lambda);

struct PenalizedSample {
  double f = 0.0;        // raw outcome (0 on collision: no grasp executed)
  double f_prime = 0.0;  // what the surrogate is trained on
  int colliding_joints = 0;
};

/// On collision the raw outcome is 0 and the trained-on value is -CP(n_j);
/// with the penalty disabled collisions are simply modeled as 0. Non-colliding
/// queries pass through unchanged.
PenalizedSample penalized_objective(const Objective& objective, const Vector& u,
                                    bool collision_penalty_enabled,
                                    double lambda);

enum class SyntheticKind { kSafeRisky1D, kSafeRisky2D, kGaussianMix };

struct GaussianPeak {
  Vector center;
  double height = 1.0;
  double width = 0.1;  // isotropic standard deviation
};

/// Deterministic benchmark targets. The safe-risky defaults pair a narrow
/// high peak with a broad lower one:
///   1-D: 1.0 * exp(-(x-0.2)^2 / (2 * 0.01^2)) + 0.8 * exp(-(x-0.7)^2 / (2 * 0.1^2)).
/// kGaussianMix requires explicit peaks.
Objective make_synthetic_objective(SyntheticKind kind,
                                   const std::vector<GaussianPeak>& peaks = {});

/// Adapter over the planar simulator.
Objective make_grasp_objective(std::shared_ptr<const GraspScene> scene);

}  // namespace ubo
