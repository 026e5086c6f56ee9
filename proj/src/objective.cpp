#include "ubo/objective.hpp"

#include <cmath>
#include <stdexcept>

#include "ubo/mathutil.hpp"

namespace ubo {

double collision_penalty(int colliding_joints, double lambda) {
  if (colliding_joints < 0)
    throw std::invalid_argument("collision_penalty: negative joint count");
  if (lambda <= 0.0)
    throw std::invalid_argument("collision_penalty: lambda must be > 0");
  return 1.0 - std::exp(-lambda * colliding_joints);
}

PenalizedSample penalized_objective(const Objective& objective, const Vector& u,
                                    bool collision_penalty_enabled,
                                    double lambda) {
  const ObjectiveSample sample = objective(u);
  PenalizedSample out;
  out.colliding_joints = sample.colliding_joints;
  if (sample.colliding_joints >= 1) {
    out.f = 0.0;
    out.f_prime = collision_penalty_enabled
                      ? -collision_penalty(sample.colliding_joints, lambda)
                      : 0.0;
  } else {
    out.f = sample.f;
    out.f_prime = sample.f;
  }
  return out;
}

namespace {

Objective gaussian_mix(std::vector<GaussianPeak> peaks) {
  if (peaks.empty())
    throw std::invalid_argument("make_synthetic_objective: no peaks given");
  const Eigen::Index d = peaks.front().center.size();
  for (const GaussianPeak& p : peaks) {
    if (p.center.size() != d)
      throw std::invalid_argument("make_synthetic_objective: peak dimensions differ");
    if (p.width <= 0.0)
      throw std::invalid_argument("make_synthetic_objective: peak width must be > 0");
  }
  return [peaks = std::move(peaks)](const Vector& x) {
    double f = 0.0;
    for (const GaussianPeak& p : peaks) {
      const double r2 = (x - p.center).squaredNorm();
      f += p.height * std::exp(-r2 / (2.0 * p.width * p.width));
    }
    return ObjectiveSample{f, 0};
  };
}

Vector point1(double x) {
  Vector v(1);
  v << x;
  return v;
}

Vector point2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

}  // namespace

Objective make_synthetic_objective(SyntheticKind kind,
                                   const std::vector<GaussianPeak>& peaks) {
  switch (kind) {
    case SyntheticKind::kSafeRisky1D:
      if (!peaks.empty()) return gaussian_mix(peaks);
      return gaussian_mix({{point1(0.2), 1.0, 0.01}, {point1(0.7), 0.8, 0.1}});
    case SyntheticKind::kSafeRisky2D:
      if (!peaks.empty()) return gaussian_mix(peaks);
      return gaussian_mix(
          {{point2(0.2, 0.2), 1.0, 0.03}, {point2(0.7, 0.7), 0.8, 0.15}});
    case SyntheticKind::kGaussianMix:
      return gaussian_mix(peaks);
  }
  throw std::invalid_argument("make_synthetic_objective: unknown kind");
}

Objective make_grasp_objective(std::shared_ptr<const GraspScene> scene) {
  if (!scene) throw std::invalid_argument("make_grasp_objective: null scene");
  return [scene = std::move(scene)](const Vector& u) {
    const GraspOutcome outcome = evaluate_grasp(*scene, u);
    return ObjectiveSample{outcome.quality, outcome.colliding_joints};
  };
}

}  // namespace ubo
