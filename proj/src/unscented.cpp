#include "ubo/unscented.hpp"

#include <cmath>
#include <stdexcept>

#include "ubo/mathutil.hpp"

namespace ubo {

SigmaPointSet sigma_points(const Vector& center, const InputNoise& noise) {
  const int d = static_cast<int>(center.size());
  if (noise.sigma_x <= 0.0)
    throw std::invalid_argument("sigma_points: sigma_x must be > 0");
  if (d + noise.k_scale <= 0.0)
    throw std::invalid_argument("sigma_points: d + k must be > 0");

  const double offset = std::sqrt(d + noise.k_scale) * noise.sigma_x;
  SigmaPointSet set;
  set.points.resize(2 * d + 1, d);
  set.weights.resize(2 * d + 1);
  set.points.row(0) = center.transpose().array().max(0.0).min(1.0);
  set.weights(0) = noise.k_scale / (d + noise.k_scale);
  const double w = 1.0 / (2.0 * (d + noise.k_scale));
  for (int i = 0; i < d; ++i) {
    Vector plus = center;
    Vector minus = center;
    plus(i) = clamp01(center(i) + offset);
    minus(i) = clamp01(center(i) - offset);
    set.points.row(2 * i + 1) = plus.transpose();
    set.points.row(2 * i + 2) = minus.transpose();
    set.weights(2 * i + 1) = w;
    set.weights(2 * i + 2) = w;
  }
  return set;
}

double uei(const GPModel& model, const Vector& x, double y_best,
           const InputNoise& noise) {
  const SigmaPointSet set = sigma_points(x, noise);
  Matrix means, variances;
  model.predict_batch(set.points, means, variances);
  const Eigen::Index m = means.cols();
  double value = 0.0;
  for (Eigen::Index p = 0; p < set.points.rows(); ++p) {
    // Rows of the batched output are per-point mixture moments.
    Vector mu = means.row(p);
    Vector var = variances.row(p);
    value += set.weights(p) *
             expected_improvement_from_moments(mu.data(), var.data(), m, y_best);
  }
  return value;
}

double unscented_outcome(const GPModel& model, const Vector& x,
                         const InputNoise& noise) {
  const SigmaPointSet set = sigma_points(x, noise);
  const Matrix means = model.predict_means(set.points);
  return set.weights.dot(means.rowwise().mean());
}

Incumbent unscented_incumbent(const GPModel& model, const ObservationSet& data,
                              const InputNoise& noise) {
  if (data.size() < 1)
    throw std::logic_error("unscented_incumbent: empty dataset");
  Eigen::Index best = 0;
  double best_u = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < data.X.rows(); ++i) {
    const double u = unscented_outcome(model, data.X.row(i).transpose(), noise);
    if (u > best_u) {
      best_u = u;
      best = i;
    }
  }
  return {data.X.row(best).transpose(), best_u, IncumbentKind::kUnscented,
          best};
}

}  // namespace ubo
