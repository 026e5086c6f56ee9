#pragma once

#include "ubo/acquisition.hpp"
#include "ubo/gp.hpp"

namespace ubo {

/// Gaussian input noise N(0, I sigma_x^2) in normalized coordinates, plus the
/// free scale parameter k of the unscented transform.
struct InputNoise {
  double sigma_x = 0.03;
  double k_scale = 1.0;
};

/// 2d+1 sigma points (rows) and their weights. Points are clamped into the
/// unit hypercube; weights always sum to 1.
struct SigmaPointSet {
  Matrix points;
  Vector weights;
};

/// Central point plus +/- sqrt(d + k) * sigma_x along each axis, clamped
/// componentwise to [0,1]^d. Weights: w0 = k/(d+k), the rest 1/(2(d+k)).
SigmaPointSet sigma_points(const Vector& center, const InputNoise& noise);

/// Unscented expected improvement: the sigma-point-weighted average of EI
/// around x, i.e. the expected EI under the input-noise distribution.
double uei(const GPModel& model, const Vector& x, double y_best,
           const InputNoise& noise);

/// Unscented outcome u(x): sigma-point-weighted, hyperparameter-averaged GP
/// mean. Ranks observed queries by how well their neighborhood performs.
double unscented_outcome(const GPModel& model, const Vector& x,
                         const InputNoise& noise);

/// argmax of the unscented outcome over the dataset rows; ties break to the
/// lowest index.
Incumbent unscented_incumbent(const GPModel& model, const ObservationSet& data,
                              const InputNoise& noise);

}  // namespace ubo
