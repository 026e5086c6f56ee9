#pragma once

#include <functional>

#include "ubo/gp.hpp"
#include "ubo/rng.hpp"

namespace ubo {

enum class IncumbentKind { kBestObserved, kUnscented };

/// The query currently considered optimal. x_opt is always a dataset row.
struct Incumbent {
  Vector x_opt;
  double y_opt = 0.0;
  IncumbentKind kind = IncumbentKind::kBestObserved;
  Eigen::Index index = 0;  // row in the dataset
};

/// Expected improvement over y_best, summed across the predictive mixture:
///   EI(x) = sum_i [(mu_i - y_best) Phi(z_i) + sigma_i phi(z_i)].
/// Degenerate components (sigma_i = 0) contribute max(0, mu_i - y_best).
double expected_improvement(const GPModel& model, const Vector& x,
                            double y_best);

/// Same sum evaluated from precomputed mixture moments; UEI reuses this on
/// batched sigma-point predictions.
double expected_improvement_from_moments(const double* means,
                                         const double* variances,
                                         Eigen::Index m, double y_best);

/// Highest outcome in the dataset; ties break to the lowest index.
Incumbent best_observed_incumbent(const ObservationSet& data);

using ScalarField = std::function<double(const Vector&)>;

/// Deterministic global maximization over [0,1]^d: DIRECT-style trisection
/// search spending at most `budget` evaluations, then coordinate descent from
/// the best point with the step halved from 0.05 down to 1e-4.
Vector maximize_acquisition(const ScalarField& acq, int dim, long budget);

/// p stratified points in [0,1]^d: every dimension has exactly one sample per
/// width-1/p bin. Rows are points.
Matrix latin_hypercube(int p, int dim, Rng& rng);

}  // namespace ubo
