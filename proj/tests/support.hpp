// Test-only oracles and generators. Everything here is deliberately
// independent of the library's implementation paths: dense full-pivot
// solves instead of Cholesky, eigendecompositions for log-determinants,
// halfspace enumeration instead of the incremental hull, Monte Carlo
// instead of closed forms.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "ubo/gp.hpp"
#include "ubo/mathutil.hpp"
#include "ubo/rng.hpp"

namespace testsupport {

using ubo::Matrix;
using ubo::Vector;

inline ubo::ObservationSet random_dataset(int n, int d, ubo::Rng& rng,
                                          double y_scale = 1.0) {
  Matrix x(n, d);
  Vector y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = rng.uniform();
    double v = 0.0;
    for (int j = 0; j < d; ++j) v += std::sin(3.0 * x(i, j) + j);
    y(i) = y_scale * (v / d) + 0.05 * rng.normal();
  }
  return ubo::ObservationSet(std::move(x), std::move(y));
}

inline ubo::KernelHyperparams random_theta(int d, ubo::Rng& rng) {
  ubo::KernelHyperparams theta;
  theta.log_lengthscales.resize(d);
  for (int j = 0; j < d; ++j)
    theta.log_lengthscales(j) = rng.uniform(std::log(0.05), std::log(0.5));
  theta.log_signal_variance = rng.uniform(-1.0, 1.0);
  return theta;
}

struct DenseMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Full-pivot LU route for the GP posterior, no jitter, no caching.
inline DenseMoments dense_predict(const ubo::ObservationSet& data,
                                  const ubo::KernelHyperparams& theta,
                                  double noise_variance, const Vector& x) {
  const int n = data.size();
  Matrix gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram(i, j) = ubo::matern52(data.X.row(i).transpose(),
                                 data.X.row(j).transpose(), theta);
  gram.diagonal().array() += noise_variance;
  const auto lu = gram.fullPivLu();
  Vector k(n);
  for (int i = 0; i < n; ++i)
    k(i) = ubo::matern52(x, data.X.row(i).transpose(), theta);
  DenseMoments out;
  out.mean = k.dot(lu.solve(data.y));
  out.variance = ubo::matern52(x, x, theta) - k.dot(lu.solve(k));
  return out;
}

// Eigendecomposition route for log p(y | X, theta) + log prior.
inline double dense_log_marginal(const ubo::ObservationSet& data,
                                 const ubo::KernelHyperparams& theta,
                                 double noise_variance) {
  const int n = data.size();
  Matrix gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram(i, j) = ubo::matern52(data.X.row(i).transpose(),
                                 data.X.row(j).transpose(), theta);
  gram.diagonal().array() += noise_variance;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  const Vector lambda = eig.eigenvalues();
  const Vector proj = eig.eigenvectors().transpose() * data.y;
  double quad = 0.0, logdet = 0.0;
  for (int i = 0; i < n; ++i) {
    quad += proj(i) * proj(i) / lambda(i);
    logdet += std::log(lambda(i));
  }
  double log_prior = ubo::normal_logpdf(theta.log_signal_variance, 0.0, 1.0);
  for (int j = 0; j < theta.dim(); ++j)
    log_prior +=
        ubo::normal_logpdf(theta.log_lengthscales(j), std::log(0.2), 1.0);
  return -0.5 * quad - 0.5 * logdet - 0.5 * n * ubo::kLogTwoPi + log_prior;
}

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

// Monte-Carlo E[max(0, yhat - y_best)] under the mixture predictive at x.
inline McEstimate mc_expected_improvement(const ubo::GPModel& model,
                                          const Vector& x, double y_best,
                                          int samples, ubo::Rng& rng) {
  const std::vector<ubo::PredictiveMoment> moments = model.predict(x);
  const int m = static_cast<int>(moments.size());
  double sum = 0.0, sum2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    const ubo::PredictiveMoment& mom =
        moments[rng.uniform_index(static_cast<std::uint64_t>(m))];
    const double draw = mom.mean + std::sqrt(mom.variance) * rng.normal();
    const double imp = std::max(0.0, draw - y_best);
    sum += imp;
    sum2 += imp * imp;
  }
  McEstimate est;
  est.mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - est.mean * est.mean);
  est.standard_error = std::sqrt(var / samples);
  return est;
}

// Uniform-grid maximization oracle, points_per_dim^d evaluations.
inline double grid_max(const std::function<double(const Vector&)>& f, int d,
                       int points_per_dim) {
  std::vector<int> idx(d, 0);
  Vector x(d);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    for (int j = 0; j < d; ++j)
      x(j) = (idx[j] + 0.5) / points_per_dim;
    best = std::max(best, f(x));
    int j = 0;
    while (j < d && ++idx[j] == points_per_dim) idx[j++] = 0;
    if (j == d) break;
  }
  return best;
}

// Brute-force halfspace enumeration: every plane through three points that
// has all other points on one side. Assumes general position (random data).
inline std::vector<Eigen::Vector4d> brute_halfspaces(
    const std::vector<Eigen::Vector3d>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<Eigen::Vector4d> planes;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Eigen::Vector3d normal =
            (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        const double len = normal.norm();
        if (len < 1e-12) continue;
        normal /= len;
        const double offset = normal.dot(pts[i]);
        double lo = 0.0, hi = 0.0;
        for (int q = 0; q < n; ++q) {
          const double side = normal.dot(pts[q]) - offset;
          lo = std::min(lo, side);
          hi = std::max(hi, side);
        }
        constexpr double kTol = 1e-10;
        if (hi <= kTol) planes.emplace_back(normal.x(), normal.y(), normal.z(), offset);
        else if (lo >= -kTol)
          planes.emplace_back(-normal.x(), -normal.y(), -normal.z(), -offset);
      }
    }
  }
  return planes;
}

// Rejection-sampling hull volume over the bounding box of the points.
inline double mc_hull_volume(const std::vector<Eigen::Vector3d>& pts,
                             int samples, ubo::Rng& rng) {
  const std::vector<Eigen::Vector4d> planes = brute_halfspaces(pts);
  Eigen::Vector3d lo = pts.front(), hi = pts.front();
  for (const Eigen::Vector3d& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Eigen::Vector3d span = hi - lo;
  const double box_volume = span.x() * span.y() * span.z();
  int inside = 0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::Vector3d q(lo.x() + span.x() * rng.uniform(),
                            lo.y() + span.y() * rng.uniform(),
                            lo.z() + span.z() * rng.uniform());
    bool ok = true;
    for (const Eigen::Vector4d& plane : planes) {
      if (plane.head<3>().dot(q) > plane(3) + 1e-12) {
        ok = false;
        break;
      }
    }
    inside += ok ? 1 : 0;
  }
  return box_volume * inside / samples;
}

inline Vector make_point(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double value : values) v(i++) = value;
  return v;
}

}  // namespace testsupport
