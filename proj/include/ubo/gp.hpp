#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <vector>

#include "ubo/rng.hpp"

namespace ubo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Kernel hyperparameters in log space: one lengthscale per input dimension
/// plus the signal variance sigma_f^2. Inputs live on the unit hypercube, so
/// the lengthscales are unitless.
struct KernelHyperparams {
  Vector log_lengthscales;
  double log_signal_variance = 0.0;

  int dim() const { return static_cast<int>(log_lengthscales.size()); }
  Vector lengthscales() const { return log_lengthscales.array().exp(); }
  double signal_variance() const { return std::exp(log_signal_variance); }

  static KernelHyperparams isotropic(int dim, double lengthscale,
                                     double signal_variance = 1.0);
};

/// Queries and outcomes gathered so far. Rows of X are points in [0,1]^d.
struct ObservationSet {
  Matrix X;
  Vector y;

  ObservationSet() : X(0, 0), y(0) {}
  ObservationSet(Matrix x_in, Vector y_in);

  int size() const { return static_cast<int>(y.size()); }
  int dim() const { return static_cast<int>(X.cols()); }
  void append(const Vector& x, double outcome);
};

struct PredictiveMoment {
  double mean = 0.0;
  double variance = 0.0;
};

/// Zero-mean GP posterior conditioned on a dataset, one Gram factorization
/// per hyperparameter sample. The predictive distribution at a point is the
/// equally weighted mixture of the per-sample Gaussians. Immutable after
/// fit(); safe to share across threads.
class GPModel {
 public:
  GPModel() = default;

  bool fitted() const { return !factors_.empty(); }
  const ObservationSet& dataset() const { return data_; }
  const std::vector<KernelHyperparams>& theta_samples() const { return thetas_; }
  double noise_variance() const { return noise_variance_; }
  int num_theta_samples() const { return static_cast<int>(thetas_.size()); }

  /// Mixture components (mean_i, variance_i) at x, one per theta sample.
  /// Variances are clamped to >= 0.
  std::vector<PredictiveMoment> predict(const Vector& x) const;

  /// Batched predict: moments for each row of `points` (rows are points).
  /// means/variances come back as (#points x m). One Gram solve per theta
  /// for the whole batch, which is what makes UEI affordable.
  void predict_batch(const Matrix& points, Matrix& means,
                     Matrix& variances) const;

  /// Means only, (#points x m). Used by the unscented outcome where the
  /// variance is never consumed.
  Matrix predict_means(const Matrix& points) const;

  /// Max-norm relative error of L L^T against the (jittered) Gram matrix it
  /// factorizes; exposed so tests can assert the 1e-8 reconstruction bound.
  double factorization_error(std::size_t theta_index) const;
  double applied_jitter(std::size_t theta_index) const;

  friend GPModel fit(const ObservationSet& data,
                     std::vector<KernelHyperparams> thetas,
                     double noise_variance);

 private:
  struct ThetaFactor {
    Vector inv_lengthscales;
    double signal_variance = 1.0;
    Matrix scaled_x;  // X * diag(1/l), cached for fast kernel vectors
    Eigen::LLT<Matrix> llt;
    Matrix gram_inverse;  // dense K^{-1}; batched variance is one GEMM
    Vector alpha;         // K^{-1} y
    double jitter = 0.0;
  };

  void kernel_vector_batch(const ThetaFactor& f, const Matrix& scaled_points,
                           Matrix& out) const;
  void check_fitted() const;

  ObservationSet data_;
  std::vector<KernelHyperparams> thetas_;
  double noise_variance_ = 0.0;
  std::vector<ThetaFactor> factors_;
};

/// Matern-5/2 covariance with per-dimension lengthscales:
///   k(a,b) = sf2 * (1 + sqrt(5) r + 5 r^2 / 3) * exp(-sqrt(5) r),
///   r^2 = sum_j ((a_j - b_j) / l_j)^2.
double matern52(const Vector& a, const Vector& b,
                const KernelHyperparams& theta);

/// Builds and factorizes K_i = k_i(X,X) + I * noise_variance for every theta
/// sample. Factorization failures are repaired by adding diagonal jitter
/// starting at 1e-10 and escalating by x10 up to 1e-4; past that a
/// NumericalError carrying the failing theta index is thrown.
GPModel fit(const ObservationSet& data, std::vector<KernelHyperparams> thetas,
            double noise_variance);

/// log p(y | X, theta) of the zero-mean GP plus the log hyperprior density.
/// Priors: log l_j ~ Normal(log 0.2, 1), log sf2 ~ Normal(0, 1). This is the
/// slice-sampling target.
double log_marginal_likelihood(const ObservationSet& data,
                               const KernelHyperparams& theta,
                               double noise_variance);

}  // namespace ubo
