#include "ubo/gp.hpp"

#include <cmath>
#include <stdexcept>

#include "ubo/errors.hpp"
#include "ubo/mathutil.hpp"

namespace ubo {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;
constexpr double kJitterStart = 1e-10;
constexpr double kJitterMax = 1e-4;

// Hyperprior for the slice-sampling target; see log_marginal_likelihood.
constexpr double kLogLengthscalePriorMean = -1.6094379124341003;  // log 0.2
constexpr double kLogLengthscalePriorStd = 1.0;
constexpr double kLogSignalVarPriorMean = 0.0;
constexpr double kLogSignalVarPriorStd = 1.0;

double matern52_from_r2(double r2, double signal_variance) {
  const double r = std::sqrt(r2);
  const double a = kSqrt5 * r;
  return signal_variance * (1.0 + a + 5.0 * r2 / 3.0) * std::exp(-a);
}

Matrix gram_matrix(const Matrix& scaled_x, double signal_variance) {
  const Eigen::Index n = scaled_x.rows();
  Matrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = signal_variance;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r2 = (scaled_x.row(i) - scaled_x.row(j)).squaredNorm();
      const double k = matern52_from_r2(r2, signal_variance);
      gram(i, j) = k;
      gram(j, i) = k;
    }
  }
  return gram;
}

// LLT with the jitter ladder. Returns the jitter that made it succeed.
double factorize_with_jitter(const Matrix& gram, double noise_variance,
                             std::size_t theta_index, Eigen::LLT<Matrix>& llt) {
  const Eigen::Index n = gram.rows();
  Matrix k = gram;
  k.diagonal().array() += noise_variance;
  llt.compute(k);
  if (llt.info() == Eigen::Success) return 0.0;
  for (double jitter = kJitterStart; jitter <= kJitterMax * 1.0000001;
       jitter *= 10.0) {
    Matrix repaired = k;
    repaired.diagonal().array() += jitter;
    llt.compute(repaired);
    if (llt.info() == Eigen::Success) return jitter;
  }
  throw NumericalError("Gram factorization failed for theta sample " +
                           std::to_string(theta_index) +
                           " after jitter escalation",
                       theta_index);
  (void)n;
}

}  // namespace

KernelHyperparams KernelHyperparams::isotropic(int dim, double lengthscale,
                                               double signal_variance) {
  KernelHyperparams theta;
  theta.log_lengthscales = Vector::Constant(dim, std::log(lengthscale));
  theta.log_signal_variance = std::log(signal_variance);
  return theta;
}

ObservationSet::ObservationSet(Matrix x_in, Vector y_in)
    : X(std::move(x_in)), y(std::move(y_in)) {
  if (X.rows() != y.size())
    throw std::invalid_argument("ObservationSet: X and y length mismatch");
}

void ObservationSet::append(const Vector& x, double outcome) {
  if (size() > 0 && x.size() != X.cols())
    throw std::invalid_argument("ObservationSet: appended point has wrong dimension");
  if (size() == 0 && X.cols() == 0) X.resize(0, x.size());
  X.conservativeResize(X.rows() + 1, Eigen::NoChange);
  X.row(X.rows() - 1) = x.transpose();
  y.conservativeResize(y.size() + 1);
  y(y.size() - 1) = outcome;
}

double matern52(const Vector& a, const Vector& b,
                const KernelHyperparams& theta) {
  if (a.size() != b.size() || a.size() != theta.log_lengthscales.size())
    throw std::invalid_argument("matern52: dimension mismatch");
  const Vector inv_l = (-theta.log_lengthscales).array().exp();
  const double r2 = ((a - b).array() * inv_l.array()).matrix().squaredNorm();
  return matern52_from_r2(r2, theta.signal_variance());
}

GPModel fit(const ObservationSet& data, std::vector<KernelHyperparams> thetas,
            double noise_variance) {
  if (data.size() < 1) throw std::invalid_argument("fit: empty dataset");
  if (thetas.empty()) throw std::invalid_argument("fit: no hyperparameter samples");
  if (noise_variance < 0.0)
    throw std::invalid_argument("fit: negative noise variance");

  GPModel model;
  model.data_ = data;
  model.noise_variance_ = noise_variance;
  model.factors_.reserve(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const KernelHyperparams& theta = thetas[i];
    if (theta.dim() != data.dim())
      throw std::invalid_argument("fit: theta dimension mismatch");
    GPModel::ThetaFactor f;
    f.inv_lengthscales = (-theta.log_lengthscales).array().exp();
    f.signal_variance = theta.signal_variance();
    f.scaled_x = data.X * f.inv_lengthscales.asDiagonal();
    const Matrix gram = gram_matrix(f.scaled_x, f.signal_variance);
    f.jitter = factorize_with_jitter(gram, noise_variance, i, f.llt);
    f.gram_inverse = f.llt.solve(Matrix::Identity(data.size(), data.size()));
    f.alpha = f.llt.solve(data.y);
    model.factors_.push_back(std::move(f));
  }
  model.thetas_ = std::move(thetas);
  return model;
}

void GPModel::check_fitted() const {
  if (!fitted()) throw std::logic_error("GPModel: predict on unfitted model");
}

void GPModel::kernel_vector_batch(const ThetaFactor& f,
                                  const Matrix& scaled_points,
                                  Matrix& out) const {
  const Eigen::Index n = f.scaled_x.rows();
  const Eigen::Index q = scaled_points.rows();
  out.resize(n, q);
  for (Eigen::Index p = 0; p < q; ++p) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double r2 = (f.scaled_x.row(j) - scaled_points.row(p)).squaredNorm();
      out(j, p) = matern52_from_r2(r2, f.signal_variance);
    }
  }
}

std::vector<PredictiveMoment> GPModel::predict(const Vector& x) const {
  Matrix means, variances;
  predict_batch(x.transpose(), means, variances);
  std::vector<PredictiveMoment> moments(thetas_.size());
  for (std::size_t i = 0; i < thetas_.size(); ++i)
    moments[i] = {means(0, static_cast<Eigen::Index>(i)),
                  variances(0, static_cast<Eigen::Index>(i))};
  return moments;
}

void GPModel::predict_batch(const Matrix& points, Matrix& means,
                            Matrix& variances) const {
  check_fitted();
  if (points.cols() != data_.dim())
    throw std::invalid_argument("predict: point dimension mismatch");
  const Eigen::Index q = points.rows();
  const Eigen::Index m = static_cast<Eigen::Index>(thetas_.size());
  means.resize(q, m);
  variances.resize(q, m);
  Matrix kvec;
  for (Eigen::Index i = 0; i < m; ++i) {
    const ThetaFactor& f = factors_[i];
    const Matrix scaled_points = points * f.inv_lengthscales.asDiagonal();
    kernel_vector_batch(f, scaled_points, kvec);  // n x q
    means.col(i) = kvec.transpose() * f.alpha;
    const Matrix solved = f.gram_inverse * kvec;  // K^{-1} k, n x q
    for (Eigen::Index p = 0; p < q; ++p) {
      const double var = f.signal_variance - kvec.col(p).dot(solved.col(p));
      variances(p, i) = std::max(0.0, var);
    }
  }
}

Matrix GPModel::predict_means(const Matrix& points) const {
  check_fitted();
  const Eigen::Index q = points.rows();
  const Eigen::Index m = static_cast<Eigen::Index>(thetas_.size());
  Matrix means(q, m);
  Matrix kvec;
  for (Eigen::Index i = 0; i < m; ++i) {
    const ThetaFactor& f = factors_[i];
    const Matrix scaled_points = points * f.inv_lengthscales.asDiagonal();
    kernel_vector_batch(f, scaled_points, kvec);
    means.col(i) = kvec.transpose() * f.alpha;
  }
  return means;
}

double GPModel::factorization_error(std::size_t theta_index) const {
  check_fitted();
  const ThetaFactor& f = factors_.at(theta_index);
  Matrix k = gram_matrix(f.scaled_x, f.signal_variance);
  k.diagonal().array() += noise_variance_ + f.jitter;
  const Matrix l = f.llt.matrixL();
  const double err = (l * l.transpose() - k).cwiseAbs().maxCoeff();
  return err / std::max(1.0, k.cwiseAbs().maxCoeff());
}

double GPModel::applied_jitter(std::size_t theta_index) const {
  check_fitted();
  return factors_.at(theta_index).jitter;
}

double log_marginal_likelihood(const ObservationSet& data,
                               const KernelHyperparams& theta,
                               double noise_variance) {
  if (data.size() < 1)
    throw std::invalid_argument("log_marginal_likelihood: empty dataset");
  if (theta.dim() != data.dim())
    throw std::invalid_argument("log_marginal_likelihood: dimension mismatch");

  const Vector inv_l = (-theta.log_lengthscales).array().exp();
  const Matrix scaled_x = data.X * inv_l.asDiagonal();
  const Matrix gram = gram_matrix(scaled_x, theta.signal_variance());
  Eigen::LLT<Matrix> llt;
  factorize_with_jitter(gram, noise_variance, 0, llt);

  const Vector alpha = llt.solve(data.y);
  const double data_fit = -0.5 * data.y.dot(alpha);
  const double log_det =
      Matrix(llt.matrixL()).diagonal().array().log().sum() * 2.0;
  const double n = static_cast<double>(data.size());

  double log_prior = normal_logpdf(theta.log_signal_variance,
                                   kLogSignalVarPriorMean,
                                   kLogSignalVarPriorStd);
  for (int j = 0; j < theta.dim(); ++j)
    log_prior += normal_logpdf(theta.log_lengthscales(j),
                               kLogLengthscalePriorMean,
                               kLogLengthscalePriorStd);

  return data_fit - 0.5 * log_det - 0.5 * n * kLogTwoPi + log_prior;
}

}  // namespace ubo
