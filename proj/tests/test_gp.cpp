#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "support.hpp"
#include "ubo/errors.hpp"
#include "ubo/gp.hpp"

using namespace ubo;
using testsupport::make_point;

TEST_CASE("matern52 equals the signal variance at zero distance") {
  const KernelHyperparams theta = KernelHyperparams::isotropic(2, 0.2, 1.0);
  const Vector x = make_point({0.3, 0.7});
  CHECK(matern52(x, x, theta) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("matern52 is symmetric in its arguments") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform_index(3));
    const KernelHyperparams theta = testsupport::random_theta(d, rng);
    Vector a(d), b(d);
    for (int j = 0; j < d; ++j) {
      a(j) = rng.uniform();
      b(j) = rng.uniform();
    }
    CHECK(matern52(a, b, theta) == matern52(b, a, theta));
  }
}

TEST_CASE("matern52 matches the closed form at unit scaled distance") {
  const KernelHyperparams theta = KernelHyperparams::isotropic(1, 1.0, 1.0);
  // r = 1: high-precision evaluation of sf2 (1 + sqrt5 + 5/3) exp(-sqrt5).
  const long double sqrt5 = std::sqrt(5.0L);
  const double expected =
      static_cast<double>((1.0L + sqrt5 + 5.0L / 3.0L) * std::exp(-sqrt5));
  CHECK(matern52(make_point({0.0}), make_point({1.0}), theta) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("matern52 rejects mismatched dimensions") {
  const KernelHyperparams theta = KernelHyperparams::isotropic(2, 0.2);
  CHECK_THROWS_AS(matern52(make_point({0.1}), make_point({0.1, 0.2}), theta),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      matern52(make_point({0.1, 0.2, 0.3}), make_point({0.1, 0.2, 0.3}), theta),
      std::invalid_argument);
}

TEST_CASE("Gram matrices of random point sets are PSD before jitter") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform_index(3));
    const ObservationSet data = testsupport::random_dataset(25, d, rng);
    const KernelHyperparams theta = testsupport::random_theta(d, rng);
    Matrix gram(25, 25);
    for (int i = 0; i < 25; ++i)
      for (int j = 0; j < 25; ++j)
        gram(i, j) = matern52(data.X.row(i).transpose(),
                              data.X.row(j).transpose(), theta);
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("fit on a single point produces the 1x1 Gram sf2 + noise") {
  const double noise = 0.25;
  ObservationSet data(Matrix::Constant(1, 1, 0.4), Vector::Constant(1, 2.0));
  const KernelHyperparams theta = KernelHyperparams::isotropic(1, 0.2, 1.5);
  const GPModel model = fit(data, {theta}, noise);
  CHECK(model.factorization_error(0) < 1e-12);
  // mu at the training point is k K^{-1} y = sf2 / (sf2 + noise) * y.
  const auto moments = model.predict(make_point({0.4}));
  CHECK(moments[0].mean == doctest::Approx(1.5 / 1.75 * 2.0).epsilon(1e-12));
}

TEST_CASE("fit factorizations reproduce the Gram matrix") {
  Rng rng(13);
  const ObservationSet data = testsupport::random_dataset(20, 3, rng);
  std::vector<KernelHyperparams> thetas;
  for (int i = 0; i < 5; ++i) thetas.push_back(testsupport::random_theta(3, rng));
  const GPModel model = fit(data, thetas, 1e-8);
  for (std::size_t i = 0; i < thetas.size(); ++i)
    CHECK(model.factorization_error(i) < 1e-8);
}

TEST_CASE("fit survives duplicate rows through the jitter policy") {
  Matrix x(4, 2);
  x << 0.2, 0.3, 0.2, 0.3, 0.2, 0.3, 0.8, 0.1;
  Vector y(4);
  y << 1.0, 1.0, 1.0, -0.5;
  const ObservationSet data(x, y);
  const GPModel model = fit(data, {KernelHyperparams::isotropic(2, 0.2)}, 1e-8);
  CHECK(model.fitted());
  CHECK(model.applied_jitter(0) <= 1e-4);
}

TEST_CASE("fit preconditions") {
  CHECK_THROWS_AS(
      fit(ObservationSet(), {KernelHyperparams::isotropic(1, 0.2)}, 0.0),
      std::invalid_argument);
  ObservationSet data(Matrix::Constant(1, 1, 0.5), Vector::Constant(1, 1.0));
  CHECK_THROWS_AS(fit(data, {KernelHyperparams::isotropic(1, 0.2)}, -1.0),
                  std::invalid_argument);
}

TEST_CASE("predict interpolates exactly with zero observation noise") {
  Rng rng(14);
  const ObservationSet data = testsupport::random_dataset(8, 2, rng);
  const GPModel model = fit(data, {KernelHyperparams::isotropic(2, 0.3)}, 0.0);
  for (int i = 0; i < data.size(); ++i) {
    const auto moments = model.predict(data.X.row(i).transpose());
    CHECK(moments[0].mean == doctest::Approx(data.y(i)).epsilon(1e-8));
    CHECK(std::abs(moments[0].variance) < 1e-8);
  }
}

TEST_CASE("predict reverts to the zero-mean prior far from the data") {
  Matrix x(3, 1);
  x << 0.0, 0.05, 0.1;
  Vector y(3);
  y << 1.0, 1.2, 0.9;
  const ObservationSet data(x, y);
  const KernelHyperparams theta = KernelHyperparams::isotropic(1, 0.01, 2.0);
  const GPModel model = fit(data, {theta}, 1e-8);
  const auto moments = model.predict(make_point({1.0}));
  CHECK(std::abs(moments[0].mean) < 1e-10);
  CHECK(moments[0].variance == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("predict matches the dense-solve oracle") {
  Rng rng(15);
  const ObservationSet data = testsupport::random_dataset(15, 2, rng);
  std::vector<KernelHyperparams> thetas;
  for (int i = 0; i < 4; ++i) thetas.push_back(testsupport::random_theta(2, rng));
  const double noise = 1e-6;
  const GPModel model = fit(data, thetas, noise);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = make_point({rng.uniform(), rng.uniform()});
    const auto moments = model.predict(x);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      const auto oracle = testsupport::dense_predict(data, thetas[i], noise, x);
      CHECK(moments[i].mean == doctest::Approx(oracle.mean).epsilon(1e-8));
      CHECK(std::abs(moments[i].variance - std::max(0.0, oracle.variance)) <
            1e-8);
    }
  }
}

TEST_CASE("predictive variance never exceeds sf2 + noise at training inputs") {
  Rng rng(16);
  const ObservationSet data = testsupport::random_dataset(30, 2, rng);
  const KernelHyperparams theta = testsupport::random_theta(2, rng);
  const double noise = 1e-4;
  const GPModel model = fit(data, {theta}, noise);
  for (int i = 0; i < data.size(); ++i) {
    const auto moments = model.predict(data.X.row(i).transpose());
    CHECK(moments[0].variance <= theta.signal_variance() + noise + 1e-12);
  }
}

TEST_CASE("adding an observation shrinks the variance there") {
  Rng rng(17);
  ObservationSet data = testsupport::random_dataset(12, 2, rng);
  const KernelHyperparams theta = KernelHyperparams::isotropic(2, 0.25);
  const Vector x = make_point({0.42, 0.58});
  const GPModel before = fit(data, {theta}, 1e-6);
  const double var_before = before.predict(x)[0].variance;
  data.append(x, 0.3);
  const GPModel after = fit(data, {theta}, 1e-6);
  const double var_after = after.predict(x)[0].variance;
  CHECK(var_after <= var_before + 1e-12);
}

TEST_CASE("predict on an unfitted model is a state error") {
  GPModel model;
  CHECK_THROWS_AS(model.predict(make_point({0.5})), std::logic_error);
}

TEST_CASE("log marginal likelihood closed form at a single origin point") {
  ObservationSet data(Matrix::Constant(1, 1, 0.5), Vector::Constant(1, 0.0));
  const KernelHyperparams theta = KernelHyperparams::isotropic(1, 0.2, 1.0);
  // K = 1x1 unit Gram; the data-fit term vanishes at y = 0.
  const double log_prior =
      normal_logpdf(theta.log_signal_variance, 0.0, 1.0) +
      normal_logpdf(theta.log_lengthscales(0), std::log(0.2), 1.0);
  const double expected = -0.5 * kLogTwoPi + log_prior;
  CHECK(log_marginal_likelihood(data, theta, 0.0) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("log marginal likelihood matches the dense eigen-oracle") {
  Rng rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform_index(3));
    const ObservationSet data = testsupport::random_dataset(10, d, rng);
    const KernelHyperparams theta = testsupport::random_theta(d, rng);
    const double lml = log_marginal_likelihood(data, theta, 1e-6);
    const double oracle = testsupport::dense_log_marginal(data, theta, 1e-6);
    CHECK(lml == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("scaling outcomes strictly lowers the data-fit term") {
  Rng rng(19);
  const ObservationSet data = testsupport::random_dataset(6, 1, rng);
  ObservationSet scaled = data;
  scaled.y *= 10.0;
  const KernelHyperparams theta = KernelHyperparams::isotropic(1, 0.2);
  // Same X and theta: prior and log-det cancel in the difference.
  CHECK(log_marginal_likelihood(scaled, theta, 1e-4) <
        log_marginal_likelihood(data, theta, 1e-4));
}
