#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "ubo/acquisition.hpp"
#include "ubo/mathutil.hpp"

using namespace ubo;
using testsupport::make_point;

TEST_CASE("expected improvement hand values") {
  double mean = 1.0, var = 1.0;
  // Phi(1) + phi(1)
  CHECK(expected_improvement_from_moments(&mean, &var, 1, 0.0) ==
        doctest::Approx(1.083316).epsilon(1e-5));
  mean = 0.5;
  var = 0.0;
  CHECK(expected_improvement_from_moments(&mean, &var, 1, 0.5) == 0.0);
  mean = 0.3;
  var = 1.0;
  // EI at mu = y_best is sigma * phi(0).
  CHECK(expected_improvement_from_moments(&mean, &var, 1, 0.3) ==
        doctest::Approx(0.398942).epsilon(1e-5));
}

TEST_CASE("expected improvement is nonnegative and monotone") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const double mean = rng.uniform(-2.0, 2.0);
    const double sigma = rng.uniform(0.01, 2.0);
    const double var = sigma * sigma;
    const double y_best = rng.uniform(-2.0, 2.0);
    const double ei = expected_improvement_from_moments(&mean, &var, 1, y_best);
    CHECK(ei >= 0.0);

    // Finite differences: nondecreasing in mu and in sigma.
    const double h = 1e-5;
    const double mean_up = mean + h;
    const double ei_mu =
        expected_improvement_from_moments(&mean_up, &var, 1, y_best);
    CHECK(ei_mu >= ei - 1e-6 * std::max(1.0, std::abs(ei)));
    const double var_up = (sigma + h) * (sigma + h);
    const double ei_sigma =
        expected_improvement_from_moments(&mean, &var_up, 1, y_best);
    CHECK(ei_sigma >= ei - 1e-6 * std::max(1.0, std::abs(ei)));
  }
}

TEST_CASE("expected improvement matches Monte Carlo under the mixture") {
  Rng rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform_index(2));
    const ObservationSet data = testsupport::random_dataset(12, d, rng);
    std::vector<KernelHyperparams> thetas;
    for (int i = 0; i < 3; ++i) thetas.push_back(testsupport::random_theta(d, rng));
    const GPModel model = fit(data, thetas, 1e-6);
    Vector x(d);
    for (int j = 0; j < d; ++j) x(j) = rng.uniform();
    const double y_best = data.y.maxCoeff() * rng.uniform(0.2, 1.0);

    const double ei = expected_improvement(model, x, y_best);
    const auto mc = testsupport::mc_expected_improvement(model, x, y_best,
                                                         100000, rng);
    // The closed form sums over components; the MC estimate averages them.
    CHECK(std::abs(ei / thetas.size() - mc.mean) <=
          3.0 * mc.standard_error + 1e-12);
  }
}

TEST_CASE("best observed incumbent picks the max, ties to lowest index") {
  Matrix x(3, 1);
  x << 0.1, 0.2, 0.3;
  Vector y(3);
  y << 0.1, 0.5, 0.3;
  const Incumbent inc = best_observed_incumbent(ObservationSet(x, y));
  CHECK(inc.index == 1);
  CHECK(inc.y_opt == 0.5);
  CHECK(inc.x_opt(0) == 0.2);
  CHECK(inc.kind == IncumbentKind::kBestObserved);

  Vector tie(2);
  tie << 0.5, 0.5;
  const Incumbent tied = best_observed_incumbent(
      ObservationSet(Matrix::Constant(2, 1, 0.4), tie));
  CHECK(tied.index == 0);

  const Incumbent single = best_observed_incumbent(
      ObservationSet(Matrix::Constant(1, 1, 0.9), Vector::Constant(1, -1.0)));
  CHECK(single.index == 0);
  CHECK(single.y_opt == -1.0);

  CHECK_THROWS_AS(best_observed_incumbent(ObservationSet()), std::logic_error);
}

TEST_CASE("best observed incumbent value is monotone under appends") {
  Rng rng(33);
  ObservationSet data(Matrix::Constant(1, 1, 0.5), Vector::Constant(1, 0.0));
  double previous = best_observed_incumbent(data).y_opt;
  for (int i = 0; i < 50; ++i) {
    data.append(make_point({rng.uniform()}), rng.normal());
    const double current = best_observed_incumbent(data).y_opt;
    CHECK(current >= previous);
    previous = current;
  }
}

TEST_CASE("maximizer finds a smooth interior optimum") {
  const auto acq = [](const Vector& x) {
    return -(x - Vector::Constant(x.size(), 0.5)).squaredNorm();
  };
  const Vector best = maximize_acquisition(acq, 2, 500);
  CHECK(std::abs(best(0) - 0.5) < 1e-3);
  CHECK(std::abs(best(1) - 0.5) < 1e-3);
}

TEST_CASE("maximizer reaches boundary optima") {
  const auto acq = [](const Vector& x) { return x(0); };
  const Vector best = maximize_acquisition(acq, 1, 100);
  CHECK(std::abs(best(0) - 1.0) < 1e-3);
}

TEST_CASE("maximizer is competitive with a dense grid on a 3-peak mixture") {
  const std::vector<Vector> centers = {make_point({0.2, 0.8, 0.4}),
                                       make_point({0.7, 0.3, 0.6}),
                                       make_point({0.5, 0.5, 0.9})};
  const std::vector<double> heights = {1.0, 0.8, 0.9};
  const std::vector<double> widths = {0.15, 0.1, 0.2};
  const auto acq = [&](const Vector& x) {
    double v = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i)
      v += heights[i] *
           std::exp(-(x - centers[i]).squaredNorm() / (2.0 * widths[i] * widths[i]));
    return v;
  };
  const Vector best = maximize_acquisition(acq, 3, 2000);
  const double grid_best = testsupport::grid_max(acq, 3, 100);
  CHECK(acq(best) >= 0.99 * grid_best);
}

TEST_CASE("maximizer is deterministic") {
  const auto acq = [](const Vector& x) {
    return std::sin(7.0 * x(0)) + std::cos(3.0 * x(1));
  };
  const Vector a = maximize_acquisition(acq, 2, 700);
  const Vector b = maximize_acquisition(acq, 2, 700);
  CHECK(a == b);
}

TEST_CASE("maximizer validates its budget precondition") {
  const auto acq = [](const Vector&) { return 0.0; };
  CHECK_THROWS_AS(maximize_acquisition(acq, 3, 8), std::invalid_argument);
}

TEST_CASE("latin hypercube stratifies every dimension") {
  Rng rng(34);
  const Matrix single = latin_hypercube(1, 4, rng);
  CHECK(single.rows() == 1);
  for (int j = 0; j < 4; ++j) {
    CHECK(single(0, j) >= 0.0);
    CHECK(single(0, j) < 1.0);
  }

  const int p = 20;
  const Matrix design = latin_hypercube(p, 3, rng);
  for (int j = 0; j < 3; ++j) {
    std::vector<int> bin_counts(p, 0);
    for (int i = 0; i < p; ++i) {
      const int bin = static_cast<int>(design(i, j) * p);
      REQUIRE(bin >= 0);
      REQUIRE(bin < p);
      ++bin_counts[bin];
    }
    for (int count : bin_counts) CHECK(count == 1);
  }
}

TEST_CASE("latin hypercube is deterministic under a fixed seed") {
  Rng rng_a(35), rng_b(35);
  CHECK(latin_hypercube(16, 2, rng_a) == latin_hypercube(16, 2, rng_b));
}
