#include "ubo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ubo/mathutil.hpp"

namespace ubo {

double expected_improvement_from_moments(const double* means,
                                         const double* variances,
                                         Eigen::Index m, double y_best) {
  double ei = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double gain = means[i] - y_best;
    const double sigma = std::sqrt(std::max(0.0, variances[i]));
    double term;
    if (sigma <= 0.0) {
      term = std::max(0.0, gain);
    } else {
      const double z = gain / sigma;
      term = gain * normal_cdf(z) + sigma * normal_pdf(z);
    }
    ei += std::max(0.0, term);
  }
  return ei;
}

double expected_improvement(const GPModel& model, const Vector& x,
                            double y_best) {
  const std::vector<PredictiveMoment> moments = model.predict(x);
  double ei = 0.0;
  for (const PredictiveMoment& mom : moments)
    ei += expected_improvement_from_moments(&mom.mean, &mom.variance, 1, y_best);
  return ei;
}

Incumbent best_observed_incumbent(const ObservationSet& data) {
  if (data.size() < 1)
    throw std::logic_error("best_observed_incumbent: empty dataset");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < data.y.size(); ++i)
    if (data.y(i) > data.y(best)) best = i;
  return {data.X.row(best).transpose(), data.y(best),
          IncumbentKind::kBestObserved, best};
}

namespace {

// DIRECT bookkeeping. Cells are axis-aligned boxes from repeated trisection
// of the unit cube; side length along dim j is 3^-splits[j]. We minimize
// g = -acq internally.
struct Cell {
  Vector center;
  std::vector<int> splits;
  double value = 0.0;
  double size = 0.0;  // center-to-vertex distance
};

double cell_size(const std::vector<int>& splits) {
  double s2 = 0.0;
  for (int t : splits) s2 += std::pow(9.0, -t);
  return 0.5 * std::sqrt(s2);
}

constexpr double kJonesEps = 1e-4;

// Classic potentially-optimal-cell selection: per size class keep the best
// cell, then test the lower convex hull / epsilon conditions.
std::vector<std::size_t> potentially_optimal(const std::vector<Cell>& cells,
                                             double g_min) {
  std::map<double, std::size_t> best_per_size;  // size -> cell index
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto [it, inserted] = best_per_size.try_emplace(cells[i].size, i);
    if (!inserted && cells[i].value < cells[it->second].value) it->second = i;
  }

  std::vector<std::pair<double, std::size_t>> classes(best_per_size.begin(),
                                                      best_per_size.end());
  std::vector<std::size_t> selected;
  const double threshold = g_min - kJonesEps * std::abs(g_min);
  for (std::size_t j = 0; j < classes.size(); ++j) {
    const double sj = classes[j].first;
    const double gj = cells[classes[j].second].value;
    double k_lo = 0.0;
    double k_hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (i == j) continue;
      const double si = classes[i].first;
      const double gi = cells[classes[i].second].value;
      const double slope = (gj - gi) / (sj - si);
      if (si < sj)
        k_lo = std::max(k_lo, slope);
      else
        k_hi = std::min(k_hi, slope);
    }
    if (k_lo > k_hi) continue;
    if (std::isfinite(k_hi) && gj - k_hi * sj > threshold) continue;
    selected.push_back(classes[j].second);
  }
  // Largest cells first so division order is stable.
  std::sort(selected.begin(), selected.end(), [&](std::size_t a, std::size_t b) {
    if (cells[a].size != cells[b].size) return cells[a].size > cells[b].size;
    return a < b;
  });
  return selected;
}

}  // namespace

Vector maximize_acquisition(const ScalarField& acq, int dim, long budget) {
  if (dim < 1) throw std::invalid_argument("maximize_acquisition: dim < 1");
  if (budget < (1L << dim) + 1)
    throw std::invalid_argument("maximize_acquisition: budget below 2^d + 1");

  long evals = 0;
  Vector best_x;
  double best_g = std::numeric_limits<double>::infinity();
  auto g = [&](const Vector& x) {
    ++evals;
    const double v = -acq(x);
    if (v < best_g) {
      best_g = v;
      best_x = x;
    }
    return v;
  };

  std::vector<Cell> cells;
  {
    Cell root;
    root.center = Vector::Constant(dim, 0.5);
    root.splits.assign(dim, 0);
    root.size = cell_size(root.splits);
    root.value = g(root.center);
    cells.push_back(std::move(root));
  }

  bool exhausted = false;
  while (!exhausted && evals < budget) {
    const std::vector<std::size_t> selected = potentially_optimal(cells, best_g);
    for (std::size_t ci : selected) {
      const int t_min =
          *std::min_element(cells[ci].splits.begin(), cells[ci].splits.end());
      std::vector<int> long_dims;
      for (int j = 0; j < dim; ++j)
        if (cells[ci].splits[j] == t_min) long_dims.push_back(j);

      // Probe both offsets along every longest side first.
      struct Probe {
        int dim;
        double w;  // min of the two values, drives split order
        Vector lo_center, hi_center;
        double lo_value, hi_value;
      };
      std::vector<Probe> probes;
      for (int j : long_dims) {
        if (evals + 2 > budget) {
          exhausted = true;
          break;
        }
        const double delta = std::pow(3.0, -(t_min + 1));
        Probe probe;
        probe.dim = j;
        probe.lo_center = cells[ci].center;
        probe.lo_center(j) -= delta;
        probe.hi_center = cells[ci].center;
        probe.hi_center(j) += delta;
        probe.lo_value = g(probe.lo_center);
        probe.hi_value = g(probe.hi_center);
        probe.w = std::min(probe.lo_value, probe.hi_value);
        probes.push_back(std::move(probe));
      }
      std::stable_sort(probes.begin(), probes.end(),
                       [](const Probe& a, const Probe& b) { return a.w < b.w; });

      // Best dimension gets the coarsest children: split in ascending-w order.
      for (const Probe& probe : probes) {
        cells[ci].splits[probe.dim] += 1;
        Cell lo{probe.lo_center, cells[ci].splits, probe.lo_value, 0.0};
        Cell hi{probe.hi_center, cells[ci].splits, probe.hi_value, 0.0};
        lo.size = hi.size = cell_size(lo.splits);
        cells.push_back(std::move(lo));
        cells.push_back(std::move(hi));
      }
      cells[ci].size = cell_size(cells[ci].splits);
      if (exhausted) break;
    }
    if (selected.empty()) break;
  }

  // Local refinement; these evaluations are on top of the DIRECT budget.
  Vector x = best_x;
  double gx = best_g;
  constexpr int kMaxSweeps = 2000;
  int sweeps = 0;
  for (double step = 0.05; step >= 1e-4 && sweeps < kMaxSweeps; ++sweeps) {
    bool moved = false;
    for (int j = 0; j < dim; ++j) {
      for (double sign : {+1.0, -1.0}) {
        Vector cand = x;
        cand(j) = clamp01(x(j) + sign * step);
        if (cand(j) == x(j)) continue;
        const double v = -acq(cand);
        if (v < gx) {
          gx = v;
          x = cand;
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return x;
}

Matrix latin_hypercube(int p, int dim, Rng& rng) {
  if (p < 1) throw std::invalid_argument("latin_hypercube: p < 1");
  if (dim < 1) throw std::invalid_argument("latin_hypercube: dim < 1");
  Matrix points(p, dim);
  std::vector<int> perm(p);
  for (int j = 0; j < dim; ++j) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = p - 1; i > 0; --i) {
      const int k = static_cast<int>(rng.uniform_index(i + 1));
      std::swap(perm[i], perm[k]);
    }
    for (int i = 0; i < p; ++i)
      points(i, j) = (perm[i] + rng.uniform()) / p;
  }
  return points;
}

}  // namespace ubo
