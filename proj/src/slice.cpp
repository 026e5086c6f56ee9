#include "ubo/slice.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ubo/errors.hpp"

namespace ubo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Keep the chain inside a sane log-space box so exp() cannot overflow.
constexpr double kLogLo = -10.0;
constexpr double kLogHi = 8.0;
constexpr int kMaxStepOut = 100;
constexpr int kMaxShrink = 100;
constexpr double kLogLengthscaleInit = -1.6094379124341003;  // log 0.2

KernelHyperparams unpack(const Vector& w) {
  KernelHyperparams theta;
  const int d = static_cast<int>(w.size()) - 1;
  theta.log_lengthscales = w.head(d);
  theta.log_signal_variance = w(d);
  return theta;
}

}  // namespace

HyperparamSampler::HyperparamSampler(int dim, double noise_variance)
    : dim_(dim), noise_variance_(noise_variance), state_(dim + 1) {
  if (dim < 1) throw std::invalid_argument("HyperparamSampler: dim < 1");
  state_.head(dim).setConstant(kLogLengthscaleInit);
  state_(dim) = 0.0;
}

double HyperparamSampler::target(const ObservationSet& data,
                                 const Vector& w) const {
  if (w.minCoeff() < kLogLo || w.maxCoeff() > kLogHi) return kNegInf;
  try {
    return log_marginal_likelihood(data, unpack(w), noise_variance_);
  } catch (const NumericalError&) {
    return kNegInf;
  }
}

void HyperparamSampler::step(const ObservationSet& data, Rng& rng) {
  const int j = coord_;
  coord_ = (coord_ + 1) % (dim_ + 1);

  const double f0 = target(data, state_);
  const double level = f0 + std::log(1.0 - rng.uniform());  // log(u * f0)

  Vector probe = state_;
  const double x0 = state_(j);
  double lo = x0 - kStepWidth * rng.uniform();
  double hi = lo + kStepWidth;
  for (int k = 0; k < kMaxStepOut; ++k) {
    probe(j) = lo;
    if (target(data, probe) <= level) break;
    lo -= kStepWidth;
  }
  for (int k = 0; k < kMaxStepOut; ++k) {
    probe(j) = hi;
    if (target(data, probe) <= level) break;
    hi += kStepWidth;
  }

  for (int k = 0; k < kMaxShrink; ++k) {
    const double x1 = rng.uniform(lo, hi);
    probe(j) = x1;
    if (target(data, probe) > level) {
      state_(j) = x1;
      return;
    }
    if (x1 < x0)
      lo = x1;
    else
      hi = x1;
  }
  // Interval shrank onto x0; keep the current state.
}

std::vector<KernelHyperparams> HyperparamSampler::sample(
    const ObservationSet& data, int m, Rng& rng) {
  if (data.size() < 1)
    throw std::invalid_argument("sample_hyperparams: empty dataset");
  if (m < 1) throw std::invalid_argument("sample_hyperparams: m < 1");
  if (data.dim() != dim_)
    throw std::invalid_argument("sample_hyperparams: dimension mismatch");

  if (!warmed_) {
    for (int k = 0; k < kBurninSteps; ++k) step(data, rng);
    warmed_ = true;
  }
  std::vector<KernelHyperparams> samples;
  samples.reserve(m);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < kThinSteps; ++k) step(data, rng);
    samples.push_back(unpack(state_));
  }
  return samples;
}

std::vector<KernelHyperparams> sample_hyperparams(const ObservationSet& data,
                                                  int m, double noise_variance,
                                                  Rng& rng) {
  HyperparamSampler sampler(data.dim(), noise_variance);
  return sampler.sample(data, m, rng);
}

}  // namespace ubo
