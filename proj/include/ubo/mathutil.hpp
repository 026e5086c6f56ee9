#pragma once

#include <algorithm>
#include <cmath>

namespace ubo {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLogTwoPi = 1.8378770664093454836;

/// Standard normal density.
inline double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
}

/// Standard normal CDF via erfc; accurate to ~1e-15 over the useful range.
inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

/// Log density of Normal(mu, sigma^2) at v.
inline double normal_logpdf(double v, double mu, double sigma) {
  const double z = (v - mu) / sigma;
  return -0.5 * z * z - std::log(sigma) - 0.5 * kLogTwoPi;
}

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

inline double sqr(double v) { return v * v; }

}  // namespace ubo
