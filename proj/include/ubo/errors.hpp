#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ubo {

/// Linear-algebra failure (non-PD Gram after the full jitter ladder, etc.).
/// Carries the index of the offending hyperparameter sample and, when raised
/// inside an optimization run, the iteration it happened at.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t theta_index)
      : std::runtime_error(what), theta_index_(theta_index) {}

  std::size_t theta_index() const { return theta_index_; }

  int iteration = -1;

 private:
  std::size_t theta_index_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ubo
