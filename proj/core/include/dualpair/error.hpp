#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dualpair {

/// Raised for malformed inputs: dimension mismatches, invalid specs, bad symmetries.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a time integrator fails (implicit solve divergence, non-finite state).
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::size_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Raised when reading or writing a file fails.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dualpair
