#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace imexssp {

/// Invalid argument to a scheme factory or analysis routine.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The implicit system of a multistep step could not be solved.
class StepFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the integrator when the solution norm exceeds the blow-up threshold.
class BlowUp : public std::runtime_error {
 public:
  BlowUp(std::size_t step, double norm)
      : std::runtime_error("blow-up detected at step " + std::to_string(step)),
        step_(step),
        norm_(norm) {}

  std::size_t step() const noexcept { return step_; }
  double norm() const noexcept { return norm_; }

 private:
  std::size_t step_;
  double norm_;
};

}  // namespace imexssp
