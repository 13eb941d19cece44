#pragma once

#include <stdexcept>
#include <string>

namespace ballasy {

// Precondition violation: dimension mismatch, boundary point, bad parameter range.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Admissible parameters that match no case of the estimate table.
struct UncoveredRegime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive integration could not reach its tolerance; carries the partial result.
struct QuadratureFailure : std::runtime_error {
  QuadratureFailure(const std::string& msg, double partial, double err, long evals)
      : std::runtime_error(msg), partial_value(partial), error_estimate(err), evaluations(evals) {}
  double partial_value;
  double error_estimate;
  long evaluations;
};

}  // namespace ballasy
