#pragma once

#include <stdexcept>
#include <string>

namespace tspp {

// bad user input: maps to exit code 2 in the CLI
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// caller broke a documented precondition (non-Hermitian input, ...)
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// a bound the algorithm relies on did not check out numerically
struct CertificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverNonConvergence : std::runtime_error {
  SolverNonConvergence(const std::string& what, double best)
      : std::runtime_error(what), best_residual(best) {}
  double best_residual;
};

}  // namespace tspp
