#pragma once

#include <stdexcept>
#include <string>

namespace fermi {

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Evaluation at (or numerically on top of) a genuine singularity of a closed form.
class SingularPointError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Zero-norm state.
class DegenerateInputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Mode-sum data that cannot come from a single set of amplitudes.
class InconsistentAmplitudesError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class InvariantViolationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace fermi
