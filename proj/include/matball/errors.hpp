#pragma once

#include <stdexcept>
#include <string>

namespace matball {

/// Base of every numerical failure raised by the library. The CLI maps any
/// NumericalError to exit status 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument sits on (or within tolerance of) a pole of Gamma or of a quotient built from it.
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The z -> 1-z connection formula for 2F1 is not usable (c-a-b near an integer)
/// and no fallback could reach the requested accuracy.
class DegenerateConnection : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An argument is outside the documented domain of an operation.
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CoincidentAnglesError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CoincidentError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Finite-difference probes would leave the matrix ball.
class MarginError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Parameters fall inside an excluded neighbourhood of an identity's forbidden set.
class GuardError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Torus grid too coarse to resolve the kernel at the requested radius.
class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace matball
