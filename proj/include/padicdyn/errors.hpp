#pragma once

#include <stdexcept>

namespace padicdyn {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An argument violates a precondition (bad prime, zero denominator, ...).
struct InvalidInput : Error {
  using Error::Error;
};

/// A digit-mode computation cannot certify a single significant digit.
struct PrecisionExhausted : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

struct NotASquare : Error {
  using Error::Error;
};

/// A Taylor expansion was requested on a disk containing a pole.
struct PoleTooClose : Error {
  using Error::Error;
};

/// An operation was invoked for parameters outside its regime.
struct WrongRegime : Error {
  using Error::Error;
};

/// Two interior samples of one ball mapped to different balls.
struct WellDefinednessViolation : Error {
  using Error::Error;
};

/// An iterative numeric scheme hit its iteration cap.
struct NonConvergence : Error {
  using Error::Error;
};

/// Consistency failure that cannot occur on valid inputs.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace padicdyn
