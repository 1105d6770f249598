#ifndef PLURIKP_ERRORS_HPP
#define PLURIKP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plurikp {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (bad cell, missing vertex,
/// out-of-range dimension, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation hit the singular variety: a zero field value, a vanishing
/// denominator or a pole of the 3-form.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (cell strings, chain files, field files).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Corner values fell between the "on branch" and "clearly off branch"
/// thresholds, so no classification is reported.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// An internal algorithm produced a result that violates its own contract,
/// e.g. a flower decomposition that leaves a nonzero residual chain.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace plurikp

#endif  // PLURIKP_ERRORS_HPP
