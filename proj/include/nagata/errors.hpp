#ifndef NAGATA_ERRORS_HPP
#define NAGATA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nagata {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input shape (non-square matrix, bad file schema).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the operation's precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Exact computation refused because the instance exceeds a size budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied data violates a stated contract (e.g. multiplicity of an input covering).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Indicates a bug in a construction.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// A numeric certification (bound check) failed; carries the witness in the message.
class CertificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace nagata

#endif  // NAGATA_ERRORS_HPP
