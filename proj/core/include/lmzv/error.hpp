#pragma once

#include <stdexcept>
#include <string>

namespace lmzv {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (non-prime p, degree
/// out of range, mismatched alphabets, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The mathematical hypothesis of a check does not hold on its input, e.g.
/// a measure handed to the vanishing check is not in the four-term kernel.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configured desk-scale size cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace lmzv
