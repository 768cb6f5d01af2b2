#pragma once

#include <stdexcept>
#include <string>

namespace prunix {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (JSON, DIMACS, edge lists, weight strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed its configured size budget.
class LimitError : public Error {
 public:
  using Error::Error;
};

// The caller violated an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An invariant the theory guarantees did not hold; the input was not what
// it claimed to be.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace prunix
