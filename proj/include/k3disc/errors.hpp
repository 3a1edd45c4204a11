#pragma once

#include <stdexcept>
#include <string>

namespace k3disc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different ring contexts, or a variable is unknown.
class ContextError : public Error {
 public:
  using Error::Error;
};

/// Exact division left a nonzero remainder.
class NotDivisibleError : public Error {
 public:
  using Error::Error;
};

/// An operation is not defined on its inputs (e.g. gcd(0, 0)).
class UndefinedError : public Error {
 public:
  using Error::Error;
};

/// Weighted degree of the zero polynomial.
class DegreeUndefinedError : public Error {
 public:
  using Error::Error;
};

/// Every randomized trial hit an unlucky zero.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// Modular reconstruction failed its verification point.
class NeedsMorePointsError : public Error {
 public:
  using Error::Error;
};

/// Interpolation nodes collide (too many points for the field).
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Order triple matching no row of the Kodaira table.
class InconsistentOrdersError : public Error {
 public:
  using Error::Error;
};

class InvalidDiagramError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

/// A quantity that is an identity by construction turned out false.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace k3disc
