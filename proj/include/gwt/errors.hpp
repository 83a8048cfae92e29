#pragma once

#include <stdexcept>
#include <string>

namespace gwt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cell, face or region lies outside the grid it is used with.
class InvalidRegion : public Error {
 public:
  using Error::Error;
};

/// An operation was called with arguments that violate its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A set function was evaluated on a part outside its host.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A flux was requested for a source region outside the material universe.
class UnknownSource : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Generator parameters violate their invariants.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A time derivative was requested on a single-sample time grid.
class UnderdeterminedDerivative : public Error {
 public:
  using Error::Error;
};

/// Function tables do not describe a consistent structure.
class IllFormedModel : public Error {
 public:
  using Error::Error;
};

}  // namespace gwt
