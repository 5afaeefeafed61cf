#pragma once

#include <stdexcept>
#include <string>

namespace l1s {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition on a scalar parameter or count.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Point outside the domain of a system, or a system/expansion mismatch.
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnboundedSystem : public Error {
 public:
  using Error::Error;
};

/// Quadrature too coarse for the requested index set.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedClass : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace l1s
