#pragma once

#include <stdexcept>
#include <string>

namespace polylab {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

class SingularPencil : public Error {
 public:
  using Error::Error;
};

class SingularDelta0 : public Error {
 public:
  using Error::Error;
};

/// Numerical nullity of the Macaulay matrix differs from the Bezout count
/// (roots at infinity, multiple roots, or a positive-dimensional variety).
class NullityMismatch : public Error {
 public:
  using Error::Error;
};

class BasisSingular : public Error {
 public:
  using Error::Error;
};

class EigenvectorDegenerate : public Error {
 public:
  using Error::Error;
};

class NotARoot : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

}  // namespace polylab
