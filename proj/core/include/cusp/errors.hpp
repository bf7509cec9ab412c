#pragma once

#include <stdexcept>
#include <string>

namespace cusp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where a formula is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the image range of a map being inverted.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil straddles a sector seam of the cusp map.
class SeamError : public Error {
 public:
  using Error::Error;
};

/// Condenser masks are empty, overlapping or outside the domain.
class MaskError : public Error {
 public:
  using Error::Error;
};

/// A quadrature node produced a non-finite integrand value.
class NodeError : public Error {
 public:
  using Error::Error;
};

/// Too few partial integrals to run the convergence classifier.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace cusp
