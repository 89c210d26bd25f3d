#pragma once

#include <stdexcept>
#include <string>

namespace curveflow {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments: bad N, nonpositive time step, alpha out of range, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input curve violates the GridCurve invariants (zero-length edge, N < 3).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Adjacent edges are antiparallel, so the averaged tangent is undefined.
class CuspError : public Error {
 public:
  CuspError(std::size_t vertex, const std::string& what) : Error(what), vertex_(vertex) {}
  std::size_t vertex() const noexcept { return vertex_; }

 private:
  std::size_t vertex_;
};

class NonpositivePerimeter : public Error {
 public:
  using Error::Error;
};

/// A pivot of the elimination fell below the relative threshold.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// A time step produced an edge shorter than the degeneracy threshold.
class MeshDegenerate : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

/// The exact symmetric-difference computation could not be resolved. Carries
/// a grid-quadrature estimate of the same quantity.
class NumericalDegeneracy : public Error {
 public:
  NumericalDegeneracy(const std::string& what, double fallback) : Error(what), fallback_(fallback) {}
  double fallback_value() const noexcept { return fallback_; }

 private:
  double fallback_;
};

class NonpositiveError : public Error {
 public:
  using Error::Error;
};

}  // namespace curveflow
