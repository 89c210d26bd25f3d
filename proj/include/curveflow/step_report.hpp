#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "curveflow/errors.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

/// An edge of the new level at or below this fraction of the perimeter
/// counts as collapsed.
inline constexpr double kMeshDegenerateFraction = 1e-12;

/// Result of one fully discrete time step.
struct StepReport {
  GridCurve curve_next;
  double min_edge = 0.0;
  /// |A x - b|_inf of the linear solve.
  double solver_residual = 0.0;
  /// False when the step matrix was not strictly diagonally dominant.
  bool diagonally_dominant = true;
};

namespace detail {

inline StepReport finish_step(std::vector<Vec2> next, double residual, bool dominant) {
  const std::size_t n = next.size();
  double l = 0.0;
  double qmin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const double q = norm(next[j] - next[(j + n - 1) % n]);
    l += q;
    qmin = std::min(qmin, q);
  }
  if (!std::isfinite(l) || !(qmin > kMeshDegenerateFraction * l)) {
    throw MeshDegenerate("time step collapsed an edge (min edge " + std::to_string(qmin) + ", perimeter " +
                         std::to_string(l) + ")");
  }
  return StepReport{GridCurve(std::move(next)), qmin, residual, dominant};
}

inline void require_positive_step(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("time step must be positive and finite");
}

}  // namespace detail

}  // namespace curveflow
