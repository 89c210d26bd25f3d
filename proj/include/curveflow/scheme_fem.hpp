#pragma once

// Mass-lumped piecewise linear finite elements, written per vertex:
//
//   (q_j + q_{j+1}) / 2 * v_j = tau_{j+1} - tau_j - f(l_h) / 2 * perp(x_{j+1} - x_{j-1})
//
// The fully discrete step keeps the stiffness and the forcing term implicit
// with the weights q and f frozen at the previous level, which couples the
// two coordinates through perp.

#include <span>
#include <vector>

#include "curveflow/cyclic_linalg.hpp"
#include "curveflow/forcing.hpp"
#include "curveflow/geometry.hpp"
#include "curveflow/step_report.hpp"

namespace curveflow {

inline std::vector<Vec2> fem_velocity(const GridCurve& curve, const ForceSpec& spec) {
  const std::size_t n = curve.size();
  const auto q = edge_lengths(curve);
  const auto t = edge_tangents(curve);
  double l = 0.0;
  for (double qj : q) l += qj;
  const double f = force(spec, l);

  std::vector<Vec2> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jp = (j + 1) % n;
    const auto sj = static_cast<std::ptrdiff_t>(j);
    const Vec2 chord = curve[sj + 1] - curve[sj - 1];
    v[j] = (2.0 / (q[j] + q[jp])) * (t[jp] - t[j] - 0.5 * f * perp(chord));
  }
  return v;
}

struct BlockSystem {
  BlockCyclicTridiag matrix;
  std::vector<Vec2> rhs;
};

inline BlockSystem assemble_fem_step(const GridCurve& curve, double tau, const ForceSpec& spec) {
  detail::require_positive_step(tau);
  const std::size_t n = curve.size();
  const auto q = edge_lengths(curve);
  double l = 0.0;
  for (double qj : q) l += qj;
  const double f = force(spec, l);
  const Mat2 rot = Mat2::rotation90();

  BlockSystem sys{BlockCyclicTridiag(n), std::vector<Vec2>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jp = (j + 1) % n;
    const double mass = (q[j] + q[jp]) / (2.0 * tau);
    sys.matrix.diag[j] = Mat2::scalar(mass + 1.0 / q[j] + 1.0 / q[jp]);
    sys.matrix.sup[j] = Mat2::scalar(-1.0 / q[jp]) + (0.5 * f) * rot;
    sys.matrix.sub[j] = Mat2::scalar(-1.0 / q[j]) - (0.5 * f) * rot;
    sys.rhs[j] = mass * curve[static_cast<std::ptrdiff_t>(j)];
  }
  return sys;
}

inline StepReport fem_step(const GridCurve& curve, double tau, const ForceSpec& spec) {
  const BlockSystem sys = assemble_fem_step(curve, tau, spec);
  SolveDiagnostics dg;
  auto next = solve_block_cyclic_tridiag(sys.matrix, sys.rhs, &dg);
  const double res = cyclic_residual<Mat2, Vec2>(sys.matrix, next, sys.rhs);
  return detail::finish_step(std::move(next), res, dg.diagonally_dominant);
}

}  // namespace curveflow
