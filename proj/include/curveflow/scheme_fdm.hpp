#pragma once

// Finite difference scheme: vertex velocity
//
//   v_j = 2 / (q_j + q_{j+1}) (tau_{j+1} - tau_j) - f(l_h) perp(tau_{j+1/2})
//
// and its backward Euler discretization, where the second difference is
// implicit with coefficients frozen at the previous level and the forcing
// term is explicit.

#include <span>
#include <vector>

#include "curveflow/cyclic_linalg.hpp"
#include "curveflow/forcing.hpp"
#include "curveflow/geometry.hpp"
#include "curveflow/step_report.hpp"

namespace curveflow {

inline std::vector<Vec2> fdm_velocity(const GridCurve& curve, const ForceSpec& spec) {
  const std::size_t n = curve.size();
  const auto q = edge_lengths(curve);
  const auto t = edge_tangents(curve);
  double l = 0.0;
  for (double qj : q) l += qj;
  const double f = force(spec, l);

  std::vector<Vec2> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jp = (j + 1) % n;
    v[j] = (2.0 / (q[j] + q[jp])) * (t[jp] - t[j]) - f * averaged_normal(t[j], t[jp], j);
  }
  return v;
}

/// The linear system of one FDM step: scalar matrix, vector right-hand side.
struct FdmSystem {
  CyclicTridiag matrix;
  std::vector<Vec2> rhs;
};

inline FdmSystem assemble_fdm_step(const GridCurve& curve, double tau, const ForceSpec& spec) {
  detail::require_positive_step(tau);
  const std::size_t n = curve.size();
  const auto q = edge_lengths(curve);
  const auto t = edge_tangents(curve);
  double l = 0.0;
  for (double qj : q) l += qj;
  const double f = force(spec, l);

  FdmSystem sys{CyclicTridiag(n), std::vector<Vec2>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jp = (j + 1) % n;
    const double a = 2.0 / (q[j] + q[jp]);
    sys.matrix.sub[j] = -a / q[j];
    sys.matrix.sup[j] = -a / q[jp];
    sys.matrix.diag[j] = 1.0 / tau + a / q[j] + a / q[jp];
    sys.rhs[j] = curve[static_cast<std::ptrdiff_t>(j)] / tau - f * averaged_normal(t[j], t[jp], j);
  }
  return sys;
}

inline StepReport fdm_step(const GridCurve& curve, double tau, const ForceSpec& spec) {
  const FdmSystem sys = assemble_fdm_step(curve, tau, spec);
  SolveDiagnostics dg;
  auto next = solve_cyclic<double, Vec2>(sys.matrix, sys.rhs, &dg);
  const double res = cyclic_residual<double, Vec2>(sys.matrix, next, sys.rhs);
  return detail::finish_step(std::move(next), res, dg.diagonally_dominant);
}

}  // namespace curveflow
