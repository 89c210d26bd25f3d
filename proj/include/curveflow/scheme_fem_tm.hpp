#pragma once

// Finite elements with tangential motion. The time derivative is weighted by
//
//   M_j = alpha I + (1 - alpha) n_j n_j^T,   n_j = perp(tau_j),
//
// which leaves the normal velocity untouched and lets 0 < alpha < 1 add a
// tangential component that spreads the vertices along the curve.

#include <span>
#include <string>
#include <vector>

#include "curveflow/cyclic_linalg.hpp"
#include "curveflow/forcing.hpp"
#include "curveflow/geometry.hpp"
#include "curveflow/scheme_fem.hpp"
#include "curveflow/step_report.hpp"

namespace curveflow {

struct TangentialParams {
  double alpha = 1.0;

  explicit TangentialParams(double a = 1.0) : alpha(a) {
    if (!(a > 0.0 && a <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1], got " + std::to_string(a));
  }
};

inline Mat2 tangential_weight(const Vec2& normal, double alpha) {
  return alpha * Mat2::identity() + (1.0 - alpha) * Mat2::outer(normal);
}

/// Closed form of M^{-1}: (1/alpha)(I - n n^T) + n n^T.
inline Mat2 tangential_weight_inverse(const Vec2& normal, double alpha) {
  const Mat2 nn = Mat2::outer(normal);
  return (1.0 / alpha) * (Mat2::identity() - nn) + nn;
}

inline std::vector<Vec2> fem_tm_velocity(const GridCurve& curve, const ForceSpec& spec, TangentialParams params) {
  const std::size_t n = curve.size();
  const auto q = edge_lengths(curve);
  const auto nrm = edge_normals(curve);
  double l = 0.0;
  for (double qj : q) l += qj;
  const double f = force(spec, l);

  std::vector<Vec2> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jp = (j + 1) % n;
    const auto sj = static_cast<std::ptrdiff_t>(j);
    const Vec2 lap = (2.0 / (q[j] * q[j] + q[jp] * q[jp])) * (curve[sj + 1] - 2.0 * curve[sj] + curve[sj - 1]);
    v[j] = tangential_weight_inverse(nrm[j], params.alpha) * (lap - f * nrm[j]);
  }
  return v;
}

inline BlockSystem assemble_fem_tm_step(const GridCurve& curve, double tau, const ForceSpec& spec,
                                        TangentialParams params) {
  detail::require_positive_step(tau);
  const std::size_t n = curve.size();
  const auto q = edge_lengths(curve);
  const auto nrm = edge_normals(curve);
  double l = 0.0;
  for (double qj : q) l += qj;
  const double f = force(spec, l);

  BlockSystem sys{BlockCyclicTridiag(n), std::vector<Vec2>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jp = (j + 1) % n;
    const double c = 2.0 / (q[j] * q[j] + q[jp] * q[jp]);
    const Mat2 m = tangential_weight(nrm[j], params.alpha);
    sys.matrix.diag[j] = (1.0 / tau) * m + Mat2::scalar(2.0 * c);
    sys.matrix.sub[j] = Mat2::scalar(-c);
    sys.matrix.sup[j] = Mat2::scalar(-c);
    sys.rhs[j] = (1.0 / tau) * (m * curve[static_cast<std::ptrdiff_t>(j)]) - f * nrm[j];
  }
  return sys;
}

inline StepReport fem_tm_step(const GridCurve& curve, double tau, const ForceSpec& spec, TangentialParams params) {
  const BlockSystem sys = assemble_fem_tm_step(curve, tau, spec, params);
  SolveDiagnostics dg;
  auto next = solve_block_cyclic_tridiag(sys.matrix, sys.rhs, &dg);
  const double res = cyclic_residual<Mat2, Vec2>(sys.matrix, next, sys.rhs);
  return detail::finish_step(std::move(next), res, dg.diagonally_dominant);
}

}  // namespace curveflow
