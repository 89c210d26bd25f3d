#pragma once

// Periodic (cyclic) tridiagonal solvers, scalar and 2x2-block.
//
// Row j of A x = r reads  sub[j] x_{j-1} + diag[j] x_j + sup[j] x_{j+1} = r_j
// with periodic indices, so sub[0] and sup[N-1] are the wrap-around corners.
// The corners are split off as a low-rank update A = B + U V^T, B is reduced
// by Thomas elimination in natural order, and the update is undone with the
// Sherman-Morrison (scalar) / Woodbury (block, rank 2) formula. No pivoting.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "curveflow/errors.hpp"
#include "curveflow/vec2.hpp"

namespace curveflow {

/// Relative pivot threshold for SingularSystem.
inline constexpr double kPivotTolerance = 1e-13;

template <class Block>
struct CyclicSystem {
  std::vector<Block> sub;
  std::vector<Block> diag;
  std::vector<Block> sup;

  CyclicSystem() = default;
  explicit CyclicSystem(std::size_t n) : sub(n), diag(n), sup(n) {}

  std::size_t size() const noexcept { return diag.size(); }
};

using CyclicTridiag = CyclicSystem<double>;
using BlockCyclicTridiag = CyclicSystem<Mat2>;

/// Optional by-products of a solve.
struct SolveDiagnostics {
  bool diagonally_dominant = true;
  /// Smallest pivot measure relative to its row scale.
  double min_relative_pivot = 0.0;
};

namespace detail {

template <class B>
struct BlockOps;

template <>
struct BlockOps<double> {
  static double identity() { return 1.0; }
  static double zero() { return 0.0; }
  static double inv(double a) { return 1.0 / a; }
  static double scale(double a) { return std::abs(a); }
  // Pivot measure and the power of the row scale it is compared against.
  static double pivot(double a) { return std::abs(a); }
  static constexpr int pivot_degree = 1;
  static double norm(double a) { return std::abs(a); }
  // 1 / |a^{-1}|, the smallest gain of a.
  static double min_gain(double a) { return std::abs(a); }
};

template <>
struct BlockOps<Mat2> {
  static Mat2 identity() { return Mat2::identity(); }
  static Mat2 zero() { return {}; }
  static Mat2 inv(const Mat2& a) { return inverse(a); }
  static double scale(const Mat2& a) { return a.max_abs(); }
  static double pivot(const Mat2& a) { return std::abs(a.det()); }
  static constexpr int pivot_degree = 2;
  static double norm(const Mat2& a) { return a.norm_inf(); }
  static double min_gain(const Mat2& a) {
    if (a.det() == 0.0) return 0.0;
    return 1.0 / inverse(a).norm_inf();
  }
};

inline double abs_max(double v) { return std::abs(v); }
inline double abs_max(const Vec2& v) { return std::max(std::abs(v.x), std::abs(v.y)); }
inline double abs_max(const Mat2& m) { return m.max_abs(); }

template <class Block>
double pivot_threshold(double row_scale) {
  double s = 1.0;
  for (int i = 0; i < BlockOps<Block>::pivot_degree; ++i) s *= row_scale;
  return kPivotTolerance * s;
}

// LU factors of the acyclic tridiagonal part.
template <class Block>
struct ThomasFactors {
  std::vector<Block> pivot_inv;  // M_i^{-1}
  std::vector<Block> upper;      // M_i^{-1} sup_i
  std::vector<Block> lower;      // sub_i
};

template <class Block>
ThomasFactors<Block> thomas_factor(std::span<const Block> sub, std::span<const Block> diag,
                                   std::span<const Block> sup, std::span<const double> row_scale,
                                   SolveDiagnostics& diag_out) {
  using Ops = BlockOps<Block>;
  const std::size_t n = diag.size();
  ThomasFactors<Block> f;
  f.pivot_inv.resize(n);
  f.upper.resize(n);
  f.lower.assign(sub.begin(), sub.end());
  double min_rel = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    Block m = diag[i];
    if (i > 0) m = m - sub[i] * f.upper[i - 1];
    const double thr = pivot_threshold<Block>(row_scale[i]);
    const double p = Ops::pivot(m);
    min_rel = std::min(min_rel, p / (thr / kPivotTolerance));
    if (!(p >= thr) || !std::isfinite(p)) {
      throw SingularSystem("pivot " + std::to_string(i) + " below tolerance in cyclic tridiagonal solve");
    }
    f.pivot_inv[i] = Ops::inv(m);
    f.upper[i] = (i + 1 < n) ? f.pivot_inv[i] * sup[i] : Ops::zero();
  }
  diag_out.min_relative_pivot = min_rel;
  return f;
}

template <class Block, class Rhs>
std::vector<Rhs> thomas_apply(const ThomasFactors<Block>& f, std::span<const Rhs> rhs) {
  const std::size_t n = rhs.size();
  std::vector<Rhs> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rhs r = rhs[i];
    if (i > 0) r = r - f.lower[i] * x[i - 1];
    x[i] = f.pivot_inv[i] * r;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] = x[i] - f.upper[i] * x[i + 1];
  return x;
}

}  // namespace detail

/// max_i |(A x)_i - r_i| over all components.
template <class Block, class Rhs>
double cyclic_residual(const CyclicSystem<Block>& a, std::span<const Rhs> x, std::span<const Rhs> rhs) {
  const std::size_t n = a.size();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rhs& xm = x[(i + n - 1) % n];
    const Rhs& xp = x[(i + 1) % n];
    const Rhs ax = a.sub[i] * xm + a.diag[i] * x[i] + a.sup[i] * xp;
    r = std::max(r, detail::abs_max(ax - rhs[i]));
  }
  return r;
}

/// Row-wise strict diagonal dominance (block rows measured in the infinity norm).
template <class Block>
bool is_diagonally_dominant(const CyclicSystem<Block>& a) {
  using Ops = detail::BlockOps<Block>;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(Ops::min_gain(a.diag[i]) > Ops::norm(a.sub[i]) + Ops::norm(a.sup[i]))) return false;
  }
  return true;
}

/// Solves A x = rhs for a cyclic tridiagonal A with scalar or 2x2 blocks.
/// Each right-hand side entry may be a scalar, a plane vector, or a block.
template <class Block, class Rhs>
std::vector<Rhs> solve_cyclic(const CyclicSystem<Block>& a, std::span<const Rhs> rhs,
                              SolveDiagnostics* diagnostics = nullptr) {
  using Ops = detail::BlockOps<Block>;
  const std::size_t n = a.size();
  if (n < 3 || a.sub.size() != n || a.sup.size() != n) {
    throw InvalidArgument("cyclic system needs N >= 3 and consistent band sizes");
  }
  if (rhs.size() != n) throw SizeMismatch("right-hand side size does not match the cyclic system");

  SolveDiagnostics local;
  SolveDiagnostics& dg = diagnostics ? *diagnostics : local;
  dg.diagonally_dominant = is_diagonally_dominant(a);

  std::vector<double> row_scale(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_scale[i] = std::max({Ops::scale(a.sub[i]), Ops::scale(a.diag[i]), Ops::scale(a.sup[i])});
    if (!(row_scale[i] > 0.0)) throw SingularSystem("row " + std::to_string(i) + " of the cyclic system is zero");
  }

  const Block& top_right = a.sub[0];        // A(0, N-1)
  const Block& bottom_left = a.sup[n - 1];  // A(N-1, 0)

  Block gamma = -a.diag[0];
  if (!(Ops::pivot(gamma) >= detail::pivot_threshold<Block>(row_scale[0]))) {
    gamma = -row_scale[0] * Ops::identity();
  }
  const Block gamma_inv = Ops::inv(gamma);
  const Block v_last = gamma_inv * top_right;  // last block of V^T

  std::vector<Block> d(a.diag);
  d[0] = d[0] - gamma;
  d[n - 1] = d[n - 1] - bottom_left * v_last;

  std::vector<Block> sub(a.sub);
  std::vector<Block> sup(a.sup);
  sub[0] = Ops::zero();
  sup[n - 1] = Ops::zero();

  const auto factors = detail::thomas_factor<Block>(sub, d, sup, row_scale, dg);

  const std::vector<Rhs> y = detail::thomas_apply<Block, Rhs>(factors, rhs);

  std::vector<Block> u(n, Ops::zero());
  u[0] = gamma;
  u[n - 1] = bottom_left;
  const std::vector<Block> z = detail::thomas_apply<Block, Block>(factors, std::span<const Block>(u));

  const Rhs vty = y[0] + v_last * y[n - 1];
  const Block capacitance = Ops::identity() + z[0] + v_last * z[n - 1];
  const double cap_scale = std::max(1.0, Ops::scale(capacitance));
  if (!(Ops::pivot(capacitance) >= detail::pivot_threshold<Block>(cap_scale))) {
    throw SingularSystem("cyclic correction is singular");
  }
  const Rhs w = Ops::inv(capacitance) * vty;

  std::vector<Rhs> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - z[i] * w;
  return x;
}

inline std::vector<double> solve_cyclic_tridiag(const CyclicTridiag& a, std::span<const double> rhs,
                                                SolveDiagnostics* diagnostics = nullptr) {
  return solve_cyclic<double, double>(a, rhs, diagnostics);
}

inline std::vector<Vec2> solve_block_cyclic_tridiag(const BlockCyclicTridiag& a, std::span<const Vec2> rhs,
                                                    SolveDiagnostics* diagnostics = nullptr) {
  return solve_cyclic<Mat2, Vec2>(a, rhs, diagnostics);
}

}  // namespace curveflow
