#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "curveflow/errors.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Vec2& v) { return norm(v); }
inline double magnitude_squared(double v) { return v * v; }
inline double magnitude_squared(const Vec2& v) { return norm_squared(v); }

/// Values u_0..u_{N-1} on the uniform periodic grid xi_j = 2 pi j / N.
template <class T>
class GridFunction {
 public:
  explicit GridFunction(std::vector<T> values) : values_(std::move(values)) {
    if (values_.size() < 3) throw InvalidArgument("grid function needs N >= 3");
  }

  std::size_t size() const noexcept { return values_.size(); }
  double step() const noexcept { return 2.0 * std::numbers::pi / static_cast<double>(values_.size()); }
  std::span<const T> values() const noexcept { return values_; }
  const T& operator[](std::size_t j) const noexcept { return values_[j]; }

  /// Backward difference (u_j - u_{j-1}) / h, periodic.
  T backward_difference(std::size_t j) const noexcept {
    const std::size_t n = values_.size();
    return (values_[j] - values_[(j + n - 1) % n]) * (1.0 / step());
  }

 private:
  std::vector<T> values_;
};

template <class T>
double grid_l2(const GridFunction<T>& u) {
  double s = 0.0;
  for (const T& v : u.values()) s += magnitude_squared(v);
  return std::sqrt(u.step() * s);
}

template <class T>
double grid_h1(const GridFunction<T>& u) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += magnitude_squared(u[j]) + magnitude_squared(u.backward_difference(j));
  return std::sqrt(u.step() * s);
}

template <class T>
double grid_linf(const GridFunction<T>& u) {
  double m = 0.0;
  for (const T& v : u.values()) m = std::max(m, magnitude(v));
  return m;
}

/// Even-indexed vertices of a curve on the refined grid, i.e. its values on
/// the coarse grid with half as many nodes.
inline GridFunction<Vec2> restrict_fine(const GridCurve& fine) {
  if (fine.size() % 2 != 0 || fine.size() < 6) {
    throw SizeMismatch("fine curve must have 2N vertices with N >= 3, got " + std::to_string(fine.size()));
  }
  std::vector<Vec2> out(fine.size() / 2);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = fine[static_cast<std::ptrdiff_t>(2 * j)];
  return GridFunction<Vec2>(std::move(out));
}

/// coarse - restrict_fine(fine) as a grid function on the coarse grid.
inline GridFunction<Vec2> nodal_difference(const GridCurve& coarse, const GridCurve& fine) {
  if (fine.size() != 2 * coarse.size()) throw SizeMismatch("fine curve must have twice the coarse vertex count");
  std::vector<Vec2> d(coarse.size());
  for (std::size_t j = 0; j < d.size(); ++j) {
    d[j] = coarse[static_cast<std::ptrdiff_t>(j)] - fine[static_cast<std::ptrdiff_t>(2 * j)];
  }
  return GridFunction<Vec2>(std::move(d));
}

namespace detail {

// Difference of the two piecewise linear interpolants at the fine nodes.
inline std::vector<Vec2> interpolant_difference(const GridCurve& coarse, const GridCurve& fine) {
  if (fine.size() != 2 * coarse.size()) throw SizeMismatch("fine curve must have twice the coarse vertex count");
  std::vector<Vec2> d(fine.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto j = static_cast<std::ptrdiff_t>(i / 2);
    const Vec2 c = (i % 2 == 0) ? coarse[j] : 0.5 * (coarse[j] + coarse[j + 1]);
    d[i] = c - fine[static_cast<std::ptrdiff_t>(i)];
  }
  return d;
}

}  // namespace detail

/// ||I_h x_coarse - I_{h/2} x_fine||_{L^2(S^1)}, integrated exactly.
inline double pl_l2_diff(const GridCurve& coarse, const GridCurve& fine) {
  const auto d = detail::interpolant_difference(coarse, fine);
  const std::size_t m = d.size();
  const double hf = 2.0 * std::numbers::pi / static_cast<double>(m);
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = d[(i + m - 1) % m];
    const Vec2& b = d[i];
    s += norm_squared(a) + dot(a, b) + norm_squared(b);
  }
  return std::sqrt(std::max(0.0, hf * s / 3.0));
}

/// ||d||_{L^2} + ||d_xi||_{L^2} for d the difference of the interpolants.
inline double pl_h1_diff(const GridCurve& coarse, const GridCurve& fine) {
  const auto d = detail::interpolant_difference(coarse, fine);
  const std::size_t m = d.size();
  const double hf = 2.0 * std::numbers::pi / static_cast<double>(m);
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += norm_squared(d[i] - d[(i + m - 1) % m]);
  return pl_l2_diff(coarse, fine) + std::sqrt(s / hf);
}

struct BoundCheck {
  double lhs = 0.0;  // ||I_h g||^2_{H^1}
  double rhs = 0.0;  // ||g||^2_{H^1_G} (1 + h^2/6)
};

/// Both sides of ||I_h g||^2_{H^1} <= ||g||^2_{H^1_G} (1 + h^2 / 6).
inline BoundCheck h1g_bound_check(const GridFunction<double>& g) {
  const std::size_t n = g.size();
  const double h = g.step();
  double lhs = 0.0;
  double grid = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = g[(j + n - 1) % n];
    const double b = g[j];
    const double dg = g.backward_difference(j);
    lhs += h * (a * a + a * b + b * b) / 3.0 + h * dg * dg;
    grid += h * (b * b + dg * dg);
  }
  return {lhs, grid * (1.0 + h * h / 6.0)};
}

}  // namespace curveflow
