#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "curveflow/errors.hpp"
#include "curveflow/vec2.hpp"

namespace curveflow {

/// Threshold on |tau_j + tau_{j+1}| below which two adjacent edges count as
/// antiparallel.
inline constexpr double kCuspEpsilon = 1e-10;

/// Closed polygon x_0, ..., x_{N-1} sampled on the uniform periodic parameter
/// grid xi_j = j h, h = 2 pi / N.
///
/// Edge j joins x_{j-1} to x_j (indices modulo N), so edge 0 is the closing
/// edge from x_{N-1} to x_0. Only vertices are stored; every edge quantity is
/// recomputed on demand.
class GridCurve {
 public:
  explicit GridCurve(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) {
      throw DegenerateInput("GridCurve needs at least 3 vertices, got " + std::to_string(vertices_.size()));
    }
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
      const Vec2& p = vertices_[j];
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw DegenerateInput("GridCurve vertex " + std::to_string(j) + " is not finite");
      }
      if (!(norm(p - (*this)[static_cast<std::ptrdiff_t>(j) - 1]) > 0.0)) {
        throw DegenerateInput("GridCurve edge " + std::to_string(j) + " has zero length");
      }
    }
  }

  std::size_t size() const noexcept { return vertices_.size(); }
  double param_step() const noexcept { return 2.0 * std::numbers::pi / static_cast<double>(vertices_.size()); }

  std::size_t wrap(std::ptrdiff_t j) const noexcept {
    const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
    return static_cast<std::size_t>(((j % n) + n) % n);
  }

  /// Periodic vertex access.
  const Vec2& operator[](std::ptrdiff_t j) const noexcept { return vertices_[wrap(j)]; }

  std::span<const Vec2> vertices() const noexcept { return vertices_; }

  /// x_j - x_{j-1}
  Vec2 edge(std::ptrdiff_t j) const noexcept { return (*this)[j] - (*this)[j - 1]; }

 private:
  std::vector<Vec2> vertices_;
};

/// q_j = |x_j - x_{j-1}|, j = 0..N-1.
inline std::vector<double> edge_lengths(const GridCurve& curve) {
  std::vector<double> q(curve.size());
  for (std::size_t j = 0; j < q.size(); ++j) q[j] = norm(curve.edge(static_cast<std::ptrdiff_t>(j)));
  return q;
}

/// tau_j = (x_j - x_{j-1}) / q_j.
inline std::vector<Vec2> edge_tangents(const GridCurve& curve) {
  std::vector<Vec2> t(curve.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    const Vec2 e = curve.edge(static_cast<std::ptrdiff_t>(j));
    t[j] = e / norm(e);
  }
  return t;
}

/// n_j = perp(tau_j).
inline std::vector<Vec2> edge_normals(const GridCurve& curve) {
  auto t = edge_tangents(curve);
  for (auto& v : t) v = perp(v);
  return t;
}

/// Unit bisector of two unit tangents. `vertex` only labels the error.
inline Vec2 averaged_tangent(const Vec2& left, const Vec2& right, std::size_t vertex = 0) {
  const Vec2 s = left + right;
  const double len = norm(s);
  if (!(len > kCuspEpsilon)) {
    throw CuspError(vertex, "antiparallel adjacent edges at vertex " + std::to_string(vertex));
  }
  return s / len;
}

/// tau_{j+1/2}: bisector of the edges meeting at vertex j.
inline Vec2 averaged_tangent(const GridCurve& curve, std::ptrdiff_t j) {
  const Vec2 e0 = curve.edge(j);
  const Vec2 e1 = curve.edge(j + 1);
  return averaged_tangent(e0 / norm(e0), e1 / norm(e1), curve.wrap(j));
}

/// (n_j + n_{j+1}) / |n_j + n_{j+1}|, which equals perp(tau_{j+1/2}).
inline Vec2 averaged_normal(const Vec2& left_tangent, const Vec2& right_tangent, std::size_t vertex = 0) {
  return perp(averaged_tangent(left_tangent, right_tangent, vertex));
}

inline double perimeter(const GridCurve& curve) {
  double l = 0.0;
  for (std::size_t j = 0; j < curve.size(); ++j) l += norm(curve.edge(static_cast<std::ptrdiff_t>(j)));
  return l;
}

/// Shoelace area; positive for counterclockwise simple polygons and the
/// winding-weighted area for immersed ones. Evaluated relative to x_0.
inline double signed_area(const GridCurve& curve) {
  const Vec2 o = curve[0];
  double twice = 0.0;
  for (std::size_t j = 1; j + 1 < curve.size(); ++j) {
    twice += cross(curve[static_cast<std::ptrdiff_t>(j)] - o, curve[static_cast<std::ptrdiff_t>(j) + 1] - o);
  }
  return 0.5 * twice;
}

/// max_j q_j / min_j q_j
inline double mesh_ratio(const GridCurve& curve) {
  const auto q = edge_lengths(curve);
  const auto [lo, hi] = std::minmax_element(q.begin(), q.end());
  return *hi / *lo;
}

/// Rigid motion x -> R x + shift with R the rotation by `angle`.
inline GridCurve rotated(const GridCurve& curve, double angle, Vec2 shift = {}) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<Vec2> out;
  out.reserve(curve.size());
  for (const Vec2& p : curve.vertices()) out.push_back(Vec2{c * p.x - s * p.y, s * p.x + c * p.y} + shift);
  return GridCurve(std::move(out));
}

inline GridCurve translated(const GridCurve& curve, Vec2 shift) {
  std::vector<Vec2> out(curve.vertices().begin(), curve.vertices().end());
  for (auto& p : out) p += shift;
  return GridCurve(std::move(out));
}

}  // namespace curveflow
