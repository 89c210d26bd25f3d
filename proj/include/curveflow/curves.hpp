#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "curveflow/errors.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

enum class CurveKind { Ellipse, FourLeafRose, Flower, Rectangle4x1 };

inline std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Ellipse: return "ellipse";
    case CurveKind::FourLeafRose: return "rose";
    case CurveKind::Flower: return "flower";
    case CurveKind::Rectangle4x1: return "rect";
  }
  return "?";
}

inline CurveKind curve_kind_from_string(std::string_view name) {
  if (name == "ellipse") return CurveKind::Ellipse;
  if (name == "rose") return CurveKind::FourLeafRose;
  if (name == "flower") return CurveKind::Flower;
  if (name == "rect") return CurveKind::Rectangle4x1;
  throw InvalidArgument("unknown curve kind '" + std::string(name) + "'");
}

namespace detail {

// Point at arclength s along the boundary of [0,4]x[0,1], counterclockwise
// from the corner (0,0).
inline Vec2 rectangle_point(double s) {
  if (s <= 4.0) return {s, 0.0};
  if (s <= 5.0) return {4.0, s - 4.0};
  if (s <= 9.0) return {4.0 - (s - 5.0), 1.0};
  return {0.0, 1.0 - (s - 9.0)};
}

}  // namespace detail

/// Samples the initial curve at the nodes xi_j = 2 pi j / N.
///
/// The 4x1 rectangle is parameterized by arclength starting at (0,0) and
/// running counterclockwise; when N is a multiple of 10 the corners are nodes.
inline GridCurve sample_curve(CurveKind kind, int n) {
  if (n < 3) throw InvalidArgument("sample_curve needs N >= 3, got " + std::to_string(n));
  if (kind == CurveKind::Rectangle4x1 && n < 8) {
    throw InvalidArgument("the rectangle needs N >= 8, got " + std::to_string(n));
  }
  std::vector<Vec2> pts(static_cast<std::size_t>(n));
  const double h = 2.0 * std::numbers::pi / n;
  for (int j = 0; j < n; ++j) {
    const double th = h * j;
    Vec2& p = pts[static_cast<std::size_t>(j)];
    switch (kind) {
      case CurveKind::Ellipse:
        p = {2.0 * std::cos(th), std::sin(th)};
        break;
      case CurveKind::FourLeafRose:
        p = {std::cos(2.0 * th) * std::cos(th), std::cos(2.0 * th) * std::sin(th)};
        break;
      case CurveKind::Flower: {
        const double r = 2.0 + std::cos(6.0 * th);
        p = {r * std::cos(th), r * std::sin(th)};
        break;
      }
      case CurveKind::Rectangle4x1:
        p = detail::rectangle_point(10.0 * j / n);
        break;
    }
  }
  return GridCurve(std::move(pts));
}

}  // namespace curveflow
