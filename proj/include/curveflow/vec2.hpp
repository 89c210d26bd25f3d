#pragma once

#include <cmath>

namespace curveflow {

/// Point or displacement in the plane.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator/(const Vec2& a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product.
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

/// Quarter turn counterclockwise: (a,b) -> (-b,a). Maps the tangent of a
/// counterclockwise curve to its inner normal.
constexpr Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
constexpr double norm_squared(const Vec2& v) { return dot(v, v); }

/// 2x2 real matrix, row major.
struct Mat2 {
  double a = 0.0, b = 0.0;
  double c = 0.0, d = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 scalar(double s) { return {s, 0.0, 0.0, s}; }
  /// Matrix of perp.
  static constexpr Mat2 rotation90() { return {0.0, -1.0, 1.0, 0.0}; }
  /// v v^T
  static constexpr Mat2 outer(const Vec2& v) { return {v.x * v.x, v.x * v.y, v.y * v.x, v.y * v.y}; }

  constexpr double det() const { return a * d - b * c; }
  constexpr double max_abs() const {
    auto m = [](double p, double q) { return p > q ? p : q; };
    auto abs = [](double p) { return p < 0 ? -p : p; };
    return m(m(abs(a), abs(b)), m(abs(c), abs(d)));
  }
  /// Induced infinity norm (max absolute row sum).
  constexpr double norm_inf() const {
    auto abs = [](double p) { return p < 0 ? -p : p; };
    const double r0 = abs(a) + abs(b);
    const double r1 = abs(c) + abs(d);
    return r0 > r1 ? r0 : r1;
  }

  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr Mat2 operator+(const Mat2& p, const Mat2& q) { return {p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d}; }
constexpr Mat2 operator-(const Mat2& p, const Mat2& q) { return {p.a - q.a, p.b - q.b, p.c - q.c, p.d - q.d}; }
constexpr Mat2 operator-(const Mat2& p) { return {-p.a, -p.b, -p.c, -p.d}; }
constexpr Mat2 operator*(double s, const Mat2& p) { return {s * p.a, s * p.b, s * p.c, s * p.d}; }
constexpr Mat2 operator*(const Mat2& p, double s) { return s * p; }
constexpr Mat2 operator*(const Mat2& p, const Mat2& q) {
  return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
}
constexpr Vec2 operator*(const Mat2& p, const Vec2& v) { return {p.a * v.x + p.b * v.y, p.c * v.x + p.d * v.y}; }

/// Caller guarantees det() != 0.
constexpr Mat2 inverse(const Mat2& p) {
  const double inv = 1.0 / p.det();
  return {p.d * inv, -p.b * inv, -p.c * inv, p.a * inv};
}

}  // namespace curveflow
