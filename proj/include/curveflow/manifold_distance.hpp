#pragma once

// Area of the symmetric difference of the regions bounded by two closed
// polygons, counted with winding multiplicity:
//
//   M(P1, P2) = integral over the plane of |w1(p) - w2(p)|
//
// where w_i is the winding number of P_i around p. For simple positively
// oriented polygons this is Area(O1) + Area(O2) - 2 Area(O1 n O2).
//
// The plane is cut into vertical slabs at every vertex abscissa and every
// segment crossing. Inside a slab no two segments cross, so the segments
// spanning it are totally ordered from bottom to top and the region between
// two consecutive ones is a trapezoid of constant winding numbers. The winding
// numbers are accumulated by signed crossings of an upward ray.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "curveflow/errors.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

/// Breakpoints closer than this fraction of the bounding-box extent are merged.
inline constexpr double kSnapFraction = 1e-12;
/// Trapezoid heights below -kOrderFraction * extent flag a missed crossing.
inline constexpr double kOrderFraction = 1e-9;

namespace detail {

struct DirectedSegment {
  Vec2 a;
  Vec2 b;
  int poly;  // 0 or 1

  double xmin() const { return std::min(a.x, b.x); }
  double xmax() const { return std::max(a.x, b.x); }
  double y_at(double x) const {
    if (b.x == a.x) return 0.5 * (a.y + b.y);
    return a.y + (x - a.x) * ((b.y - a.y) / (b.x - a.x));
  }
  // Contribution to the winding number of points above the segment.
  int winding_sign() const { return b.x > a.x ? 1 : -1; }
};

inline void check_polygon(const GridCurve& p, const char* name) {
  const double l = perimeter(p);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!(norm(p.edge(static_cast<std::ptrdiff_t>(j))) > 1e-12 * l)) {
      throw DegenerateInput(std::string(name) + " has a near-zero edge at " + std::to_string(j));
    }
  }
}

// Winding number by signed crossings of the ray from `p` towards +x.
inline int crossing_winding(const GridCurve& poly, const Vec2& p) {
  int w = 0;
  for (std::size_t j = 0; j < poly.size(); ++j) {
    const Vec2& s = poly[static_cast<std::ptrdiff_t>(j) - 1];
    const Vec2& e = poly[static_cast<std::ptrdiff_t>(j)];
    if (s.y <= p.y) {
      if (e.y > p.y && cross(e - s, p - s) > 0.0) ++w;
    } else if (e.y <= p.y && cross(e - s, p - s) < 0.0) {
      --w;
    }
  }
  return w;
}

}  // namespace detail

/// Midpoint-rule estimate of the winding-weighted symmetric difference on a
/// `resolution` x `resolution` grid over the joint bounding box.
inline double winding_quadrature_distance(const GridCurve& p1, const GridCurve& p2, int resolution = 1000) {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  for (const GridCurve* p : {&p1, &p2}) {
    for (const Vec2& v : p->vertices()) {
      x0 = std::min(x0, v.x);
      x1 = std::max(x1, v.x);
      y0 = std::min(y0, v.y);
      y1 = std::max(y1, v.y);
    }
  }
  const double dx = (x1 - x0) / resolution;
  const double dy = (y1 - y0) / resolution;
  double sum = 0.0;
  for (int i = 0; i < resolution; ++i) {
    for (int k = 0; k < resolution; ++k) {
      const Vec2 c{x0 + (i + 0.5) * dx, y0 + (k + 0.5) * dy};
      sum += std::abs(detail::crossing_winding(p1, c) - detail::crossing_winding(p2, c));
    }
  }
  return sum * dx * dy;
}

inline double manifold_distance(const GridCurve& p1, const GridCurve& p2) {
  using detail::DirectedSegment;
  detail::check_polygon(p1, "first polygon");
  detail::check_polygon(p2, "second polygon");

  // Work relative to the lower-left corner of the joint bounding box.
  Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Vec2 hi = -lo;
  for (const GridCurve* p : {&p1, &p2}) {
    for (const Vec2& v : p->vertices()) {
      lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
      hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
    }
  }
  const double extent = std::max(hi.x - lo.x, hi.y - lo.y);

  std::vector<DirectedSegment> segs;
  segs.reserve(p1.size() + p2.size());
  int id = 0;
  for (const GridCurve* p : {&p1, &p2}) {
    for (std::size_t j = 0; j < p->size(); ++j) {
      const auto sj = static_cast<std::ptrdiff_t>(j);
      segs.push_back({(*p)[sj - 1] - lo, (*p)[sj] - lo, id});
    }
    ++id;
  }
  // Canonical order makes the result independent of argument order.
  std::sort(segs.begin(), segs.end(), [](const auto& s, const auto& t) {
    const auto ks = std::tie(s.a.x, s.a.y, s.b.x, s.b.y);
    const auto kt = std::tie(t.a.x, t.a.y, t.b.x, t.b.y);
    return ks < kt;
  });

  std::vector<double> xs;
  xs.reserve(4 * segs.size());
  for (const auto& s : segs) {
    xs.push_back(s.a.x);
    xs.push_back(s.b.x);
  }

  // Crossings. Segments sorted by left end allow an early exit.
  std::vector<std::size_t> by_left(segs.size());
  for (std::size_t i = 0; i < by_left.size(); ++i) by_left[i] = i;
  std::sort(by_left.begin(), by_left.end(), [&](std::size_t i, std::size_t k) {
    const double xi = segs[i].xmin();
    const double xk = segs[k].xmin();
    return std::tie(xi, i) < std::tie(xk, k);
  });
  for (std::size_t u = 0; u < by_left.size(); ++u) {
    const std::size_t i = by_left[u];
    for (std::size_t v = u + 1; v < by_left.size(); ++v) {
      const std::size_t k = by_left[v];
      if (segs[k].xmin() > segs[i].xmax()) break;
      const auto& s = segs[std::min(i, k)];
      const auto& t = segs[std::max(i, k)];
      if (std::max(s.a.y, s.b.y) < std::min(t.a.y, t.b.y) || std::max(t.a.y, t.b.y) < std::min(s.a.y, s.b.y)) {
        continue;
      }
      const Vec2 d1 = s.b - s.a;
      const Vec2 d2 = t.b - t.a;
      const double den = cross(d1, d2);
      if (den == 0.0) continue;  // parallel; shared abscissae are endpoints
      const Vec2 w = t.a - s.a;
      const double ps = cross(w, d2) / den;
      const double pt = cross(w, d1) / den;
      if (ps > 0.0 && ps < 1.0 && pt > 0.0 && pt < 1.0) xs.push_back(s.a.x + ps * d1.x);
    }
  }

  std::sort(xs.begin(), xs.end());
  const double snap = kSnapFraction * extent;
  std::vector<double> cuts;
  cuts.reserve(xs.size());
  for (double x : xs) {
    if (cuts.empty() || x - cuts.back() > snap) cuts.push_back(x);
  }

  struct Active {
    double y0, y1, ym;
    std::size_t idx;
  };
  std::vector<Active> active;
  double total = 0.0;
  double worst_order = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double xa = cuts[c];
    const double xb = cuts[c + 1];
    const double xm = 0.5 * (xa + xb);
    const double width = xb - xa;
    active.clear();
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& s = segs[i];
      if (s.xmin() < xm && xm < s.xmax()) {
        const double ya = s.y_at(xa);
        const double yb = s.y_at(xb);
        active.push_back({ya, yb, s.y_at(xm), i});
      }
    }
    std::sort(active.begin(), active.end(),
              [](const Active& p, const Active& q) { return std::tie(p.ym, p.idx) < std::tie(q.ym, q.idx); });
    int w[2] = {0, 0};
    for (std::size_t k = 0; k + 1 < active.size(); ++k) {
      const auto& s = segs[active[k].idx];
      w[s.poly] += s.winding_sign();
      const double ha = active[k + 1].y0 - active[k].y0;
      const double hb = active[k + 1].y1 - active[k].y1;
      worst_order = std::min({worst_order, ha, hb});
      const int mult = std::abs(w[0] - w[1]);
      if (mult != 0) total += mult * width * 0.5 * (ha + hb);
    }
  }

  if (worst_order < -kOrderFraction * extent) {
    throw NumericalDegeneracy("segment order inside a slab is inconsistent (missed crossing)",
                              winding_quadrature_distance(p1, p2));
  }
  return total;
}

}  // namespace curveflow
