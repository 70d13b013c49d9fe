#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "trisub/errors.hpp"
#include "trisub/flat_maps.hpp"

namespace trisub {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
inline double dist2(Point2 a, Point2 b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// A planar triangle given by its three vertices. Flat (collinear) triangles
/// are allowed; the three vertices may not all coincide.
struct TrianglePoints {
  Point2 a, b, c;
};

/// The similarity-invariant state of a triangle: the apex (x, y) once the
/// longest edge is mapped to [0,1] with the shortest edge adjacent to 0.
/// Valid states satisfy 0 <= x <= 1/2, y >= 0 and (1-x)^2 + y^2 <= 1.
struct ShapePoint {
  double x = 0.0;
  double y = 0.0;
};

inline bool is_valid_shape(const ShapePoint& s, double tol = 1e-12) {
  if (!(s.x >= -tol && s.x <= 0.5 + tol)) return false;
  if (!(s.y >= -tol)) return false;
  return (1.0 - s.x) * (1.0 - s.x) + s.y * s.y <= 1.0 + tol;
}

inline bool is_flat(const ShapePoint& s) { return s.y == 0.0; }

/// Nonnegative quantity that is infinite exactly on flat triangles.
class ExtendedValue {
 public:
  ExtendedValue() = default;
  explicit ExtendedValue(double v) : v_(v) {}
  static ExtendedValue infinity() { return ExtendedValue(std::numeric_limits<double>::infinity()); }

  bool is_infinite() const { return std::isinf(v_); }
  double value() const { return v_; }
  // 1/v, continuous across flatness (0 at the flat set).
  double reciprocal() const { return is_infinite() ? 0.0 : 1.0 / v_; }

 private:
  double v_ = 0.0;
};

namespace detail {

inline double signed_area(const Point2& a, const Point2& b, const Point2& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

}  // namespace detail

inline double triangle_area(const TrianglePoints& t) {
  return std::fabs(detail::signed_area(t.a, t.b, t.c));
}

/// Reduce a triangle to its characterizing point. Edge ordering is by
/// (squared length, vertex-pair index) so ties resolve deterministically.
inline ShapePoint normalize(const TrianglePoints& t) {
  std::array<double, 3> sq = {dist2(t.a, t.b), dist2(t.b, t.c), dist2(t.c, t.a)};
  std::array<int, 3> idx = {0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    return sq[i] != sq[j] ? sq[i] < sq[j] : i < j;
  });
  const double l1 = sq[idx[0]], l2 = sq[idx[1]], l3 = sq[idx[2]];
  if (l3 == 0.0) throw PointDegenerate("normalize: all three vertices coincide");
  double x = (l3 - l2 + l1) / (2.0 * l3);
  x = std::clamp(x, 0.0, 0.5);
  // Negative round-off at flatness is absorbed by the max.
  const double y2 = (l1 + l2 + l3) / (2.0 * l3) - x * x + x - 1.0;
  const double y = std::sqrt(std::max(0.0, y2));
  return {x, y};
}

/// Vertices of child i (1..6) of the barycentric subdivision of the
/// normalized triangle (0,0), (x,y), (1,0), in the canonical index order.
inline TrianglePoints child_vertices(const ShapePoint& s, int i) {
  const Point2 a{0.0, 0.0}, b{s.x, s.y}, c{1.0, 0.0};
  const Point2 d = midpoint(a, b), e = midpoint(b, c), f = midpoint(a, c);
  const Point2 g{(1.0 + s.x) / 3.0, s.y / 3.0};
  switch (i) {
    case 1: return {a, d, g};
    case 2: return {d, b, g};
    case 3: return {b, e, g};
    case 4: return {e, c, g};
    case 5: return {c, f, g};
    case 6: return {f, a, g};
    default: throw std::invalid_argument("child_vertices: index must be in 1..6");
  }
}

inline double longest_edge(const TrianglePoints& t) {
  return std::sqrt(std::max({dist2(t.a, t.b), dist2(t.b, t.c), dist2(t.c, t.a)}));
}

// The flat set is exactly invariant: flat parents step through the
// one-dimensional maps so that the x-marginal matches the flat chain bit
// for bit. Off the flat set the child height comes from the exact area
// identity (each child has a sixth of the parent's area, and the parent's
// area is y/2), which is free of the cancellation that the direct y^2
// formula suffers near flatness.
inline ShapePoint child_shape(const ShapePoint& s, int i) {
  if (s.y == 0.0) return {z_map(i, s.x), 0.0};
  const TrianglePoints t = child_vertices(s, i);
  std::array<double, 3> sq = {dist2(t.a, t.b), dist2(t.b, t.c), dist2(t.c, t.a)};
  std::sort(sq.begin(), sq.end());
  const double x = std::clamp((sq[2] - sq[1] + sq[0]) / (2.0 * sq[2]), 0.0, 0.5);
  const double y = s.y / (6.0 * sq[2]);
  return {x, y};
}

/// The six children of the barycentric subdivision, each renormalized.
inline std::array<ShapePoint, 6> subdivide(const ShapePoint& s) {
  std::array<ShapePoint, 6> out;
  for (int i = 1; i <= 6; ++i) out[i - 1] = child_shape(s, i);
  return out;
}

/// Sum of squared edge lengths over area; infinite iff flat.
inline ExtendedValue functional_J(const ShapePoint& s) {
  if (s.y == 0.0) return ExtendedValue::infinity();
  return ExtendedValue(4.0 * (s.x * s.x + s.y * s.y - s.x + 1.0) / s.y);
}

/// Perimeter squared over area; infinite iff flat. Satisfies I/3 <= J <= I.
inline ExtendedValue functional_I(const ShapePoint& s) {
  if (s.y == 0.0) return ExtendedValue::infinity();
  const double la = std::sqrt(s.x * s.x + s.y * s.y);
  const double lb = std::sqrt((1.0 - s.x) * (1.0 - s.x) + s.y * s.y);
  const double p = la + lb + 1.0;
  return ExtendedValue(p * p / (0.5 * s.y));
}

/// Largest angle of the triangle: the angle at (x,y) between the edges to
/// (0,0) and (1,0). Equals pi for flat shapes with x > 0.
inline double largest_angle(const ShapePoint& s) {
  const double a2 = s.x * s.x + s.y * s.y;
  if (a2 == 0.0) throw DegenerateAngle("largest_angle: apex coincides with an endpoint");
  const double b2 = (1.0 - s.x) * (1.0 - s.x) + s.y * s.y;
  const double cosv = (a2 + b2 - 1.0) / (2.0 * std::sqrt(a2 * b2));
  return std::acos(std::clamp(cosv, -1.0, 1.0));
}

}  // namespace trisub
