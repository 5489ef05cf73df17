#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace cat0::geom {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Sign of the signed area of (a, b, c); zero inside the band |area| <= eps.
inline int orientation(const Vec2& a, const Vec2& b, const Vec2& c, double eps) {
  const double v = cross(b - a, c - a);
  if (v > eps) return 1;
  if (v < -eps) return -1;
  return 0;
}

// Band for orientation tests on configurations of the given length scale.
inline double area_eps(double scale) { return 1e-12 * scale * scale; }

inline bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b, double eps) {
  if (orientation(a, b, p, eps) != 0) return false;
  const double slack = std::sqrt(eps);
  return p.x() >= std::min(a.x(), b.x()) - slack && p.x() <= std::max(a.x(), b.x()) + slack &&
         p.y() >= std::min(a.y(), b.y()) - slack && p.y() <= std::max(a.y(), b.y()) + slack;
}

// Closed segments [a,b] and [c,d].
inline bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, double eps) {
  const int o1 = orientation(a, b, c, eps), o2 = orientation(a, b, d, eps);
  const int o3 = orientation(c, d, a, eps), o4 = orientation(c, d, b, eps);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(c, a, b, eps) || on_segment(d, a, b, eps) || on_segment(a, c, d, eps) ||
         on_segment(b, c, d, eps);
}

// Closed triangle, including degenerate (collinear) triangles.
inline bool in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c, double eps) {
  const int o1 = orientation(a, b, p, eps), o2 = orientation(b, c, p, eps), o3 = orientation(c, a, p, eps);
  const bool has_neg = o1 < 0 || o2 < 0 || o3 < 0;
  const bool has_pos = o1 > 0 || o2 > 0 || o3 > 0;
  if (has_neg && has_pos) return false;
  if (has_neg || has_pos) return true;
  return on_segment(p, a, b, eps) || on_segment(p, b, c, eps) || on_segment(p, a, c, eps);
}

inline bool collinear(const Vec2& a, const Vec2& b, const Vec2& c, double eps) {
  return orientation(a, b, c, eps) == 0;
}

// Angle a-o-b in [0, pi]; zero-length legs give 0.
template <class V>
double angle_at(const V& o, const V& a, const V& b) {
  const V u = a - o, v = b - o;
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::acos(std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0));
}

// Barycentric coordinates of p in triangle (a, b, c) in 3-D (least squares onto the plane).
inline Vec3 barycentric(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 v0 = b - a, v1 = c - a, v2 = p - a;
  const double d00 = v0.dot(v0), d01 = v0.dot(v1), d11 = v1.dot(v1);
  const double d20 = v2.dot(v0), d21 = v2.dot(v1);
  const double den = d00 * d11 - d01 * d01;
  if (den == 0.0) return {1.0, 0.0, 0.0};
  const double v = (d11 * d20 - d01 * d21) / den;
  const double w = (d00 * d21 - d01 * d20) / den;
  return {1.0 - v - w, v, w};
}

inline Vec3 lift(const Vec2& p) { return {p.x(), p.y(), 0.0}; }

}  // namespace cat0::geom
