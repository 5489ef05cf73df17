#pragma once

#include <array>
#include <optional>
#include <string>

#include "cat0/metric.hpp"
#include "cat0/predicates.hpp"

namespace cat0 {

using geom::Vec2;
using geom::Vec3;

// Plain distances of a quadruple in roles (x, y, z, w). The free pair is {y, w}.
struct QuadDistances {
  double xy = 0, yz = 0, zw = 0, wx = 0, xz = 0, yw = 0;

  double scale() const { return std::max({xy, yz, zw, wx, xz, yw}); }
};

inline QuadDistances quad_distances(const MetricSpace& m, std::array<std::size_t, 4> r) {
  return {m.d(r[0], r[1]), m.d(r[1], r[2]), m.d(r[2], r[3]), m.d(r[3], r[0]), m.d(r[0], r[2]), m.d(r[1], r[3])};
}

inline void require_triangle(double ab, double bc, double ca, double tol) {
  const double sc = std::max({ab, bc, ca});
  const double eps = tol * sc;
  if (ab > bc + ca + eps || bc > ab + ca + eps || ca > ab + bc + eps)
    throw Error(ErrorKind::TriangleViolation,
                "sides " + std::to_string(ab) + ", " + std::to_string(bc) + ", " + std::to_string(ca));
}

// a at the origin, b on the positive axis, c in the closed upper half-plane.
inline std::array<Vec2, 3> place_triangle(double dab, double dbc, double dca, double tol = kDefaultTol) {
  require_triangle(dab, dbc, dca, tol);
  if (dab == 0.0) return {Vec2(0, 0), Vec2(0, 0), Vec2(dca, 0)};
  const double cx = (dab * dab + dca * dca - dbc * dbc) / (2.0 * dab);
  const double cy = std::sqrt(std::max(0.0, dca * dca - cx * cx));
  return {Vec2(0, 0), Vec2(dab, 0), Vec2(cx, cy)};
}

enum class Side { SameAsY, OppositeY };

struct Hinge {
  Vec2 x, y, z, w;
};

inline Hinge hinge(double dxy, double dyz, double dzx, double dxw, double dwz, Side side, double tol = kDefaultTol) {
  require_triangle(dxw, dwz, dzx, tol);
  const auto t1 = place_triangle(dzx, dyz, dxy, tol);
  const auto t2 = place_triangle(dzx, dwz, dxw, tol);
  Vec2 w = t2[2];
  if (side == Side::OppositeY) w.y() = -w.y();
  return {t1[0], t1[2], t1[1], w};
}

struct SpatialConfig {
  std::array<Vec3, 4> pts;  // roles x, y, z, w
  double theta0 = 0.0;
};

enum class QuadVerdict { Embeddable, UnderDistance, OverDistance };

inline std::string_view to_string(QuadVerdict v) {
  switch (v) {
    case QuadVerdict::Embeddable: return "Embeddable";
    case QuadVerdict::UnderDistance: return "UnderDistance";
    case QuadVerdict::OverDistance: return "OverDistance";
  }
  return "?";
}

struct Classification {
  QuadVerdict verdict = QuadVerdict::Embeddable;
  double lo = 0.0, hi = 0.0;
  std::optional<SpatialConfig> embedding;
};

namespace detail {

inline SpatialConfig spatial_from_hinge(const Hinge& h, double dyw) {
  const double y1 = h.y.x(), y2 = h.y.y(), w1 = h.w.x(), w2 = h.w.y();
  double theta = 0.0;
  if (y2 * w2 > 0.0) {
    const double c = ((y1 - w1) * (y1 - w1) + y2 * y2 + w2 * w2 - dyw * dyw) / (2.0 * y2 * w2);
    theta = std::acos(std::clamp(c, -1.0, 1.0));
  }
  SpatialConfig s;
  s.pts = {geom::lift(h.x), geom::lift(h.y), geom::lift(h.z), Vec3(w1, w2 * std::cos(theta), w2 * std::sin(theta))};
  s.theta0 = theta;
  return s;
}

// x and z coincide: the quadruple is the triangle (x, y, w).
inline Classification tripod(const QuadDistances& q, double tol) {
  const auto t = place_triangle(q.xy, q.yw, q.wx, tol);
  Classification c;
  c.lo = c.hi = q.yw;
  SpatialConfig s;
  s.pts = {geom::lift(t[0]), geom::lift(t[1]), geom::lift(t[0]), geom::lift(t[2])};
  c.embedding = s;
  return c;
}

}  // namespace detail

// Trichotomy relative to the pivot {y, w}; the frame is {x, z}.
inline Classification classify(const QuadDistances& q, double tol = kDefaultTol) {
  const double eps = tol * q.scale();
  if (q.xz <= eps) return detail::tripod(q, tol);
  const Hinge h = hinge(q.xy, q.yz, q.xz, q.wx, q.zw, Side::SameAsY, tol);
  Classification c;
  c.lo = (h.y - h.w).norm();
  c.hi = std::hypot(h.y.x() - h.w.x(), h.y.y() + h.w.y());
  if (q.yw < c.lo - eps) {
    c.verdict = QuadVerdict::UnderDistance;
  } else if (q.yw > c.hi + eps) {
    c.verdict = QuadVerdict::OverDistance;
  } else {
    c.verdict = QuadVerdict::Embeddable;
    c.embedding = detail::spatial_from_hinge(h, q.yw);
  }
  return c;
}

inline Classification classify(const MetricSpace& m, std::array<std::size_t, 4> roles, double tol = kDefaultTol) {
  return classify(quad_distances(m, roles), tol);
}

inline SpatialConfig embed_r3(const QuadDistances& q, double tol = kDefaultTol) {
  auto c = classify(q, tol);
  if (c.verdict != QuadVerdict::Embeddable) throw Error(ErrorKind::NotEmbeddable, std::string(to_string(c.verdict)));
  return *c.embedding;
}

// Comparison angle that tolerates zero legs (returns 0 there).
inline double cangle(double dab, double dbc, double dac) {
  if (dab == 0.0 || dbc == 0.0) return 0.0;
  return comparison_angle(dab, dbc, dac);
}

inline double cangle(const MetricSpace& m, std::size_t a, std::size_t b, std::size_t c) {
  return cangle(m.d(a, b), m.d(b, c), m.d(a, c));
}

// Which frame point of an over-distance quadruple carries comparison angles
// summing past pi: 0 for x, 2 for z, empty for neither.
inline std::optional<int> over_distance_apex(const QuadDistances& q) {
  const double pi = std::numbers::pi;
  if (cangle(q.xy, q.xz, q.yz) + cangle(q.xz, q.wx, q.zw) > pi) return 0;
  if (cangle(q.yz, q.xz, q.xy) + cangle(q.xz, q.zw, q.wx) > pi) return 2;
  return std::nullopt;
}

// Predicate bundle for a planar four-point configuration.
struct PlanarReport {
  // Segments indexed by the pairs (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
  std::array<std::array<bool, 6>, 6> segments_meet{};
  std::array<bool, 4> in_hull_of_others{};
  // side[p][a][b]: orientation of p relative to the directed line a->b.
  std::array<std::array<std::array<int, 4>, 4>, 4> side{};
  // angle[o][a][b]: planar angle a-o-b.
  std::array<std::array<std::array<double, 4>, 4>, 4> angle{};
  std::array<bool, 4> collinear_without{};  // the three other points are collinear
  bool all_collinear = false;
};

inline constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline PlanarReport config_report(const std::array<Vec2, 4>& p) {
  double sc = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) sc = std::max(sc, (p[i] - p[j]).norm());
  const double eps = geom::area_eps(sc);
  PlanarReport r;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const auto& s = kPairs[a];
      const auto& t = kPairs[b];
      r.segments_meet[a][b] = geom::segments_intersect(p[s[0]], p[s[1]], p[t[0]], p[t[1]], eps);
    }
  for (int i = 0; i < 4; ++i) {
    std::array<int, 3> o{};
    int k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != i) o[k++] = j;
    r.in_hull_of_others[i] = geom::in_triangle(p[i], p[o[0]], p[o[1]], p[o[2]], eps);
    r.collinear_without[i] = geom::collinear(p[o[0]], p[o[1]], p[o[2]], eps);
  }
  for (int q = 0; q < 4; ++q)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        r.side[q][a][b] = a == b ? 0 : geom::orientation(p[a], p[b], p[q], eps);
        r.angle[q][a][b] = geom::angle_at(p[q], p[a], p[b]);
      }
  r.all_collinear = r.collinear_without[0] && r.collinear_without[1];
  return r;
}

inline PlanarReport config_report(const Hinge& h) { return config_report(std::array<Vec2, 4>{h.x, h.y, h.z, h.w}); }

}  // namespace cat0
