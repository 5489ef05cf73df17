#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "cat0/metric.hpp"

namespace cat0 {

// Squared distances of an ordered quadruple (x, y, z, w).
template <class Real = double>
struct Quadruple {
  Real d2_xy{}, d2_yz{}, d2_zw{}, d2_wx{}, d2_xz{}, d2_yw{};
};

inline Quadruple<double> quadruple(const MetricSpace& x, std::array<std::size_t, 4> r) {
  return {x.d2(r[0], r[1]), x.d2(r[1], r[2]), x.d2(r[2], r[3]),
          x.d2(r[3], r[0]), x.d2(r[0], r[2]), x.d2(r[1], r[3])};
}

template <class Real = double>
struct BoxPoint {
  Real s{}, t{};
};

template <class Real>
Real boxtimes_form_unchecked(const Quadruple<Real>& q, Real s, Real t) {
  const Real one(1);
  return (one - t) * (one - s) * q.d2_xy + t * (one - s) * q.d2_yz + t * s * q.d2_zw +
         (one - t) * s * q.d2_wx - t * (one - t) * q.d2_xz - s * (one - s) * q.d2_yw;
}

template <class Real>
Real boxtimes_form(const Quadruple<Real>& q, Real s, Real t) {
  if (!(s >= Real(0) && s <= Real(1) && t >= Real(0) && t <= Real(1)))
    throw Error(ErrorKind::ParamOutOfRange, "(s,t) outside the unit square");
  return boxtimes_form_unchecked(q, s, t);
}

template <class Real = double>
struct BoxMin {
  Real value{};
  BoxPoint<Real> at{};
};

// Exact minimum over [0,1]^2. The form is
//   a + s(d-a-f) + t(b-a-e) + k st + e t^2 + f s^2,  k = a-b+c-d,
// so the minimum sits at the interior critical point, on an edge, or at a corner.
template <class Real>
BoxMin<Real> minimize_boxtimes(const Quadruple<Real>& q) {
  const Real a = q.d2_xy, b = q.d2_yz, c = q.d2_zw, d = q.d2_wx, e = q.d2_xz, f = q.d2_yw;
  const Real k = a - b + c - d;
  const Real zero(0), one(1);
  // Candidates within rounding of the incumbent keep the earlier one, so ties resolve the same way at every scale.
  const Real tie = Real(1e-12) * std::max({a, b, c, d, e, f});

  BoxMin<Real> best{boxtimes_form_unchecked(q, zero, zero), {zero, zero}};
  auto offer = [&](Real s, Real t) {
    s = std::clamp(s, zero, one);
    t = std::clamp(t, zero, one);
    const Real v = boxtimes_form_unchecked(q, s, t);
    if (v < best.value - tie) best = {v, {s, t}};
  };

  offer(one, zero);
  offer(one, one);
  offer(zero, one);

  // Edges s = s0: quadratic in t with leading coefficient e.
  for (Real s0 : {zero, one}) {
    const Real lin = (b - a - e) + s0 * k;
    if (e > zero) offer(s0, -lin / (Real(2) * e));
  }
  for (Real t0 : {zero, one}) {
    const Real lin = (d - a - f) + t0 * k;
    if (f > zero) offer(-lin / (Real(2) * f), t0);
  }

  const Real det = Real(4) * e * f - k * k;
  if (det != zero) {
    const Real r1 = a + f - d, r2 = a + e - b;
    const Real s = (Real(2) * e * r1 - k * r2) / det;
    const Real t = (Real(2) * f * r2 - k * r1) / det;
    if (s >= zero && s <= one && t >= zero && t <= one) offer(s, t);
  }
  return best;
}

struct BoxCertificate {
  std::array<std::size_t, 4> roles{};
  BoxPoint<double> at{};
  double value = 0.0;
};

enum class Verdict { Holds, Violated };

struct BoxDecision {
  Verdict verdict = Verdict::Holds;
  // Most negative quadruple found; meaningful even when the verdict is Holds.
  BoxCertificate certificate;
  bool holds() const noexcept { return verdict == Verdict::Holds; }
};

// Scans ordered quadruples with repeats, keeping x <= z and y <= w (the two
// exact symmetries of the form). Ties keep the lexicographically first tuple.
inline BoxDecision space_satisfies(const MetricSpace& x, double tol = kDefaultTol) {
  const std::size_t n = x.size();
  BoxDecision out;
  bool first = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = i; k < n; ++k)
        for (std::size_t l = j; l < n; ++l) {
          const std::array<std::size_t, 4> r{i, j, k, l};
          const auto m = minimize_boxtimes(quadruple(x, r));
          if (first || m.value < out.certificate.value) {
            out.certificate = {r, m.at, m.value};
            first = false;
          }
        }
  const double sc = x.scale();
  if (sc > 0.0 && out.certificate.value < -tol * sc * sc) out.verdict = Verdict::Violated;
  return out;
}

inline constexpr std::size_t kMaxDecidable = 5;

// CAT(0)-embeddability for at most five points: equivalent to the box inequalities.
inline BoxDecision decide_cat0_embeddable(const MetricSpace& x, double tol = kDefaultTol) {
  if (x.size() > kMaxDecidable) throw Error(ErrorKind::TooManyPoints, std::to_string(x.size()));
  return space_satisfies(x, tol);
}

// Midpoint-type inequality for a point y on a geodesic from x to z.
// Empty when (x, y, z) is not additive.
inline std::optional<bool> midpoint_inequality_check(const MetricSpace& m, std::size_t x, std::size_t y,
                                                     std::size_t z, std::size_t w, double tol = kDefaultTol) {
  const double sc = m.scale();
  if (x == z || m.d(x, z) == 0.0) return std::nullopt;
  if (std::abs(m.d(x, z) - m.d(x, y) - m.d(y, z)) > tol * sc) return std::nullopt;
  const double t = m.d(x, y) / m.d(x, z);
  const double rhs = (1 - t) * m.d2(x, w) + t * m.d2(z, w) - t * (1 - t) * m.d2(x, z);
  return m.d2(y, w) <= rhs + tol * sc * sc;
}

}  // namespace cat0
