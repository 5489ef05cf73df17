#include <catch_amalgamated.hpp>

#include <random>

#include "cat0.hpp"

using namespace cat0;
using Catch::Matchers::WithinAbs;

namespace {

double dist(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

void check_reproduces(const SpatialConfig& s, const QuadDistances& q, double tol) {
  const auto& p = s.pts;
  CHECK_THAT(dist(p[0], p[1]), WithinAbs(q.xy, tol));
  CHECK_THAT(dist(p[1], p[2]), WithinAbs(q.yz, tol));
  CHECK_THAT(dist(p[2], p[3]), WithinAbs(q.zw, tol));
  CHECK_THAT(dist(p[3], p[0]), WithinAbs(q.wx, tol));
  CHECK_THAT(dist(p[0], p[2]), WithinAbs(q.xz, tol));
  CHECK_THAT(dist(p[1], p[3]), WithinAbs(q.yw, tol));
}

QuadDistances quad(double xy, double yz, double zw, double wx, double xz, double yw) { return {xy, yz, zw, wx, xz, yw}; }

}  // namespace

TEST_CASE("triangle placement", "[quad]") {
  const auto e = place_triangle(1, 1, 1);
  CHECK_THAT(e[2].x(), WithinAbs(0.5, 1e-15));
  CHECK_THAT(e[2].y(), WithinAbs(std::sqrt(3.0) / 2, 1e-15));
  const auto flat = place_triangle(1, 1, 2);
  CHECK_THAT(flat[2].x(), WithinAbs(2.0, 1e-12));
  CHECK_THAT(flat[2].y(), WithinAbs(0.0, 1e-6));
  const auto r = place_triangle(3, 4, 5);
  CHECK_THAT((r[2] - r[0]).norm(), WithinAbs(5.0, 1e-12));
  CHECK_THAT((r[2] - r[1]).norm(), WithinAbs(4.0, 1e-12));
  CHECK_THROWS_AS(place_triangle(1, 1, 3), Error);
}

TEST_CASE("planar hinge", "[quad]") {
  const double r = std::sqrt(2.0);
  const auto same = hinge(1, 1, r, 1, 1, Side::SameAsY);
  CHECK_THAT((same.y - same.w).norm(), WithinAbs(0.0, 1e-12));
  const auto opp = hinge(1, 1, r, 1, 1, Side::OppositeY);
  CHECK_THAT((opp.y - opp.w).norm(), WithinAbs(r, 1e-12));

  // y' from (x, z, y) = (0,0), (2.5,0) with |xy| = 1, |yz| = 2; w' with |xw| = 1.05, |wz| = 2.05.
  const auto h = hinge(1, 2, 2.5, 1.05, 2.05, Side::SameAsY);
  const double y1 = (1 + 6.25 - 4) / 5.0, w1 = (1.05 * 1.05 + 6.25 - 2.05 * 2.05) / 5.0;
  const double y2 = std::sqrt(1 - y1 * y1), w2 = std::sqrt(1.05 * 1.05 - w1 * w1);
  CHECK_THAT((h.y - h.w).norm(), WithinAbs(std::hypot(y1 - w1, y2 - w2), 1e-12));
  CHECK_THAT((h.y - h.w).norm(), WithinAbs(0.0826, 5e-4));
}

TEST_CASE("quadruple trichotomy examples", "[quad]") {
  const double r = std::sqrt(2.0);
  SECTION("unit square") {
    const auto c = classify(quad(1, 1, 1, 1, r, r));
    REQUIRE(c.verdict == QuadVerdict::Embeddable);
    CHECK_THAT(c.embedding->theta0, WithinAbs(std::numbers::pi, 1e-6));
    check_reproduces(*c.embedding, quad(1, 1, 1, 1, r, r), 1e-9);
  }
  SECTION("counterexample space is over-distance on its diagonal") {
    const auto x = counterexample_space();
    const auto c = classify(x, {0, 1, 2, 3});
    CHECK(c.verdict == QuadVerdict::OverDistance);
    CHECK_THAT(c.lo, WithinAbs(0.7360, 1e-3));
    CHECK_THAT(c.hi, WithinAbs(1.5667, 1e-3));
  }
  SECTION("under-distance") {
    const auto c = classify(quad(1, 2, 2.05, 1.05, 2.5, 0.06));
    CHECK(c.verdict == QuadVerdict::UnderDistance);
    CHECK(c.lo > 0.06);
  }
  SECTION("boundary closes towards embeddable") {
    const auto c0 = classify(quad(1, 2, 2.05, 1.05, 2.5, 1.0));
    const auto lo = classify(quad(1, 2, 2.05, 1.05, 2.5, c0.lo)), hi = classify(quad(1, 2, 2.05, 1.05, 2.5, c0.hi));
    CHECK(lo.verdict == QuadVerdict::Embeddable);
    CHECK(hi.verdict == QuadVerdict::Embeddable);
  }
  SECTION("coincident frame falls back to a triangle") {
    const auto c = classify(quad(1, 1, 1, 1, 0, 1));
    REQUIRE(c.verdict == QuadVerdict::Embeddable);
    check_reproduces(*c.embedding, quad(1, 1, 1, 1, 0, 1), 1e-9);
  }
}

TEST_CASE("spatial embeddings", "[quad]") {
  SECTION("regular tetrahedron") {
    const auto q = quad(1, 1, 1, 1, 1, 1);
    const auto s = embed_r3(q);
    check_reproduces(s, q, 1e-12);
    // y' and w' both sit at (1/2, sqrt(3)/2) in the hinge, so cos(theta0) = (3/4 + 3/4 - 1) / (3/2).
    CHECK_THAT(std::cos(s.theta0), WithinAbs(1.0 / 3.0, 1e-12));
  }
  SECTION("collinear points stay on one axis") {
    const auto q = quad(1, 1, 1, 3, 2, 2);
    const auto s = embed_r3(q);
    check_reproduces(s, q, 1e-9);
    for (const auto& p : s.pts) {
      CHECK_THAT(p.y(), WithinAbs(0.0, 1e-6));
      CHECK_THAT(p.z(), WithinAbs(0.0, 1e-6));
    }
  }
  SECTION("non-embeddable input is rejected") {
    try {
      embed_r3(quad(1, 2, 2.05, 1.05, 2.5, 0.06));
      FAIL("embedded an under-distance quadruple");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotEmbeddable);
    }
  }
}

TEST_CASE("classification agrees with a rotation sweep", "[quad][property]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  int checked = 0;
  while (checked < 500) {
    const auto x = generate(gen::Perturbed{0.7}, 4, rng());
    const auto q = quad_distances(x, {0, 1, 2, 3});
    const auto h0 = hinge(q.xy, q.yz, q.xz, q.wx, q.zw, Side::SameAsY);
    double lo = 1e300, hi = 0;
    for (int k = 0; k <= 2000; ++k) {
      const double th = std::numbers::pi * k / 2000;
      const Vec3 y(h0.y.x(), h0.y.y(), 0), w(h0.w.x(), h0.w.y() * std::cos(th), h0.w.y() * std::sin(th));
      lo = std::min(lo, (y - w).norm());
      hi = std::max(hi, (y - w).norm());
    }
    const auto c = classify(q);
    CHECK_THAT(c.lo, WithinAbs(lo, 1e-6));
    CHECK_THAT(c.hi, WithinAbs(hi, 1e-6));
    if (c.verdict == QuadVerdict::Embeddable) check_reproduces(*c.embedding, q, 1e-9 * x.scale());
    ++checked;
  }
}

TEST_CASE("planar predicates", "[quad]") {
  const std::array<Vec2, 4> sq{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  const auto r = config_report(sq);
  CHECK(r.segments_meet[1][4]);  // diagonals 02 and 13
  for (bool b : r.in_hull_of_others) CHECK_FALSE(b);
  CHECK_FALSE(r.all_collinear);

  const std::array<Vec2, 4> line3{Vec2(0, 0), Vec2(1, 0), Vec2(2, 0), Vec2(0.5, 1)};
  const auto l = config_report(line3);
  CHECK(l.collinear_without[3]);
  CHECK_FALSE(l.collinear_without[0]);
  CHECK_FALSE(l.all_collinear);

  const auto h = hinge(1, 2, 2.5, 1.05, 2.05, Side::SameAsY);
  const auto u = config_report(h);
  CHECK(u.in_hull_of_others[3] != u.in_hull_of_others[1]);
}

TEST_CASE("over-distance quadruples have a wide apex", "[quad][property]") {
  std::size_t seen = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto x = generate(gen::Tree{}, 4, seed);
    for (const auto& p : permutations(4)) {
      const auto q = quad_distances(x, {p[0], p[1], p[2], p[3]});
      const auto c = classify(q);
      if (c.verdict != QuadVerdict::OverDistance || q.yw < c.hi + 1e-9 * x.scale()) continue;
      ++seen;
      CHECK(over_distance_apex(q).has_value());
    }
  }
  CHECK(seen > 50);
}
