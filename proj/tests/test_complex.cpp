#include <catch_amalgamated.hpp>

#include <random>

#include "cat0.hpp"

using namespace cat0;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ComplexSpace two_segments(double a, double b) {
  ComplexBuilder cb;
  const auto s = cb.add_segment({"p", "o"}, a);
  const auto t = cb.add_segment({"o", "q"}, b);
  cb.glue(GlueKind::Point, s, t, {"o"});
  cb.mark("p");
  cb.mark("q");
  cb.mark("o");
  return cb.build();
}

ComplexSpace flat_square() {
  ComplexBuilder b;
  const auto t1 = b.add_triangle({"a", "b", "c"}, 1, 1, std::sqrt(2.0));
  const auto t2 = b.add_triangle({"a", "c", "d"}, std::sqrt(2.0), 1, 1);
  b.glue_segment(t1, t2, "a", "c");
  for (auto n : {"a", "b", "c", "d"}) b.mark(n);
  return b.build();
}

ComplexSpace equilateral_double() {
  auto b = double_builder({"a", "b", "c"}, 1, 1, 1);
  const double third = 1.0 / 3.0;
  b.mark_bary("m0", 0, {third, third, third});
  b.mark_bary("m1", 1, {third, third, third});
  auto c = b.build();
  c.set_nonneg_surface(true);
  return c;
}

}  // namespace

TEST_CASE("assembly", "[complex]") {
  const auto c = two_segments(1, 1);
  CHECK(c.pieces().size() == 2);
  CHECK_THAT(distance(c, "p", "q"), WithinAbs(2.0, 1e-9));

  ComplexBuilder bad;
  const auto s = bad.add_segment({"a", "b"}, 1.0);
  const auto t = bad.add_segment({"a", "b"}, 1.1);
  bad.glue_segment(s, t, "a", "b");
  try {
    bad.build();
    FAIL("length mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }

  ComplexBuilder apart;
  apart.add_segment({"a", "b"}, 1.0);
  apart.add_segment({"c", "d"}, 1.0);
  CHECK_THROWS_AS(apart.build(), Error);

  ComplexBuilder neg;
  CHECK_THROWS_AS(neg.add_segment({"a", "b"}, -1.0), Error);
}

TEST_CASE("discs", "[complex]") {
  const auto d = build_disc(1, 1, 1, 1, 1, 1);
  CHECK_THAT(d.apex_sum, WithinAbs(std::numbers::pi, 1e-12));
  CHECK_FALSE(d.cat0);

  // Collinear triangles are admitted and contribute angles 0 or pi.
  const auto flat = build_disc(1, 2, 1, 1, 1, 1);
  CHECK(flat.apex_sum > 0.0);

  SECTION("over-distance quadruples give CAT(0) discs") {
    std::size_t built = 0;
    for (std::uint64_t seed = 0; seed < 200 && built < 50; ++seed) {
      const auto x = generate(gen::Tree{}, 4, seed);
      for (const auto& p : permutations(4)) {
        const auto q = quad_distances(x, {p[0], p[1], p[2], p[3]});
        if (classify(q).verdict != QuadVerdict::OverDistance) continue;
        const auto apex = over_distance_apex(q);
        REQUIRE(apex.has_value());
        const auto o = std::array<std::size_t, 4>{p[0], p[1], p[2], p[3]};
        const std::size_t c = o[*apex], a = o[1], e = o[(*apex + 2) % 4], b = o[3];
        const auto disc = build_disc(x.d(c, a), x.d(c, e), x.d(c, b), x.d(a, e), x.d(e, b), x.d(b, a));
        CHECK(disc.apex_sum >= 2 * std::numbers::pi - 1e-9);
        CHECK(local_cat0_check(disc.space));
        ++built;
      }
    }
    CHECK(built > 10);
  }
}

TEST_CASE("fans and doubles", "[complex]") {
  const double r = std::sqrt(2.0);
  const auto fan = build_fan({{{"a", "b", "c"}, {1, 1, r}}, {{"a", "c", "d"}, {r, 1, 1}}});
  CHECK_THAT(distance(fan, "b", "d"), WithinAbs(r, 1e-9));
  CHECK_THROWS_AS(build_fan({{{"a", "b", "c"}, {1, 1, r}}, {{"a", "c", "d"}, {1.5, 1, 1}}}), Error);

  const auto dbl = equilateral_double();
  CHECK_THAT(distance(dbl, "m0", "m1"), WithinAbs(std::sqrt(3.0) / 3, 1e-6));
  CHECK(dbl.marks().size() == 2);
}

TEST_CASE("gluing constructions", "[complex]") {
  const auto w = glue_at_point(two_segments(1, 1), "q", two_segments(2, 0.5), "p");
  // A: p-o-q with lengths 1, 1; B: p-o-q with lengths 2, 0.5, renamed p', o', q'.
  CHECK_THAT(distance(w, "p", "q'"), WithinAbs(4.5, 1e-9));
  CHECK_THAT(distance(w, "q", "p'"), WithinAbs(0.0, 1e-9));

  const auto sq = flat_square();
  const auto ext = attach_segment(sq, "b", 0.75, "tip");
  for (const auto& m : {"a", "c", "d"})
    CHECK_THAT(distance(ext, "tip", m), WithinAbs(0.75 + distance(sq, "b", m), 1e-9));
  const auto zero = attach_segment(sq, "b", 0.0, "tip");
  CHECK_THAT(distance(zero, "tip", "b"), WithinAbs(0.0, 1e-12));
}

TEST_CASE("curvature check", "[complex]") {
  CHECK(local_cat0_check(flat_square()));
  CHECK_FALSE(local_cat0_check(build_disc(1, 1, 1, 1, 1, 1).space));
  const auto vs = vertex_classes(build_disc(1, 1, 1, 1, 1, 1).space);
  std::size_t interior = 0;
  for (const auto& v : vs) interior += v.interior;
  CHECK(interior == 1);
}

TEST_CASE("geodesic distances", "[geodesic]") {
  CHECK_THAT(distance(two_segments(1, 2), "p", "q"), WithinAbs(3.0, 1e-9));
  CHECK_THAT(distance(flat_square(), "b", "d"), WithinAbs(std::sqrt(2.0), 1e-9));

  SECTION("regular tetrahedron surface") {
    const double h = 0.5 / std::sqrt(2.0);
    const std::array<Vec3, 4> v{Vec3(0.5, 0, -h), Vec3(-0.5, 0, -h), Vec3(0, 0.5, h), Vec3(0, -0.5, h)};
    const std::array<std::string, 4> n{"a", "b", "c", "d"};
    std::vector<NamedTriangle> faces;
    for (auto [i, j, k] : {std::array{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}})
      faces.push_back({{n[i], n[j], n[k]}, {v[i], v[j], v[k]}});
    auto b = polytope_builder(faces);
    b.mark_bary("mab", 0, {0.5, 0.5, 0.0});
    b.mark_bary("mcd", 2, {0.0, 0.5, 0.5});
    b.mark("a");
    b.mark("b");
    const auto c = b.build();
    CHECK_THAT(distance(c, "mab", "mcd"), WithinAbs(1.0, 1e-6));
    CHECK_THAT(distance(c, "a", "b"), WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("mesh oracle", "[geodesic]") {
  CHECK_THAT(distance_oracle(two_segments(1, 2), 0, 1, 2), WithinAbs(3.0, 1e-12));
  CHECK_THAT(distance_oracle(flat_square(), 1, 3, 64), WithinRel(std::sqrt(2.0), 0.02));
  const auto dbl = equilateral_double();
  CHECK_THAT(distance_oracle(dbl, 0, 1, 128), WithinRel(std::sqrt(3.0) / 3, 0.02));
  CHECK_THROWS_AS(distance_oracle(dbl, 0, 1, 1), Error);
}

TEST_CASE("oracle brackets the exact engine on sampled cones", "[geodesic][property]") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 5; ++k) {
    ComplexBuilder b;
    std::uniform_real_distribution<double> u(0.7, 1.5);
    const double r0 = u(rng), r1 = u(rng), r2 = u(rng);
    const auto t0 = b.add_triangle({"o", "a", "b"}, r0, 1.2, r1);
    const auto t1 = b.add_triangle({"o", "b", "c"}, r1, 1.1, r2);
    b.glue_segment(t0, t1, "o", "b");
    b.mark_bary("p", t0, {0.2, 0.5, 0.3});
    b.mark_bary("q", t1, {0.1, 0.3, 0.6});
    b.mark("a");
    b.mark("c");
    const auto c = b.build();
    const auto o = distance_oracle_all(c, 64);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        const double d = distance(c, i, j);
        CHECK(o[i][j] >= d - 1e-9 * c.scale());
        CHECK(o[i][j] <= d + 0.02 * c.scale());
      }
  }
}
