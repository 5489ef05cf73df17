#include <catch_amalgamated.hpp>

#include <random>

#include "cat0.hpp"

using namespace cat0;
using Catch::Matchers::WithinAbs;

namespace {

MetricSpace unit_square() {
  const double r = std::sqrt(2.0);
  return from_matrix({{0, 1, r, 1}, {1, 0, 1, r}, {r, 1, 0, 1}, {1, r, 1, 0}});
}

// Grid search over [0,1]^2 as an independent check on the closed-form minimizer.
double grid_min(const Quadruple<double>& q, int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) best = std::min(best, boxtimes_form(q, double(i) / n, double(j) / n));
  return best;
}

}  // namespace

TEST_CASE("box form values", "[boxtimes]") {
  const auto sq = quadruple(unit_square(), {0, 1, 2, 3});
  CHECK_THAT(boxtimes_form(sq, 0.5, 0.5), WithinAbs(0.0, 1e-15));
  const auto x = counterexample_space();
  const auto q = quadruple(x, {1, 2, 3, 0});
  CHECK(boxtimes_form(q, 0.0, 0.0) == q.d2_xy);
  const double s = (std::sqrt(3.0) - 1.0) / 2.0;
  CHECK_THAT(boxtimes_form(q, s, s), WithinAbs(12.0 - 7.0 * std::sqrt(3.0), 1e-12));
  CHECK_THROWS_AS(boxtimes_form(q, 1.5, 0.0), Error);
}

TEST_CASE("exact minimizer", "[boxtimes]") {
  const auto x = counterexample_space();
  SECTION("roles x1 x2 x3 x4") {
    const auto m = minimize_boxtimes(quadruple(x, {0, 1, 2, 3}));
    CHECK_THAT(m.value, WithinAbs(-0.125, 1e-12));
    CHECK_THAT(m.at.s, WithinAbs(3.0 / 8, 1e-12));
    CHECK_THAT(m.at.t, WithinAbs(5.0 / 8, 1e-12));
  }
  SECTION("roles x2 x3 x4 x1") {
    const auto q = quadruple(x, {1, 2, 3, 0});
    const auto m = minimize_boxtimes(q);
    CHECK_THAT(m.value, WithinAbs(-0.125, 1e-12));
    CHECK_THAT(m.at.s, WithinAbs(3.0 / 8, 1e-12));
    CHECK_THAT(m.at.t, WithinAbs(3.0 / 8, 1e-12));
    CHECK(grid_min(q, 1000) >= m.value - 1e-12);
    CHECK_THAT(grid_min(q, 1000), WithinAbs(-0.125, 1e-5));
  }
  SECTION("unit square") {
    const auto m = minimize_boxtimes(quadruple(unit_square(), {0, 1, 2, 3}));
    CHECK_THAT(m.value, WithinAbs(0.0, 1e-12));
    CHECK_THAT(m.at.s, WithinAbs(0.5, 1e-12));
    CHECK_THAT(m.at.t, WithinAbs(0.5, 1e-12));
  }
}

TEST_CASE("minimizer never beaten by a grid", "[boxtimes][property]") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const auto x = generate(gen::Perturbed{0.6}, 4, rng());
    for (const auto& p : permutations(4)) {
      const auto q = quadruple(x, {p[0], p[1], p[2], p[3]});
      const auto m = minimize_boxtimes(q);
      CHECK(grid_min(q, 40) >= m.value - 1e-12 * x.scale() * x.scale());
      CHECK_THAT(boxtimes_form(q, m.at.s, m.at.t), WithinAbs(m.value, 1e-14));
    }
  }
}

TEST_CASE("space verdicts", "[boxtimes]") {
  const auto bad = space_satisfies(counterexample_space());
  CHECK_FALSE(bad.holds());
  CHECK_THAT(bad.certificate.value, WithinAbs(-0.125, 1e-12));
  const auto c = bad.certificate;
  CHECK_THAT(boxtimes_form(quadruple(counterexample_space(), c.roles), c.at.s, c.at.t), WithinAbs(c.value, 1e-14));

  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(space_satisfies(generate(gen::Euclidean{2}, 5, seed)).holds());
  CHECK(space_satisfies(from_matrix({{0, 1, 2}, {1, 0, 3}, {2, 3, 0}})).holds());
}

TEST_CASE("five-point decision", "[boxtimes]") {
  CHECK_FALSE(decide_cat0_embeddable(counterexample_space()).holds());
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(decide_cat0_embeddable(generate(gen::Tree{}, 5, seed)).holds());
  try {
    decide_cat0_embeddable(generate(gen::Euclidean{3}, 6, 1));
    FAIL("six points accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooManyPoints);
  }
}

TEST_CASE("midpoint inequality", "[boxtimes]") {
  // x = 0, y = 1, z = 3 on a line and w = (1, 2) in the plane.
  const std::vector<Vec2> p{Vec2(0, 0), Vec2(1, 0), Vec2(3, 0), Vec2(1, 2)};
  std::vector<std::vector<double>> m(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = (p[i] - p[j]).norm();
  const auto x = from_matrix(m);
  const auto r = midpoint_inequality_check(x, 0, 1, 2, 3);
  REQUIRE(r.has_value());
  CHECK(*r);
  CHECK_FALSE(midpoint_inequality_check(x, 0, 3, 2, 1).has_value());

  SECTION("additive triples in box-satisfying spaces") {
    std::size_t applicable = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto t = generate(gen::Tree{}, 5, seed);
      for (const auto& q : permutations(5)) {
        const auto c = midpoint_inequality_check(t, q[0], q[1], q[2], q[3], 1e-9);
        if (c) {
          ++applicable;
          CHECK(*c);
        }
      }
    }
    CHECK(applicable > 100);
  }
}

TEST_CASE("snowflakes keep the box inequalities", "[boxtimes][property]") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    const auto x = generate(gen::Perturbed{0.8}, 5, rng());
    CHECK(space_satisfies(snowflake(x, 0.5)).holds());
  }
}
