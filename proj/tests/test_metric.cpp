#include <catch_amalgamated.hpp>

#include "cat0.hpp"

using namespace cat0;
using Catch::Matchers::WithinAbs;

namespace {

bool throws_kind(ErrorKind k, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == k;
  }
  return false;
}

}  // namespace

TEST_CASE("two-point space", "[metric]") {
  const auto x = from_matrix({"a", "b"}, {{0, 1}, {1, 0}});
  CHECK(x.size() == 2);
  CHECK(x.d(0, 1) == 1.0);
  CHECK(x.labels()[1] == "b");
}

TEST_CASE("counterexample space is a valid metric", "[metric]") {
  const auto x = counterexample_space();
  REQUIRE(x.size() == 4);
  const double r3 = std::sqrt(3.0);
  CHECK(x.d(0, 1) == 1.0);
  CHECK(x.d(1, 2) == 1.0);
  CHECK(x.d(2, 3) == 1.0);
  CHECK_THAT(x.d(3, 0), WithinAbs(r3, 1e-15));
  CHECK_THAT(x.d(0, 2), WithinAbs(r3, 1e-15));
  CHECK_THAT(x.d(1, 3), WithinAbs(r3, 1e-15));
  CHECK_NOTHROW(from_matrix(x.matrix()));
}

TEST_CASE("validation errors", "[metric]") {
  CHECK(throws_kind(ErrorKind::NonzeroDiagonal, [] { from_matrix({{0, 1}, {1, 0.5}}); }));
  CHECK(throws_kind(ErrorKind::AsymmetricMatrix, [] { from_matrix({{0, 1}, {2, 0}}); }));
  CHECK(throws_kind(ErrorKind::NegativeDistance, [] { from_matrix({{0, -1}, {-1, 0}}); }));
  CHECK(throws_kind(ErrorKind::TriangleViolation, [] { from_matrix({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}); }));
  CHECK(throws_kind(ErrorKind::DuplicateLabel, [] { from_matrix({"a", "a"}, {{0, 1}, {1, 0}}); }));
}

TEST_CASE("comparison angles", "[metric]") {
  const double pi = std::numbers::pi;
  CHECK_THAT(comparison_angle(1.0, 1.0, 1.0), WithinAbs(pi / 3, 1e-15));
  CHECK_THAT(comparison_angle(1.0, 1.0, 2.0), WithinAbs(pi, 1e-12));
  CHECK_THAT(comparison_angle(1.0, 1.0, std::sqrt(2.0)), WithinAbs(pi / 2, 1e-15));
}

TEST_CASE("restrict", "[metric]") {
  const auto x = generate(gen::Euclidean{3}, 5, 7);
  const auto r = restrict(x, {0, 1, 2});
  REQUIRE(r.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(r.d(i, j) == x.d(i, j));
  CHECK(restrict(x, {0, 1, 2, 3, 4}).matrix() == x.matrix());
  CHECK(restrict(x, {2}).size() == 1);
  CHECK(throws_kind(ErrorKind::EmptySubset, [&] { restrict(x, {}); }));
  CHECK(throws_kind(ErrorKind::BadIndex, [&] { restrict(x, {7}); }));
}

TEST_CASE("snowflake", "[metric]") {
  const auto x = from_matrix({{0, 4}, {4, 0}});
  CHECK_THAT(snowflake(x, 0.5).d(0, 1), WithinAbs(2.0, 1e-15));
  const auto c = counterexample_space();
  CHECK(snowflake(c, 1.0).matrix() == c.matrix());
  CHECK(space_satisfies(snowflake(c, 0.5)).holds());
  CHECK(throws_kind(ErrorKind::BadExponent, [&] { snowflake(c, 1.5); }));
  CHECK(throws_kind(ErrorKind::BadExponent, [&] { snowflake(c, 0.0); }));
}

TEST_CASE("generators", "[metric][generate]") {
  SECTION("planar samples classify embeddable") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto x = generate(gen::Euclidean{2}, 4, seed);
      for (const auto& p : permutations(4))
        CHECK(classify(x, {p[0], p[1], p[2], p[3]}).verdict == QuadVerdict::Embeddable);
    }
  }
  SECTION("tree samples satisfy the four-point condition and embed") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto x = generate(gen::Tree{}, 5, seed);
      for (const auto& p : permutations(5)) {
        const double a = x.d(p[0], p[1]) + x.d(p[2], p[3]);
        const double b = x.d(p[0], p[2]) + x.d(p[1], p[3]);
        const double c = x.d(p[0], p[3]) + x.d(p[1], p[2]);
        CHECK(a <= std::max(b, c) + 1e-12);
      }
      CHECK(decide_cat0_embeddable(x).holds());
    }
  }
  SECTION("perturbed samples resample to a metric and record the box verdict") {
    std::size_t resampled = 0, failing = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto g = generate_detail(gen::Perturbed{0.5}, 5, seed);
      CHECK_NOTHROW(from_matrix(g.space.matrix()));
      CHECK(g.boxtimes_holds == space_satisfies(g.space).holds());
      resampled += g.attempts > 1;
      failing += !g.boxtimes_holds;
    }
    CHECK(resampled > 0);
    CHECK(failing > 0);
  }
  SECTION("same seed, same space") {
    CHECK(generate(gen::ComplexSample{}, 5, 3).matrix() == generate(gen::ComplexSample{}, 5, 3).matrix());
    CHECK(generate(gen::Tree{}, 5, 3).matrix() != generate(gen::Tree{}, 5, 4).matrix());
  }
}

TEST_CASE("scaling multiplies distances", "[metric][property]") {
  const auto x = generate(gen::Euclidean{3}, 5, 11);
  const auto y = scaled(x, 1e3);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK_THAT(y.d(i, j), WithinAbs(1e3 * x.d(i, j), 1e-9));
}
