#include <catch_amalgamated.hpp>

#include "cat0.hpp"

using namespace cat0;
using Catch::Matchers::WithinAbs;

namespace {

MetricSpace unit_square() {
  const double r = std::sqrt(2.0);
  return from_matrix({{0, 1, r, 1}, {1, 0, 1, r}, {r, 1, 0, 1}, {1, r, 1, 0}});
}

}  // namespace

TEST_CASE("evaluation", "[qmi]") {
  CHECK_THAT(evaluate(quadrilateral(), unit_square(), {0, 1, 2, 3}), WithinAbs(0.0, 1e-12));
  CHECK_THAT(evaluate(quadrilateral(), counterexample_space(), {0, 1, 2, 3}), WithinAbs(0.0, 1e-12));
  CHECK(evaluate(QuadraticInequality{4, {}}, unit_square(), {0, 1, 2, 3}) == 0.0);
  CHECK_THROWS_AS(evaluate(quadrilateral(), unit_square(), {0, 1}), Error);
}

TEST_CASE("minimum over tuples", "[qmi]") {
  const auto x = counterexample_space();
  CHECK_THAT(min_over_tuples(quadrilateral(), x).value, WithinAbs(0.0, 1e-9));
  const auto m = min_over_tuples(boxtimes_family(3.0 / 8, 3.0 / 8), x);
  CHECK_THAT(m.value, WithinAbs(-0.125, 1e-12));
  CHECK_THAT(evaluate(boxtimes_family(3.0 / 8, 3.0 / 8), x, {1, 2, 3, 0}), WithinAbs(-0.125, 1e-12));
  CHECK(min_over_tuples(quadrilateral(), from_matrix({{0.0}})).value == 0.0);
}

TEST_CASE("associated graph", "[qmi]") {
  CHECK(isomorphism(associated_graph(quadrilateral()), cycle_graph(4)).has_value());
  CHECK(isomorphism(associated_graph(boxtimes_family(0.3, 0.6)), cycle_graph(4)).has_value());
  QuadraticInequality neg{3, {}};
  neg.set(0, 1, -1);
  neg.set(1, 2, -2);
  CHECK(associated_graph(neg).edge_count() == 0);
}

TEST_CASE("box family members", "[qmi]") {
  const auto half = boxtimes_family(0.5, 0.5);
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {2, 3}, {0, 3}}) CHECK(half.coeff(i, j) == 0.25);
  CHECK(half.coeff(0, 2) == -0.25);
  CHECK(half.coeff(1, 3) == -0.25);
  const auto corner = boxtimes_family(0, 0);
  CHECK(corner.a.size() == 1);
  CHECK(corner.coeff(0, 1) == 1.0);
  const auto edge = boxtimes_family(0, 1);
  CHECK(edge.a.size() == 1);
  CHECK(edge.coeff(1, 2) == 1.0);
  CHECK_THROWS_AS(boxtimes_family(1.2, 0), Error);
}

TEST_CASE("family minimum matches the exact quadruple minimum", "[qmi][property]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto x = generate(gen::Perturbed{0.5}, 4, seed);
    double quad_min = 0.0;
    for (const auto& p : permutations(4))
      quad_min = std::min(quad_min, minimize_boxtimes(quadruple(x, {p[0], p[1], p[2], p[3]})).value);
    for (double s : {0.0, 0.25, 0.5, 0.8})
      for (double t : {0.1, 0.5, 1.0}) CHECK(min_over_tuples(boxtimes_family(s, t), x).value >= quad_min - 1e-12);
  }
}

TEST_CASE("sampled CAT(0) spaces satisfy every family member", "[qmi][property]") {
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    for (const auto& x : {generate(gen::Euclidean{3}, 5, seed), generate(gen::Tree{}, 5, seed)}) {
      const double floor = -1e-9 * x.scale() * x.scale();
      CHECK(min_over_tuples(quadrilateral(), x).value >= floor);
      CHECK(min_over_tuples(boxtimes_family(0.3, 0.7), x).value >= floor);
    }
}

TEST_CASE("transfer along a witness", "[qmi]") {
  SECTION("identity witness of the square") {
    const auto sq = unit_square();
    auto model = [&](std::size_t i, std::size_t j) { return sq.d(i, j); };
    CHECK_THAT(transfer_bound(quadrilateral(), sq, {0, 1, 2, 3}, model), WithinAbs(0.0, 1e-12));
    CHECK_THAT(model_value(quadrilateral(), model), WithinAbs(0.0, 1e-12));
  }
  SECTION("fan witness") {
    const auto x = generate(gen::Euclidean{3}, 5, 12);
    const std::vector<std::size_t> f{0, 1, 2, 3, 4};
    const auto g = catalogue::g5(3);
    const auto w = construct(x, f, g);
    const auto d = witness_distances(w);
    // A 4-cycle inside the fan graph, in cycle order.
    std::optional<std::vector<std::size_t>> cyc;
    for (const auto& p : permutations(5)) {
      if (p[0] > p[1] || p[4] != 4) continue;
      std::vector<std::size_t> t{p[0], p[1], p[2], p[3]};
      if (g.has_edge(t[0], t[1]) && g.has_edge(t[1], t[2]) && g.has_edge(t[2], t[3]) && g.has_edge(t[3], t[0]) &&
          !g.has_edge(t[0], t[2]) && !g.has_edge(t[1], t[3])) {
        cyc = t;
        break;
      }
      std::vector<std::size_t> u{p[0], p[1], p[2], 4};
      if (g.has_edge(u[0], u[1]) && g.has_edge(u[1], u[2]) && g.has_edge(u[2], u[3]) && g.has_edge(u[3], u[0]) &&
          !g.has_edge(u[0], u[2]) && !g.has_edge(u[1], u[3])) {
        cyc = u;
        break;
      }
    }
    REQUIRE(cyc.has_value());
    const auto& t = *cyc;
    auto model = [&](std::size_t i, std::size_t j) { return d[t[i]][t[j]]; };
    const auto q = quadrilateral();
    const double lhs = transfer_bound(q, x, t, model, 1e-7);
    CHECK(lhs >= model_value(q, model) - 1e-7 * x.scale() * x.scale());
    CHECK(model_value(q, model) >= -1e-9);

    auto corrupt = [&](std::size_t i, std::size_t j) { return model(i, j) * ((i == 0 && j == 1) ? 1.01 : 1.0); };
    try {
      transfer_bound(q, x, t, corrupt, 1e-7);
      FAIL("corrupted model accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PatternViolated);
    }
  }
}
