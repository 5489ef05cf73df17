#include <catch_amalgamated.hpp>

#include "cat0.hpp"

using namespace cat0;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<std::size_t> first(std::size_t n) {
  std::vector<std::size_t> f(n);
  std::iota(f.begin(), f.end(), 0);
  return f;
}

MetricSpace unit_square() {
  const double r = std::sqrt(2.0);
  return from_matrix({{0, 1, r, 1}, {1, 0, 1, r}, {r, 1, 0, 1}, {1, r, 1, 0}});
}

MetricSpace regular_pentagon() {
  std::vector<Vec3> p;
  const double rad = 1.0 / (2.0 * std::sin(std::numbers::pi / 5));
  for (int k = 0; k < 5; ++k) p.emplace_back(rad * std::cos(2 * std::numbers::pi * k / 5), rad * std::sin(2 * std::numbers::pi * k / 5), 0);
  std::vector<std::vector<double>> m(5, std::vector<double>(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m[i][j] = (p[i] - p[j]).norm();
  return from_matrix(m);
}

void require_verified(const MetricSpace& x, const SimpleGraph& g, const Witness& w, double tol = 1e-7) {
  const auto rep = verify(x, first(g.size()), g, w, tol);
  INFO(format_graph(g) << " via " << w.provenance << ", worst slack " << rep.worst_slack());
  REQUIRE(rep.pass);
}

}  // namespace

TEST_CASE("dispatch", "[witness]") {
  const auto x = generate(gen::Euclidean{3}, 5, 2);
  CHECK(strategy_for(complete_graph(5), x).tag == StrategyTag::Line);
  CHECK(strategy_for(cycle_graph(5), x).tag == StrategyTag::Cycle);
  CHECK(strategy_for(catalogue::g5(9), x).tag == StrategyTag::CaseG9);
  CHECK(strategy_for(catalogue::g5(7), x).tag == StrategyTag::CaseG7);
  CHECK(strategy_for(path_graph(5), x).tag == StrategyTag::Tree);
  CHECK(strategy_for(graph1(5, {{1, 2}, {3, 4}, {4, 5}, {3, 5}}), x).tag == StrategyTag::SegmentSpacerGlue);

  auto dup = x.matrix();
  for (std::size_t i = 0; i < 5; ++i) dup[4][i] = dup[i][4] = dup[3][i];
  dup[4][3] = dup[3][4] = 0.0;
  CHECK(strategy_for(cycle_graph(5), from_matrix(dup)).tag == StrategyTag::Quotient);
}

TEST_CASE("line witness", "[witness]") {
  const auto sq = unit_square();
  const auto w = witness_line(sq, first(4), complete_graph(4));
  const auto& line = std::get<RealLine>(w.model);
  std::vector<double> v;
  for (auto s : w.assignment) v.push_back(std::abs(line.values[s] - line.values[w.assignment[0]]));
  CHECK_THAT(v[1], WithinAbs(1.0, 1e-12));
  CHECK_THAT(v[2], WithinAbs(std::sqrt(2.0), 1e-12));
  CHECK_THAT(v[3], WithinAbs(1.0, 1e-12));
  require_verified(sq, complete_graph(4), w);

  auto g = catalogue::g4(11);
  const auto edges = g.edges();
  SimpleGraph h(4);
  for (auto [a, b] : edges)
    if (!(a == 0 && b == 1)) h.add_edge(a, b);
  const auto x = generate(gen::Euclidean{3}, 4, 8);
  if (strategy_for(h, x).tag == StrategyTag::Line) require_verified(x, h, construct(x, first(4), h));
}

TEST_CASE("tree witness", "[witness]") {
  const auto x = generate(gen::Euclidean{3}, 5, 4);
  const auto p = path_graph(5);
  const auto w = witness_tree(x, first(5), p);
  const auto d = witness_distances(w);
  double chain = 0.0;
  for (std::size_t i = 0; i + 1 < 5; ++i) chain += x.d(i, i + 1);
  CHECK_THAT(d[0][4], WithinAbs(chain, 1e-9));
  require_verified(x, p, w);
  const auto star = graph1(4, {{1, 2}, {1, 3}, {1, 4}});
  require_verified(x, star, witness_tree(x, first(4), star));
}

TEST_CASE("glued witnesses", "[witness]") {
  const auto x = generate(gen::Euclidean{3}, 5, 6);
  const auto g = graph1(5, {{1, 2}, {3, 4}, {4, 5}, {3, 5}});
  const auto w = witness_glue(x, first(5), g, std::nullopt);
  CHECK(std::holds_alternative<Composite>(w.model));
  require_verified(x, g, w);

  const auto bowtie = graph1(5, {{1, 2}, {2, 5}, {1, 5}, {3, 4}, {4, 5}, {3, 5}});
  const auto s = cut_split(bowtie, 4);
  require_verified(x, bowtie, witness_glue(x, first(5), bowtie, s));
}

TEST_CASE("cycle search", "[witness]") {
  require_verified(regular_pentagon(), cycle_graph(5), witness_cycle(regular_pentagon(), first(5), cycle_graph(5)));
  require_verified(unit_square(), cycle_graph(4), witness_cycle(unit_square(), first(4), cycle_graph(4)));
  try {
    witness_cycle(counterexample_space(), first(4), cycle_graph(4));
    FAIL("cycle witness found for a space violating the box inequalities");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SearchFailed);
  }
  CHECK(cycle_search(counterexample_space(), cycle_graph(4), {}).best_penalty > 0.0);
}

TEST_CASE("construct refuses spaces violating the box inequalities", "[witness]") {
  try {
    construct(counterexample_space(), first(4), cycle_graph(4));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoxtimesViolated);
  }
}

TEST_CASE("fans", "[witness]") {
  const auto x = generate(gen::Euclidean{3}, 5, 12);
  const auto g = catalogue::g5(3);
  const auto w = witness_fan(x, first(5), g, StrategyTag::Fan35);
  const auto rep = verify(x, first(5), g, w, 1e-7);
  REQUIRE(rep.pass);
  std::size_t tight = 0;
  for (const auto& p : rep.pairs) tight += std::abs(p.slack) <= 1e-7 * x.scale();
  CHECK(tight >= 6);

  const auto y = snowflake(generate(gen::Perturbed{0.5}, 5, 3), 0.5);
  require_verified(y, catalogue::g5(5), witness_fan(y, first(5), catalogue::g5(5), StrategyTag::Fan35));
  require_verified(y, catalogue::g5(4), witness_fan(y, first(5), catalogue::g5(4), StrategyTag::Fan46));
}

TEST_CASE("seven-edge and nine-edge cases", "[witness]") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto e = generate(gen::Euclidean{3}, 5, seed);
    require_verified(e, catalogue::g5(7), witness_g7(e, first(5), catalogue::g5(7)));
    require_verified(e, catalogue::g5(9), witness_g9(e, first(5), catalogue::g5(9)));
    const auto t = generate(gen::Tree{}, 5, seed);
    require_verified(t, catalogue::g5(7), witness_g7(t, first(5), catalogue::g5(7)));
    require_verified(t, catalogue::g5(9), witness_g9(t, first(5), catalogue::g5(9)));
  }
  const auto w = witness_g9(generate(gen::Tree{}, 5, 1), first(5), catalogue::g5(9));
  CHECK_FALSE(w.log.empty());
}

TEST_CASE("every graph class on tree and cone samples", "[witness][property]") {
  const auto five = isomorphism_classes(5);
  const auto four = isomorphism_classes(4);
  REQUIRE(five.size() == 34);
  REQUIRE(four.size() == 11);
  for (const auto& x : {generate(gen::Tree{}, 5, 21), generate(gen::ComplexSample{}, 5, 21)}) {
    for (const auto& g : five) require_verified(x, g, construct(x, first(5), g));
    for (const auto& g : four) require_verified(x, g, construct(x, first(4), g));
  }
}

TEST_CASE("verification catches a corrupted witness", "[witness]") {
  const auto x = generate(gen::Euclidean{3}, 5, 30);
  const auto g = complete_graph(5);
  auto w = construct(x, first(5), g);
  auto& line = std::get<RealLine>(w.model);
  const std::size_t victim = w.assignment[2];
  const double base = line.values[w.assignment[0]];
  line.values[victim] += (line.values[victim] >= base ? 1.0 : -1.0) * 10 * 1e-7 * x.scale();
  const auto rep = verify(x, first(5), g, w, 1e-7);
  CHECK_FALSE(rep.pass);
  bool named = false;
  for (const auto& p : rep.offending()) named = named || p.u == 2 || p.v == 2;
  CHECK(named);
}

TEST_CASE("witness construction is deterministic", "[witness]") {
  const auto x = generate(gen::Euclidean{3}, 5, 44);
  const auto a = io::to_json(construct(x, first(5), cycle_graph(5))).dump();
  const auto b = io::to_json(construct(x, first(5), cycle_graph(5))).dump();
  CHECK(a == b);
}
