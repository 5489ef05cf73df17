#pragma once

#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>

#include "cat0/generate.hpp"
#include "cat0/qmi.hpp"
#include "cat0/witness.hpp"

namespace cat0::selftest {

struct Result {
  Result(int id_, std::string name_) : id(id_), name(std::move(name_)) {}
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Config {
  std::uint64_t seed = 20240601;
  std::size_t witness_spaces = 100;
};

// Tolerances and budgets, fixed here so that every run is judged the same way.
namespace pinned {
inline constexpr double counterexample_value_tol = 1e-9;
inline constexpr double parameter_point_tol = 1e-12;
inline constexpr double decide_tol = 1e-9;
inline constexpr double sweep_boundary_tol = 1e-7;
inline constexpr int sweep_points = 10000;
inline constexpr double embedding_tol = 1e-9;
inline constexpr double witness_tol = 1e-7;
inline constexpr double search_fail_rate = 0.05;
inline constexpr int oracle_mesh = 128;
inline constexpr double oracle_band = 0.02;
inline constexpr double oracle_floor = 1e-9;
inline constexpr double fixture_tol = 1e-6;
inline constexpr double apex_tol = 1e-9;
inline constexpr double argmin_tol = 1e-9;
inline constexpr double pattern_margin = 1e-9;
inline constexpr std::size_t pattern_instances = 1000;
inline constexpr double budget_1 = 1.0, budget_3 = 30.0, budget_4 = 10.0, budget_6 = 600.0;
}  // namespace pinned

namespace detail {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

inline std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

// Random 4- or 5-point metric: independent uniform distances, redrawn until valid.
inline MetricSpace random_metric(std::size_t n, std::mt19937_64& rng, double lo = 0.2) {
  std::uniform_real_distribution<double> u(lo, 1.0);
  while (true) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = u(rng);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        for (std::size_t k = 0; k < n && ok; ++k) ok = m[i][k] <= m[i][j] + m[j][k];
    if (ok) return from_matrix(m);
  }
}

// Tree metric blended with a Euclidean sample; keeps many quadruples off the embeddable range.
inline MetricSpace blended(std::size_t n, std::uint64_t seed, double mix) {
  const auto t = generate(gen::Tree{}, n, seed), e = generate(gen::Euclidean{3}, n, seed + 1);
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = std::sqrt((1 - mix) * t.d2(i, j) + mix * e.d2(i, j));
  return MetricSpace::trusted(t.labels(), std::move(flat));
}

// Shared corpus of box-satisfying five-point spaces.
inline std::vector<MetricSpace> witness_corpus(const Config& cfg) {
  std::vector<MetricSpace> out;
  std::mt19937_64 rng(cfg.seed);
  for (std::uint64_t k = 0; out.size() < cfg.witness_spaces; ++k) {
    const std::uint64_t s = cfg.seed + 7919 * k;
    MetricSpace x;
    switch (k % 6) {
      case 0: x = generate(gen::Euclidean{3}, 5, s); break;
      case 1: x = generate(gen::Tree{}, 5, s); break;
      case 2: x = generate(gen::ComplexSample{}, 5, s); break;
      case 3: x = snowflake(random_metric(5, rng), 0.5); break;
      case 4: x = blended(5, s, 0.3); break;
      default: x = generate(gen::Euclidean{2}, 5, s); break;
    }
    if (space_satisfies(x, pinned::decide_tol).holds()) out.push_back(std::move(x));
  }
  return out;
}

struct State {
  std::vector<ComplexSpace> complexes;  // every complex behind a criterion-6 witness
  std::vector<ComplexSpace> discs;      // those built as discs on an over-distance quadruple
};

inline bool disc_provenance(const std::string& p) {
  return p.find("disc") != std::string::npos || p.find("-ll") != std::string::npos || p == "g7-over";
}

inline void harvest(const Witness& w, State& st) {
  if (const auto* c = std::get_if<ComplexModel>(&w.model)) {
    st.complexes.push_back(c->space);
    if (disc_provenance(w.provenance)) st.discs.push_back(c->space);
  }
  if (const auto* c = std::get_if<Composite>(&w.model))
    for (const auto& p : c->parts) harvest(p, st);
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline Result criterion_1() {
  Result r{1, "counterexample space reproduction"};
  const auto t0 = detail::Clock::now();
  const auto x = counterexample_space();
  const auto d = decide_cat0_embeddable(x, pinned::decide_tol);
  const double target = -0.125;
  const double v1 = boxtimes_form(quadruple(x, {0, 1, 2, 3}), 3.0 / 8, 5.0 / 8);
  const double v2 = boxtimes_form(quadruple(x, {1, 2, 3, 0}), 3.0 / 8, 3.0 / 8);
  const auto qm = min_over_tuples(quadrilateral(), x);
  const double tol = pinned::counterexample_value_tol;
  r.seconds = detail::since(t0);
  r.pass = !d.holds() && std::abs(d.certificate.value - target) <= tol && std::abs(v1 - target) <= tol &&
           std::abs(v2 - target) <= tol && std::abs(qm.value) <= tol && r.seconds < pinned::budget_1;
  r.detail = "certificate " + detail::fmt(d.certificate.value, 12) + " at (s,t)=(" + detail::fmt(d.certificate.at.s) +
             "," + detail::fmt(d.certificate.at.t) + "), listed points " + detail::fmt(v1, 12) + " / " +
             detail::fmt(v2, 12) + ", quadrilateral min " + detail::fmt(qm.value, 3);
  return r;
}

inline Result criterion_2() {
  Result r{2, "violating parameter point"};
  const auto t0 = detail::Clock::now();
  const auto x = counterexample_space();
  const double s = (std::sqrt(3.0) - 1.0) / 2.0;
  const double v = boxtimes_form(quadruple(x, {1, 2, 3, 0}), s, s);
  const double want = 12.0 - 7.0 * std::sqrt(3.0);
  const double alt = 1.0 / (1.0 + std::sqrt(3.0));
  r.seconds = detail::since(t0);
  r.pass = std::abs(v - want) <= pinned::parameter_point_tol && v < 0.0 && std::abs(alt - s) <= 1e-15;
  r.detail = "value " + detail::fmt(v, 15) + " vs 12-7*sqrt(3) = " + detail::fmt(want, 15);
  return r;
}

inline Result criterion_3(const Config& cfg) {
  Result r{3, "soundness suite"};
  const auto t0 = detail::Clock::now();
  std::size_t bad = 0, total = 0;
  auto run = [&](const GenKind& k, std::size_t count, std::uint64_t salt) {
    for (std::size_t i = 0; i < count; ++i, ++total)
      if (!decide_cat0_embeddable(generate(k, 5, cfg.seed * 31 + salt + i), pinned::decide_tol).holds()) ++bad;
  };
  run(gen::Euclidean{3}, 1000, 0);
  run(gen::Tree{}, 200, 100000);
  run(gen::ComplexSample{}, 200, 200000);
  r.seconds = detail::since(t0);
  r.pass = bad == 0 && r.seconds < pinned::budget_3;
  r.detail = std::to_string(total - bad) + "/" + std::to_string(total) + " embeddable";
  return r;
}

inline Result criterion_4(const Config& cfg) {
  Result r{4, "snowflake suite"};
  const auto t0 = detail::Clock::now();
  std::mt19937_64 rng(cfg.seed + 4);
  std::size_t bad = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const auto x = snowflake(detail::random_metric(5, rng, 0.01), 0.5);
    const auto d = space_satisfies(x, pinned::decide_tol);
    worst = std::min(worst, d.certificate.value / (x.scale() * x.scale()));
    if (!d.holds()) ++bad;
  }
  r.seconds = detail::since(t0);
  r.pass = bad == 0 && r.seconds < pinned::budget_4;
  r.detail = std::to_string(200 - bad) + "/200 hold, least normalized form value " + detail::fmt(worst, 3);
  return r;
}

namespace detail {

// |y - w(theta)| over rotations of w about the line xz, from an independent placement.
inline std::pair<double, double> sweep(const QuadDistances& q, int n) {
  const double a = (q.xy * q.xy + q.xz * q.xz - q.yz * q.yz) / (2 * q.xz);
  const double b = std::sqrt(std::max(0.0, q.xy * q.xy - a * a));
  const double c = (q.wx * q.wx + q.xz * q.xz - q.zw * q.zw) / (2 * q.xz);
  const double e = std::sqrt(std::max(0.0, q.wx * q.wx - c * c));
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int k = 0; k < n; ++k) {
    const double th = std::numbers::pi * k / (n - 1);
    const double dy = b - e * std::cos(th), dz = e * std::sin(th);
    const double d = std::sqrt((a - c) * (a - c) + dy * dy + dz * dz);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

}  // namespace detail

inline Result criterion_5(const Config& cfg) {
  Result r{5, "trichotomy suite"};
  const auto t0 = detail::Clock::now();
  std::mt19937_64 rng(cfg.seed + 5);
  std::size_t mismatch = 0, bounds = 0, repro = 0, near = 0, count = 0;
  std::array<std::size_t, 3> seen{};
  for (int i = 0; i < 10000; ++i) {
    const auto x = detail::random_metric(4, rng);
    const double eps = pinned::sweep_boundary_tol * x.scale();
    for (const std::array<std::size_t, 4> roles : {std::array<std::size_t, 4>{0, 1, 2, 3}, {1, 2, 3, 0}}) {
      ++count;
      const auto q = quad_distances(x, roles);
      const auto c = classify(q, pinned::decide_tol);
      ++seen[static_cast<int>(c.verdict)];
      const auto [lo, hi] = detail::sweep(q, pinned::sweep_points);
      if (std::abs(lo - c.lo) > eps || std::abs(hi - c.hi) > eps) ++bounds;
      const double dyw = q.yw;
      if (std::abs(dyw - lo) <= eps || std::abs(dyw - hi) <= eps) {
        ++near;
      } else {
        const auto want = dyw < lo ? QuadVerdict::UnderDistance : dyw > hi ? QuadVerdict::OverDistance : QuadVerdict::Embeddable;
        if (want != c.verdict) ++mismatch;
      }
      if (c.verdict == QuadVerdict::Embeddable) {
        const auto& p = c.embedding->pts;
        const double got[6] = {(p[0] - p[1]).norm(), (p[1] - p[2]).norm(), (p[2] - p[3]).norm(),
                               (p[3] - p[0]).norm(), (p[0] - p[2]).norm(), (p[1] - p[3]).norm()};
        const double want[6] = {q.xy, q.yz, q.zw, q.wx, q.xz, q.yw};
        for (int k = 0; k < 6; ++k)
          if (std::abs(got[k] - want[k]) > pinned::embedding_tol * x.scale()) {
            ++repro;
            break;
          }
      }
    }
  }
  r.seconds = detail::since(t0);
  r.pass = mismatch == 0 && bounds == 0 && repro == 0;
  r.detail = std::to_string(count) + " classifications (" + std::to_string(seen[0]) + " embeddable, " +
             std::to_string(seen[1]) + " under, " + std::to_string(seen[2]) + " over); sweep mismatches " +
             std::to_string(mismatch) + ", bound mismatches " + std::to_string(bounds) + ", near-boundary skipped " +
             std::to_string(near) + ", bad embeddings " + std::to_string(repro);
  return r;
}

inline Result criterion_6(const Config& cfg, detail::State& st) {
  Result r{6, "witness completeness"};
  const auto t0 = detail::Clock::now();
  const auto corpus = detail::witness_corpus(cfg);
  std::vector<SimpleGraph> graphs = isomorphism_classes(5);
  const auto four = isomorphism_classes(4);
  graphs.insert(graphs.end(), four.begin(), four.end());
  WitnessConfig wc;
  wc.tol = pinned::witness_tol;
  wc.seed = cfg.seed;
  std::size_t runs = 0, failed = 0, cycles = 0, search_failed = 0;
  std::string first_failure;
  for (const auto& x : corpus)
    for (const auto& g : graphs) {
      std::vector<std::size_t> f(g.size());
      std::iota(f.begin(), f.end(), 0);
      ++runs;
      const bool is_cycle = strategy_for(g, pullback(x, f), wc.tol).tag == StrategyTag::Cycle;
      cycles += is_cycle;
      try {
        const auto w = construct(x, f, g, wc);
        const auto rep = verify(x, f, g, w, wc.tol, wc.distance);
        if (!rep.pass) {
          ++failed;
          if (first_failure.empty()) first_failure = format_graph(g) + " " + w.provenance;
        }
        detail::harvest(w, st);
      } catch (const Error& e) {
        if (is_cycle && e.kind() == ErrorKind::SearchFailed) {
          ++search_failed;
        } else {
          ++failed;
          if (first_failure.empty()) first_failure = format_graph(g) + " " + e.what();
        }
      }
    }
  const double rate = cycles ? static_cast<double>(search_failed) / cycles : 0.0;
  r.seconds = detail::since(t0);
  r.pass = failed == 0 && rate < pinned::search_fail_rate && r.seconds < pinned::budget_6;
  r.detail = std::to_string(runs - failed - search_failed) + "/" + std::to_string(runs) + " verified over " +
             std::to_string(corpus.size()) + " spaces; cycle search failures " + std::to_string(search_failed) + "/" +
             std::to_string(cycles) + " (" + detail::fmt(100 * rate, 3) + "%)" +
             (first_failure.empty() ? "" : "; first failure " + first_failure);
  return r;
}

namespace detail {

inline ComplexSpace fixture_square() {
  ComplexBuilder b;
  const auto a = b.add_piece(2, {"a", "b", "c"}, {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0)});
  const auto c = b.add_piece(2, {"a", "c", "d"}, {Vec3(0, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)});
  b.glue_segment(a, c, "a", "c");
  for (auto n : {"a", "b", "c", "d"}) b.mark(n);
  return b.build();
}

inline ComplexSpace fixture_double() {
  auto b = double_builder({"a", "b", "c"}, 1.0, 1.0, 1.0);
  const double third = 1.0 / 3.0;
  b.mark_bary("m0", 0, {third, third, third});
  b.mark_bary("m1", 1, {third, third, third});
  auto c = b.build();
  c.set_nonneg_surface(true);
  return c;
}

inline ComplexSpace fixture_tetra() {
  const double h = 0.5 / std::sqrt(2.0);  // unit edges
  const std::array<Vec3, 4> v{Vec3(0.5, 0, -h), Vec3(-0.5, 0, -h), Vec3(0, 0.5, h), Vec3(0, -0.5, h)};
  const std::array<std::string, 4> n{"a", "b", "c", "d"};
  std::vector<NamedTriangle> faces;
  for (auto [i, j, k] : {std::array{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}})
    faces.push_back({{n[i], n[j], n[k]}, {v[i], v[j], v[k]}});
  auto b = polytope_builder(faces);
  // Midpoints of the opposite edges ab and cd.
  b.mark_bary("mab", 0, {0.5, 0.5, 0.0});
  b.mark_bary("mcd", 2, {0.0, 0.5, 0.5});
  auto c = b.build();
  c.set_nonneg_surface(true);
  return c;
}

}  // namespace detail

inline Result criterion_7(const detail::State& st) {
  Result r{7, "complex distance oracle agreement"};
  const auto t0 = detail::Clock::now();
  std::vector<ComplexSpace> all = st.complexes;
  const auto sq = detail::fixture_square(), db = detail::fixture_double(), te = detail::fixture_tetra();
  all.push_back(sq);
  all.push_back(db);
  all.push_back(te);
  std::size_t pairs = 0, below = 0, above = 0;
  double worst_gap = 0.0;
  for (const auto& c : all) {
    const auto oracle = distance_oracle_all(c, pinned::oracle_mesh);
    const double sc = c.scale();
    for (std::size_t i = 0; i < c.marks().size(); ++i)
      for (std::size_t j = i + 1; j < c.marks().size(); ++j) {
        ++pairs;
        const double d = distance(c, i, j), o = oracle[i][j];
        if (o < d - pinned::oracle_floor * sc) ++below;
        if (o > d + pinned::oracle_band * sc) ++above;
        worst_gap = std::max(worst_gap, (o - d) / sc);
      }
  }
  const double centers = distance(db, "m0", "m1");
  const double mids = distance(te, "mab", "mcd");
  r.seconds = detail::since(t0);
  r.pass = below == 0 && above == 0 && std::abs(centers - std::sqrt(3.0) / 3.0) <= pinned::fixture_tol &&
           std::abs(mids - 1.0) <= pinned::fixture_tol;
  r.detail = std::to_string(all.size()) + " complexes, " + std::to_string(pairs) + " pairs; oracle below " +
             std::to_string(below) + ", above band " + std::to_string(above) + ", largest relative gap " +
             detail::fmt(worst_gap, 3) + "; double centers " + detail::fmt(centers, 10) + ", tetra midpoints " +
             detail::fmt(mids, 10);
  return r;
}

inline Result criterion_8(const detail::State& st) {
  Result r{8, "disc curvature"};
  const auto t0 = detail::Clock::now();
  std::size_t bad = 0;
  for (const auto& c : st.discs)
    if (!local_cat0_check(c, pinned::apex_tol)) ++bad;
  r.seconds = detail::since(t0);
  r.pass = bad == 0 && !st.discs.empty();
  r.detail = std::to_string(st.discs.size() - bad) + "/" + std::to_string(st.discs.size()) + " discs pass";
  return r;
}

inline Result criterion_9(const Config& cfg) {
  Result r{9, "scale invariance"};
  const auto t0 = detail::Clock::now();
  std::vector<MetricSpace> spaces{counterexample_space()};
  Config small = cfg;
  small.witness_spaces = 12;
  for (auto& x : detail::witness_corpus(small)) spaces.push_back(std::move(x));
  std::size_t diffs = 0, checks = 0;
  const auto graphs = isomorphism_classes(5);
  for (std::size_t si = 0; si < spaces.size(); ++si) {
    const auto& base = spaces[si];
    const auto ref_dec = decide_cat0_embeddable(base).holds();
    for (double lambda : {1e-3, 1e3}) {
      const auto x = scaled(base, lambda);
      ++checks;
      diffs += decide_cat0_embeddable(x).holds() != ref_dec;
      if (base.size() < 4) continue;
      for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = 0; j < base.size(); ++j)
          for (std::size_t k = 0; k < base.size(); ++k)
            for (std::size_t l = 0; l < base.size(); ++l) {
              const std::array<std::size_t, 4> ro{i, j, k, l};
              if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
              checks += 2;
              diffs += classify(base, ro).verdict != classify(x, ro).verdict;
              const auto a = minimize_boxtimes(quadruple(base, ro)), b = minimize_boxtimes(quadruple(x, ro));
              diffs += std::abs(a.at.s - b.at.s) > pinned::argmin_tol || std::abs(a.at.t - b.at.t) > pinned::argmin_tol;
            }
      if (si == 0 || si > 4 || base.size() != 5) continue;
      for (const auto& g : graphs) {
        const std::vector<std::size_t> f{0, 1, 2, 3, 4};
        auto verdict = [&](const MetricSpace& y) {
          try {
            return verify(y, f, g, construct(y, f, g)).pass;
          } catch (const Error&) {
            return false;
          }
        };
        ++checks;
        diffs += verdict(base) != verdict(x);
      }
    }
  }
  r.seconds = detail::since(t0);
  r.pass = diffs == 0;
  r.detail = std::to_string(checks) + " comparisons at scales 1e-3 and 1e3, " + std::to_string(diffs) + " differences";
  return r;
}

namespace detail {

struct PatternTally {
  std::size_t instances = 0, counterexamples = 0;
};

inline std::string tally(const char* name, const PatternTally& t) {
  return std::string(name) + " " + std::to_string(t.counterexamples) + "/" + std::to_string(t.instances);
}

// Robust verdict: classification away from the boundary by the pattern margin.
inline std::optional<QuadVerdict> robust(const MetricSpace& m, std::array<std::size_t, 4> ro) {
  const auto c = classify(m, ro, pinned::pattern_margin);
  const double d = m.d(ro[1], ro[3]), eps = pinned::pattern_margin * m.scale();
  if (d < c.lo - eps) return QuadVerdict::UnderDistance;
  if (d > c.hi + eps) return QuadVerdict::OverDistance;
  if (d > c.lo + eps && d < c.hi - eps) return QuadVerdict::Embeddable;
  return std::nullopt;
}

// Planar placements of (x, y, z, w) with w on either side of line xz, computed directly.
inline std::array<std::array<Vec2, 4>, 2> planar_placements(const MetricSpace& m, std::array<std::size_t, 4> ro) {
  const double xz = m.d(ro[0], ro[2]);
  auto apex = [&](std::size_t p, double sign) {
    const double a = (m.d2(ro[0], p) + xz * xz - m.d2(ro[2], p)) / (2 * xz);
    return Vec2(a, sign * std::sqrt(std::max(0.0, m.d2(ro[0], p) - a * a)));
  };
  const Vec2 x(0, 0), z(xz, 0), y = apex(ro[1], 1.0);
  return {{{x, y, z, apex(ro[3], 1.0)}, {x, y, z, apex(ro[3], -1.0)}}};
}

}  // namespace detail

inline Result criterion_10(const Config& cfg) {
  Result r{10, "four-point lemma patterns"};
  const auto t0 = detail::Clock::now();
  detail::PatternTally crossing, angle, triple, bounds, five;
  const double pi = std::numbers::pi, tol = pinned::pattern_margin;
  std::uint64_t k = 0;
  auto enough = [&] {
    return crossing.instances >= pinned::pattern_instances && angle.instances >= pinned::pattern_instances &&
           triple.instances >= pinned::pattern_instances && bounds.instances >= pinned::pattern_instances &&
           five.instances >= pinned::pattern_instances;
  };
  for (; !enough() && k < 200000; ++k) {
    const std::uint64_t s = cfg.seed + 104729 * k;
    const auto m = k % 2 ? generate(gen::Tree{}, 5, s) : detail::blended(5, s, 0.15 * static_cast<double>(k % 5));
    if (!space_satisfies(m, pinned::decide_tol).holds()) continue;
    bool distinct = true;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) distinct = distinct && m.d(i, j) > tol * m.scale();
    if (!distinct) continue;
    auto ang = [&](std::size_t a, std::size_t b, std::size_t c) { return cangle(m, a, b, c); };
    for (const auto& perm : permutations(5)) {
      const std::size_t x = perm[0], y = perm[1], z = perm[2], w = perm[3], p = perm[4];
      const std::array<std::size_t, 4> ro{x, y, z, w};
      const auto v = detail::robust(m, ro);
      if (v == QuadVerdict::UnderDistance) {
        ++crossing.instances;
        for (const auto& pl : detail::planar_placements(m, ro)) {
          const double eps = geom::area_eps(m.scale());
          const bool meet = geom::segments_intersect(pl[0], pl[1], pl[2], pl[3], -eps) ||
                            geom::segments_intersect(pl[0], pl[3], pl[1], pl[2], -eps);
          const bool flat = geom::collinear(pl[0], pl[1], pl[2], -eps) && geom::collinear(pl[0], pl[2], pl[3], -eps);
          if (meet || flat) {
            ++crossing.counterexamples;
            break;
          }
        }
      }
      if (v == QuadVerdict::OverDistance) {
        ++angle.instances;
        if (!(ang(y, x, z) + ang(z, x, w) > pi - tol || ang(y, z, x) + ang(x, z, w) > pi - tol)) ++angle.counterexamples;
      }
      // Over-distance with respect to {x,w} and {y,w}: roles (y, x, z, w) and (x, y, z, w).
      const auto vx = detail::robust(m, {y, x, z, w});
      if (v == QuadVerdict::OverDistance && vx == QuadVerdict::OverDistance) {
        ++triple.instances;
        if (detail::robust(m, {x, z, y, w}) == QuadVerdict::OverDistance) ++triple.counterexamples;
        ++bounds.instances;
        if (!(ang(x, z, y) + ang(y, z, w) > pi - tol && ang(x, z, y) + ang(x, z, w) > pi - tol)) ++bounds.counterexamples;
      }
      // Five points: {p,x,y,z} under for {x,y} and {y,z}; {p,y,z,w} under for {y,z} and {z,w}.
      if (detail::robust(m, {p, x, z, y}) == QuadVerdict::UnderDistance &&
          detail::robust(m, {p, y, x, z}) == QuadVerdict::UnderDistance &&
          detail::robust(m, {p, y, w, z}) == QuadVerdict::UnderDistance &&
          detail::robust(m, {p, z, y, w}) == QuadVerdict::UnderDistance) {
        ++five.instances;
        if (!(ang(x, p, y) + ang(y, p, w) < pi + tol && ang(x, p, z) + ang(z, p, w) < pi + tol)) ++five.counterexamples;
      }
    }
  }
  r.seconds = detail::since(t0);
  const std::size_t cx = crossing.counterexamples + angle.counterexamples + triple.counterexamples +
                         bounds.counterexamples + five.counterexamples;
  r.pass = cx == 0 && enough();
  r.detail = "counterexamples/instances: " + detail::tally("non-crossing", crossing) + ", " +
             detail::tally("over-angle", angle) + ", " + detail::tally("no-triple-over", triple) + ", " +
             detail::tally("angle-bounds", bounds) + ", " + detail::tally("five-point-bounds", five) + " over " +
             std::to_string(k) + " spaces";
  return r;
}

inline std::vector<Result> run_all(const Config& cfg = {}, const std::function<void(const Result&)>& on_result = {}) {
  std::vector<Result> out;
  detail::State st;
  auto add = [&](Result r) {
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  };
  add(criterion_1());
  add(criterion_2());
  add(criterion_3(cfg));
  add(criterion_4(cfg));
  add(criterion_5(cfg));
  add(criterion_6(cfg, st));
  add(criterion_7(st));
  add(criterion_8(st));
  add(criterion_9(cfg));
  add(criterion_10(cfg));
  return out;
}

inline std::string line(const Result& r) {
  std::ostringstream os;
  os << "criterion " << std::setw(2) << r.id << " " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  ["
     << std::fixed << std::setprecision(2) << r.seconds << " s]  " << r.detail;
  return os.str();
}

}  // namespace cat0::selftest
