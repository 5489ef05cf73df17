#pragma once

#include <random>
#include <variant>

#include "cat0/boxtimes.hpp"
#include "cat0/geodesic.hpp"

namespace cat0 {

namespace gen {

struct Euclidean {
  int dim = 3;
};
struct Tree {};
struct Perturbed {
  double eps = 0.1;  // relative multiplicative noise on a planar sample
};
struct ComplexSample {};

}  // namespace gen

using GenKind = std::variant<gen::Euclidean, gen::Tree, gen::Perturbed, gen::ComplexSample>;

struct Generated {
  MetricSpace space;
  std::size_t attempts = 1;
  bool boxtimes_holds = true;
};

namespace detail {

inline MetricSpace from_points(const std::vector<Vec3>& p) {
  const std::size_t n = p.size();
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = (p[i] - p[j]).norm();
  return MetricSpace::trusted(default_labels(n), std::move(flat));
}

inline MetricSpace gen_euclidean(int dim, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<Vec3> p(n, Vec3::Zero());
  for (auto& q : p)
    for (int k = 0; k < dim; ++k) q[k] = nd(rng);
  return from_points(p);
}

// Leaves and inner nodes of a random weighted tree; the points are n distinct nodes.
inline MetricSpace gen_tree(std::size_t n, std::mt19937_64& rng) {
  const std::size_t nodes = 2 * n;
  std::uniform_real_distribution<double> w(0.1, 1.0);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(nodes, std::vector<double>(nodes, inf));
  for (std::size_t i = 0; i < nodes; ++i) d[i][i] = 0.0;
  for (std::size_t i = 1; i < nodes; ++i) {
    const std::size_t parent = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
    d[i][parent] = d[parent][i] = w(rng);
  }
  for (std::size_t k = 0; k < nodes; ++k)
    for (std::size_t i = 0; i < nodes; ++i)
      for (std::size_t j = 0; j < nodes; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::vector<std::size_t> pick(nodes);
  std::iota(pick.begin(), pick.end(), 0);
  std::shuffle(pick.begin(), pick.end(), rng);
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = d[pick[i]][pick[j]];
  return MetricSpace::trusted(default_labels(n), std::move(flat));
}

// Cone of k flat triangles around an apex with total angle in [2 pi, 2.6 pi];
// points are drawn uniformly from the triangles.
inline MetricSpace gen_complex(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kd(4, 6);
  const int k = kd(rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> angle(k), radius(k);
  double total = 0.0;
  for (auto& a : angle) total += (a = 0.5 + u(rng));
  const double target = 2.0 * std::numbers::pi * (1.0 + 0.3 * u(rng));
  for (auto& a : angle) a *= target / total;
  if (*std::max_element(angle.begin(), angle.end()) >= std::numbers::pi - 0.05) return gen_complex(n, rng);
  for (auto& r : radius) r = 0.5 + u(rng);

  ComplexBuilder b;
  std::vector<std::size_t> tri(k);
  auto rim = [](int i) { return "r" + std::to_string(i); };
  for (int i = 0; i < k; ++i) {
    const int j = (i + 1) % k;
    const double side = std::sqrt(std::max(
        0.0, radius[i] * radius[i] + radius[j] * radius[j] - 2.0 * radius[i] * radius[j] * std::cos(angle[i])));
    tri[i] = b.add_triangle({"o", rim(i), rim(j)}, radius[i], side, radius[j]);
  }
  for (int i = 0; i < k; ++i) b.glue_segment(tri[i], tri[(i + 1) % k], "o", rim((i + 1) % k));
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t piece = tri[std::uniform_int_distribution<int>(0, k - 1)(rng)];
    double a = u(rng), c = u(rng);
    if (a + c > 1.0) a = 1.0 - a, c = 1.0 - c;
    b.mark_bary("p" + std::to_string(p), piece, {1.0 - a - c, a, c});
  }
  const auto cx = b.build();
  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) flat[i * n + j] = flat[j * n + i] = distance(cx, i, j);
  return MetricSpace::trusted(default_labels(n), std::move(flat));
}

inline bool is_metric(const MetricSpace& x, double tol) {
  const double eps = tol * x.scale();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      for (std::size_t k = 0; k < x.size(); ++k)
        if (x.d(i, k) > x.d(i, j) + x.d(j, k) + eps) return false;
  return true;
}

}  // namespace detail

// Deterministic for a fixed (kind, n, seed). Euclidean, tree and complex samples
// embed in a CAT(0) space; perturbed samples are resampled until they form a metric.
inline Generated generate_detail(const GenKind& kind, std::size_t n, std::uint64_t seed, double tol = kDefaultTol) {
  if (n == 0) throw Error(ErrorKind::BadParams, "n must be positive");
  std::mt19937_64 rng(seed);
  Generated out;
  if (const auto* e = std::get_if<gen::Euclidean>(&kind)) {
    if (e->dim < 1 || e->dim > 3) throw Error(ErrorKind::BadParams, "dim must be 1, 2 or 3");
    out.space = detail::gen_euclidean(e->dim, n, rng);
  } else if (std::holds_alternative<gen::Tree>(kind)) {
    out.space = detail::gen_tree(n, rng);
  } else if (std::holds_alternative<gen::ComplexSample>(kind)) {
    out.space = detail::gen_complex(n, rng);
  } else {
    const double eps = std::get<gen::Perturbed>(kind).eps;
    if (!(eps >= 0.0)) throw Error(ErrorKind::BadParams, "eps must be nonnegative");
    std::uniform_real_distribution<double> noise(-eps, eps);
    for (out.attempts = 1;; ++out.attempts) {
      const auto base = detail::gen_euclidean(2, n, rng);
      std::vector<double> flat(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) flat[i * n + j] = flat[j * n + i] = base.d(i, j) * (1.0 + noise(rng));
      auto cand = MetricSpace::trusted(default_labels(n), std::move(flat));
      if (detail::is_metric(cand, tol)) {
        out.space = std::move(cand);
        break;
      }
      if (out.attempts >= 100000) throw Error(ErrorKind::BadParams, "no valid metric after 100000 draws");
    }
    out.boxtimes_holds = space_satisfies(out.space, tol).holds();
    return out;
  }
  out.boxtimes_holds = space_satisfies(out.space, tol).holds();
  return out;
}

inline MetricSpace generate(const GenKind& kind, std::size_t n, std::uint64_t seed) {
  return generate_detail(kind, n, seed).space;
}

}  // namespace cat0
