#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "cat0/boxtimes.hpp"
#include "cat0/graph.hpp"

namespace cat0 {

// sum_{i<j} a_ij d(x_i, x_j)^2 >= 0, coefficients keyed by (i, j) with i < j.
struct QuadraticInequality {
  std::size_t n = 0;
  std::map<std::pair<std::size_t, std::size_t>, double> a;

  double coeff(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = a.find({i, j});
    return it == a.end() ? 0.0 : it->second;
  }
  void set(std::size_t i, std::size_t j, double v) {
    if (i == j || i >= n || j >= n) throw Error(ErrorKind::BadIndex, "pair out of range");
    if (i > j) std::swap(i, j);
    a[{i, j}] = v;
  }
};

inline double evaluate(const QuadraticInequality& q, const MetricSpace& x, const std::vector<std::size_t>& tuple) {
  if (tuple.size() != q.n) throw Error(ErrorKind::ArityMismatch, "tuple length differs from arity");
  double s = 0.0;
  for (const auto& [ij, c] : q.a) s += c * x.d2(tuple.at(ij.first), tuple.at(ij.second));
  return s;
}

struct TupleMin {
  double value = 0.0;
  std::vector<std::size_t> tuple;
};

// Exhaustive over all |X|^n tuples, repeats allowed; ties keep the first in lexicographic order.
inline TupleMin min_over_tuples(const QuadraticInequality& q, const MetricSpace& x) {
  if (x.size() == 0) throw Error(ErrorKind::EmptySubset, "empty space");
  std::vector<std::size_t> t(q.n, 0);
  TupleMin best{evaluate(q, x, t), t};
  while (true) {
    std::size_t k = 0;
    while (k < q.n && ++t[k] == x.size()) t[k++] = 0;
    if (k == q.n) break;
    const double v = evaluate(q, x, t);
    if (v < best.value) best = {v, t};
  }
  return best;
}

// Pairs with a strictly positive coefficient.
inline SimpleGraph associated_graph(const QuadraticInequality& q) {
  SimpleGraph g(q.n);
  for (const auto& [ij, c] : q.a)
    if (c > 0.0) g.add_edge(ij.first, ij.second);
  return g;
}

// Roles (x, y, z, w) are indices 0..3.
inline QuadraticInequality boxtimes_family(double s, double t) {
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::ParamOutOfRange, "(s,t) outside [0,1]^2");
  QuadraticInequality q{4, {}};
  auto put = [&](std::size_t i, std::size_t j, double v) {
    if (v != 0.0) q.set(i, j, v);
  };
  put(0, 1, (1 - t) * (1 - s));
  put(1, 2, t * (1 - s));
  put(2, 3, t * s);
  put(0, 3, (1 - t) * s);
  put(0, 2, -t * (1 - t));
  put(1, 3, -s * (1 - s));
  return q;
}

inline QuadraticInequality quadrilateral() {
  QuadraticInequality q{4, {}};
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {2, 3}, {0, 3}}) q.set(i, j, 1.0);
  q.set(0, 2, -1.0);
  q.set(1, 3, -1.0);
  return q;
}

// Returns Q evaluated on the tuple after checking that the model distances
// follow the associated-graph pattern: <= on positive pairs, >= elsewhere.
// Then sum a_ij d_X^2 >= sum a_ij d_model^2.
inline double transfer_bound(const QuadraticInequality& q, const MetricSpace& x, const std::vector<std::size_t>& tuple,
                             const std::function<double(std::size_t, std::size_t)>& model, double tol = kDefaultTol) {
  if (tuple.size() != q.n) throw Error(ErrorKind::ArityMismatch, "tuple length differs from arity");
  const double eps = tol * x.scale();
  for (const auto& [ij, c] : q.a) {
    if (c == 0.0) continue;
    const auto [i, j] = ij;
    const double dx = x.d(tuple[i], tuple[j]), dm = model(i, j);
    const bool ok = c > 0.0 ? dm <= dx + eps : dm >= dx - eps;
    if (!ok)
      throw Error(ErrorKind::PatternViolated, "pair (" + std::to_string(i) + "," + std::to_string(j) + ") metric " +
                                                  std::to_string(dx) + " model " + std::to_string(dm));
  }
  return evaluate(q, x, tuple);
}

// Right-hand side of the transfer chain: the inequality evaluated on model distances.
inline double model_value(const QuadraticInequality& q, const std::function<double(std::size_t, std::size_t)>& model) {
  double s = 0.0;
  for (const auto& [ij, c] : q.a) s += c * model(ij.first, ij.second) * model(ij.first, ij.second);
  return s;
}

}  // namespace cat0
