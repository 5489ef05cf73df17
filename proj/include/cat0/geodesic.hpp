#pragma once

#include <Eigen/Dense>
#include <limits>
#include <queue>
#include <vector>

#include "cat0/complex.hpp"

namespace cat0 {

struct DistanceConfig {
  int max_walk = 6;     // gluing crossings per walk
  int max_visits = 2;   // visits of one gluing per walk
  double gap = 1e-12;   // barrier duality gap, relative to the complex scale
};

struct DistanceResult {
  double value = std::numeric_limits<double>::infinity();
  int walks_solved = 0;
  int best_walk_length = -1;
  bool cap_reached = false;  // the best walk used the full crossing budget
};

namespace detail {

inline double point_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double l2 = ab.squaredNorm();
  if (l2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / l2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

inline double segment_segment(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
  const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  if (a == 0.0 && e == 0.0) return r.norm();
  if (a == 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e == 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2), den = a * e - b * b;
      s = den > 0.0 ? std::clamp((b * f - c * e) / den, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p1 + s * d1) - (p2 + t * d2)).norm();
}

inline double point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a);
  const double nn = n.squaredNorm();
  if (nn > 0.0) {
    const Vec3 proj = p - n * ((p - a).dot(n) / nn);
    const Vec3 w = geom::barycentric(proj, a, b, c);
    if (w.minCoeff() >= 0.0) return (p - proj).norm();
  }
  return std::min({point_segment(p, a, b), point_segment(p, b, c), point_segment(p, c, a)});
}

// Lower bound on the Euclidean distance between two simplices given by vertices.
inline double simplex_gap(const std::vector<Vec3>& A, const std::vector<Vec3>& B) {
  if (A.size() > B.size()) return simplex_gap(B, A);
  if (A.size() == 1 && B.size() == 1) return (A[0] - B[0]).norm();
  if (A.size() == 1 && B.size() == 2) return point_segment(A[0], B[0], B[1]);
  if (A.size() == 2 && B.size() == 2) return segment_segment(A[0], A[1], B[0], B[1]);
  if (A.size() == 1 && B.size() == 3) return point_triangle(A[0], B[0], B[1], B[2]);
  return 0.0;
}

struct Crossing {
  std::vector<Vec3> before, after;  // feature vertices in the piece left and the piece entered
};

// Shortest path along a fixed crossing sequence: minimize a sum of Euclidean norms
// of affine functions of the crossing parameters (a second-order cone program),
// by a log-barrier Newton method. Returns the length of the final path, or
// stops early once the walk is certified longer than `cutoff`.
inline double solve_walk(const Vec3& p, const Vec3& q, const std::vector<Crossing>& cr, double scale, double gap,
                         double cutoff = std::numeric_limits<double>::infinity()) {
  const std::size_t m = cr.size(), L = m + 1;
  const double inv = scale > 0.0 ? 1.0 / scale : 1.0;
  std::vector<std::size_t> off(m + 1, 0);
  for (std::size_t k = 0; k < m; ++k) off[k + 1] = off[k] + cr[k].before.size() - 1;
  const std::size_t nz = off[m];

  std::vector<Eigen::MatrixXd> M(L, Eigen::MatrixXd::Zero(3, nz));
  std::vector<Vec3> g(L, Vec3::Zero());
  g[0] -= p * inv;
  g[m] += q * inv;
  for (std::size_t k = 0; k < m; ++k) {
    const auto& B = cr[k].before;
    const auto& A = cr[k].after;
    g[k] += B[0] * inv;  // leg k ends at crossing k
    g[k + 1] -= A[0] * inv;  // leg k+1 starts there
    for (std::size_t i = 1; i < B.size(); ++i) {
      M[k].col(off[k] + i - 1) += (B[i] - B[0]) * inv;
      M[k + 1].col(off[k] + i - 1) -= (A[i] - A[0]) * inv;
    }
  }

  Eigen::VectorXd z(nz);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = off[k]; i < off[k + 1]; ++i) z[i] = 1.0 / static_cast<double>(cr[k].before.size());

  auto path_length = [&](const Eigen::VectorXd& zz) {
    double len = 0.0;
    for (std::size_t j = 0; j < L; ++j) len += (M[j] * zz + g[j]).norm();
    return len * scale;
  };
  if (nz == 0) return path_length(z);

  // Linear constraints c.z + e >= 0: nonnegative weights, weights summing to at most one.
  std::vector<Eigen::VectorXd> C;
  std::vector<double> E;
  for (std::size_t k = 0; k < m; ++k) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(nz);
    for (std::size_t i = off[k]; i < off[k + 1]; ++i) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(nz);
      c[i] = 1.0;
      C.push_back(c);
      E.push_back(0.0);
      sum[i] = -1.0;
    }
    C.push_back(sum);
    E.push_back(1.0);
  }

  const std::size_t n = nz + L;
  Eigen::VectorXd x(n);
  x.head(nz) = z;
  for (std::size_t j = 0; j < L; ++j) x[nz + j] = (M[j] * z + g[j]).norm() + 1.0;

  auto feasible = [&](const Eigen::VectorXd& v) {
    for (std::size_t i = 0; i < C.size(); ++i)
      if (C[i].dot(v.head(nz)) + E[i] <= 0.0) return false;
    for (std::size_t j = 0; j < L; ++j) {
      const double s = v[nz + j];
      if (s <= 0.0 || s * s - (M[j] * v.head(nz) + g[j]).squaredNorm() <= 0.0) return false;
    }
    return true;
  };
  double t = 1.0;
  auto objective = [&](const Eigen::VectorXd& v) {
    double f = 0.0;
    for (std::size_t j = 0; j < L; ++j) {
      const double s = v[nz + j];
      f += t * s - std::log(s * s - (M[j] * v.head(nz) + g[j]).squaredNorm());
    }
    for (std::size_t i = 0; i < C.size(); ++i) f -= std::log(C[i].dot(v.head(nz)) + E[i]);
    return f;
  };

  const double degree = static_cast<double>(2 * L + C.size());
  Eigen::VectorXd grad(n);
  Eigen::MatrixXd H(n, n);
  for (int outer = 0; outer < 80; ++outer) {
    for (int it = 0; it < 100; ++it) {
      grad.setZero();
      H.setZero();
      const Eigen::VectorXd zz = x.head(nz);
      for (std::size_t j = 0; j < L; ++j) {
        const double s = x[nz + j];
        const Vec3 r = M[j] * zz + g[j];
        const double D = s * s - r.squaredNorm();
        const Eigen::VectorXd mr = M[j].transpose() * r;
        grad[nz + j] += t - 2.0 * s / D;
        grad.head(nz) += 2.0 * mr / D;
        H(nz + j, nz + j) += -2.0 / D + 4.0 * s * s / (D * D);
        const Eigen::VectorXd cross = -4.0 * s * mr / (D * D);
        H.block(0, nz + j, nz, 1) += cross;
        H.block(nz + j, 0, 1, nz) += cross.transpose();
        H.topLeftCorner(nz, nz) += 2.0 * M[j].transpose() * M[j] / D + 4.0 * mr * mr.transpose() / (D * D);
      }
      for (std::size_t i = 0; i < C.size(); ++i) {
        const double l = C[i].dot(zz) + E[i];
        grad.head(nz) -= C[i] / l;
        H.topLeftCorner(nz, nz) += C[i] * C[i].transpose() / (l * l);
      }
      const Eigen::VectorXd step = H.ldlt().solve(-grad);
      const double dec = -grad.dot(step);
      if (!(dec > 1e-10)) break;
      double alpha = 1.0;
      const double f0 = objective(x);
      Eigen::VectorXd trial = x + alpha * step;
      while (alpha > 1e-20 && (!feasible(trial) || objective(trial) > f0 - 0.25 * alpha * dec)) {
        alpha *= 0.5;
        trial = x + alpha * step;
      }
      if (alpha <= 1e-20) break;
      x = trial;
    }
    if (degree / t < gap) break;
    // Near the central path the length exceeds the optimum by at most degree / t.
    if (path_length(x.head(nz)) - 2.0 * degree / t * scale > cutoff) return path_length(x.head(nz));
    t *= 16.0;
  }
  return path_length(x.head(nz));
}

}  // namespace detail

// Intrinsic distance between two marks: minimum over admissible crossing
// sequences of the exact shortest path along that sequence.
inline DistanceResult distance_detail(const ComplexSpace& c, std::size_t i, std::size_t j,
                                      const DistanceConfig& cfg = {}) {
  const auto& P = c.pieces();
  const auto& G = c.elementary();
  const auto& mi = c.marks().at(i);
  const auto& mj = c.marks().at(j);
  const Vec3 p = c.mark_position(i), q = c.mark_position(j);
  const double sc = std::max(c.scale(), 1e-300);

  // adjacency: piece -> (gluing, direction)
  std::vector<std::vector<std::pair<std::size_t, bool>>> adj(P.size());
  for (std::size_t k = 0; k < G.size(); ++k) {
    adj[G[k].a.piece].push_back({k, true});
    adj[G[k].b.piece].push_back({k, false});
  }
  auto verts = [&](const GlueSide& s) {
    std::vector<Vec3> v;
    for (auto idx : s.verts) v.push_back(P[s.piece].gens[idx]);
    return v;
  };

  DistanceResult res;
  if (mi.piece == mj.piece) {
    res.value = (p - q).norm();
    res.best_walk_length = 0;
  }
  std::vector<detail::Crossing> walk;
  std::vector<int> visits(G.size(), 0);
  const double slack = 1e-12 * sc;

  for (int len = 1; len <= cfg.max_walk; ++len) {
    // Depth-first over walks of exactly `len` crossings, pruned by per-leg lower bounds.
    auto dfs = [&](auto&& self, std::size_t piece, const std::vector<Vec3>& from, double lb, std::size_t last) -> void {
      if (lb >= res.value - slack) return;
      if (static_cast<int>(walk.size()) == len) {
        if (piece != mj.piece) return;
        if (lb + detail::simplex_gap(from, {q}) >= res.value - slack) return;
        const double v = detail::solve_walk(p, q, walk, sc, cfg.gap, res.value);
        ++res.walks_solved;
        if (v < res.value) {
          res.value = v;
          res.best_walk_length = len;
        }
        return;
      }
      for (auto [k, forward] : adj[piece]) {
        if (k == last || visits[k] >= cfg.max_visits) continue;
        const GlueSide& here = forward ? G[k].a : G[k].b;
        const GlueSide& there = forward ? G[k].b : G[k].a;
        auto fv = verts(here);
        const double leg = detail::simplex_gap(from, fv);
        ++visits[k];
        walk.push_back({fv, verts(there)});
        self(self, there.piece, walk.back().after, lb + leg, k);
        walk.pop_back();
        --visits[k];
      }
    };
    dfs(dfs, mi.piece, {p}, 0.0, std::numeric_limits<std::size_t>::max());
  }
  res.cap_reached = res.best_walk_length == cfg.max_walk;
  if (!std::isfinite(res.value)) throw Error(ErrorKind::UnreachableMark, mi.name + " to " + mj.name);
  return res;
}

inline double distance(const ComplexSpace& c, std::size_t i, std::size_t j, const DistanceConfig& cfg = {}) {
  return distance_detail(c, i, j, cfg).value;
}

inline double distance(const ComplexSpace& c, const std::string& a, const std::string& b, const DistanceConfig& cfg = {}) {
  return distance(c, c.mark_index(a), c.mark_index(b), cfg);
}

inline std::vector<std::vector<double>> distance_matrix(const ComplexSpace& c, const DistanceConfig& cfg = {}) {
  const std::size_t n = c.marks().size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = distance(c, i, j, cfg);
  return d;
}

// Upper bound from Dijkstra over samples of every glued feature plus the marks.
// Segment features get mesh_n intervals, facets a grid of mesh_n/4.
inline std::vector<std::vector<double>> distance_oracle_all(const ComplexSpace& c, int mesh_n) {
  if (mesh_n < 2) throw Error(ErrorKind::BadParams, "mesh_n must be at least 2");
  const auto& P = c.pieces();
  std::vector<std::vector<std::pair<std::size_t, Vec3>>> in_piece(P.size());
  std::size_t nodes = 0;
  auto add_node = [&](std::initializer_list<std::pair<std::size_t, Vec3>> where) {
    for (const auto& [piece, x] : where) in_piece[piece].push_back({nodes, x});
    return nodes++;
  };
  for (std::size_t k = 0; k < c.marks().size(); ++k) add_node({{c.marks()[k].piece, c.mark_position(k)}});

  for (const auto& g : c.elementary()) {
    auto at = [&](const GlueSide& s, const std::vector<double>& w) {
      Vec3 x = Vec3::Zero();
      for (std::size_t i = 0; i < w.size(); ++i) x += w[i] * P[s.piece].gens[s.verts[i]];
      return x;
    };
    auto emit = [&](const std::vector<double>& w) { add_node({{g.a.piece, at(g.a, w)}, {g.b.piece, at(g.b, w)}}); };
    switch (g.a.verts.size()) {
      case 1: emit({1.0}); break;
      case 2:
        for (int i = 0; i <= mesh_n; ++i) {
          const double t = static_cast<double>(i) / mesh_n;
          emit({1.0 - t, t});
        }
        break;
      default: {
        const int m = std::max(1, mesh_n / 4);
        for (int i = 0; i <= m; ++i)
          for (int j = 0; i + j <= m; ++j) {
            const double u = static_cast<double>(i) / m, v = static_cast<double>(j) / m;
            emit({std::max(0.0, 1.0 - u - v), u, v});
          }
      }
    }
  }
  std::vector<std::vector<std::pair<std::size_t, Vec3>>> where(nodes);
  for (std::size_t p = 0; p < P.size(); ++p)
    for (const auto& [node, x] : in_piece[p]) where[node].push_back({p, x});

  const std::size_t nm = c.marks().size();
  std::vector<std::vector<double>> out(nm, std::vector<double>(nm, 0.0));
  using Item = std::pair<double, std::size_t>;
  for (std::size_t src = 0; src < nm; ++src) {
    std::vector<double> dist(nodes, std::numeric_limits<double>::infinity());
    std::vector<char> done(nodes, 0);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (done[u]) continue;
      done[u] = 1;
      for (const auto& [piece, xu] : where[u])
        for (const auto& [v, xv] : in_piece[piece]) {
          if (done[v]) continue;
          const double nd = du + (xu - xv).norm();
          if (nd < dist[v]) {
            dist[v] = nd;
            pq.push({nd, v});
          }
        }
    }
    for (std::size_t t = 0; t < nm; ++t) out[src][t] = dist[t];
  }
  return out;
}

inline double distance_oracle(const ComplexSpace& c, std::size_t i, std::size_t j, int mesh_n) {
  return distance_oracle_all(c, mesh_n).at(i).at(j);
}

}  // namespace cat0
