#pragma once

#include <functional>
#include <random>
#include <sstream>

#include "cat0/boxtimes.hpp"
#include "cat0/witness_model.hpp"

namespace cat0 {

struct WitnessConfig {
  double tol = kDefaultTol;  // classification and verification tolerance, relative to the metric scale
  std::size_t multistarts = 64;
  std::size_t max_iterations = 10000;
  std::uint64_t seed = 1;
  DistanceConfig distance;
};

namespace detail {

inline std::string vname(std::size_t v) { return std::to_string(v); }

inline std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

inline Witness plain(Model m, std::size_t n, StrategyTag tag, std::string prov) {
  Witness w;
  w.model = std::move(m);
  w.assignment = iota_vec(n);
  w.strategy.tag = tag;
  w.provenance = std::move(prov);
  return w;
}

// Complex model whose vertex v is the mark named vname(v).
inline Witness complex_witness(const ComplexBuilder& b, std::size_t n, double tol, bool nonneg = false) {
  ComplexModel cm{b.build(tol), {}};
  cm.space.set_nonneg_surface(nonneg);
  for (std::size_t v = 0; v < n; ++v) cm.marks.push_back(cm.space.mark_index(vname(v)));
  Witness w;
  w.model = std::move(cm);
  w.assignment = iota_vec(n);
  return w;
}

inline Witness kirszbraun(Witness w, std::size_t center) {
  w.kirszbraun_required = true;
  w.kirszbraun_center = center;
  return w;
}

// Barycentric weights clamped to the triangle.
inline std::vector<double> clamp_bary(const Vec3& b) {
  std::vector<double> w{std::max(0.0, b[0]), std::max(0.0, b[1]), std::max(0.0, b[2])};
  const double s = w[0] + w[1] + w[2];
  for (auto& x : w) x /= s;
  return w;
}

// R^3 realization of the quadruple (a, b, c, d), in that order, when one exists.
inline std::optional<std::array<Vec3, 4>> embed4(const MetricSpace& m, std::array<std::size_t, 4> v, double tol) {
  for (auto [i, j] : kPairs) {
    std::array<int, 2> fr{};
    int k = 0;
    for (int t = 0; t < 4; ++t)
      if (t != i && t != j) fr[k++] = t;
    const auto c = classify(m, {v[fr[0]], v[i], v[fr[1]], v[j]}, tol);
    if (c.verdict != QuadVerdict::Embeddable) continue;
    std::array<Vec3, 4> out;
    out[fr[0]] = c.embedding->pts[0];
    out[i] = c.embedding->pts[1];
    out[fr[1]] = c.embedding->pts[2];
    out[j] = c.embedding->pts[3];
    return out;
  }
  return std::nullopt;
}

// Orthogonal map taking src onto dst (least squares), applied to p.
inline Vec3 align(const std::array<Vec3, 3>& src, const std::array<Vec3, 3>& dst, const Vec3& p) {
  const Vec3 cs = (src[0] + src[1] + src[2]) / 3.0, cd = (dst[0] + dst[1] + dst[2]) / 3.0;
  Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
  for (int i = 0; i < 3; ++i) H += (src[i] - cs) * (dst[i] - cd).transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d R = svd.matrixV() * svd.matrixU().transpose();
  return R * (p - cs) + cd;
}

// Point with barycentric coordinates (w.r.t. src) carried to the triangle dst.
inline Vec3 transfer(const Vec3& p, const std::array<Vec3, 3>& src, const std::array<Vec3, 3>& dst) {
  const Vec3 b = geom::barycentric(p, src[0], src[1], src[2]);
  return b[0] * dst[0] + b[1] * dst[1] + b[2] * dst[2];
}

// A disc D(apex; a, b, c) on the quadruple, if its comparison angles at the apex reach 2 pi.
struct DiscChoice {
  std::size_t apex, a, other, b;  // pivot {a, b}
};

inline std::vector<DiscChoice> disc_choices(const MetricSpace& m, std::array<std::size_t, 4> v, double tol,
                                            std::optional<std::size_t> pivot_end = std::nullopt) {
  std::vector<DiscChoice> out;
  for (auto [i, j] : kPairs) {
    if (pivot_end && v[i] != *pivot_end && v[j] != *pivot_end) continue;
    std::array<std::size_t, 2> fr{};
    int k = 0;
    for (int t = 0; t < 4; ++t)
      if (t != i && t != j) fr[k++] = v[t];
    const auto q = quad_distances(m, {fr[0], v[i], fr[1], v[j]});
    if (classify(q, tol).verdict != QuadVerdict::OverDistance) continue;
    const auto apex = over_distance_apex(q);
    if (!apex) continue;
    const std::size_t a1 = *apex == 0 ? fr[0] : fr[1], a3 = *apex == 0 ? fr[1] : fr[0];
    // Orient the pivot so that `b` is the pivot end asked for.
    std::size_t a = v[i], b = v[j];
    if (pivot_end && a == *pivot_end) std::swap(a, b);
    out.push_back({a1, a, a3, b});
  }
  return out;
}

inline std::array<std::size_t, 3> add_disc(ComplexBuilder& b, const MetricSpace& m, const DiscChoice& c, double tol) {
  return cat0::add_disc(b, {vname(c.apex), vname(c.a), vname(c.other), vname(c.b)}, m.d(c.apex, c.a),
                        m.d(c.apex, c.other), m.d(c.apex, c.b), m.d(c.a, c.other), m.d(c.other, c.b), m.d(c.b, c.a),
                        tol);
}

inline double apex_sum(const MetricSpace& m, const DiscChoice& c) {
  return disc_apex_sum(m.d(c.apex, c.a), m.d(c.apex, c.other), m.d(c.apex, c.b), m.d(c.a, c.other),
                       m.d(c.other, c.b), m.d(c.b, c.a));
}

inline bool disc_ok(const MetricSpace& m, const DiscChoice& c, double tol) {
  return apex_sum(m, c) >= 2.0 * std::numbers::pi - tol;
}

}  // namespace detail

// Isometric copy of at most four distinct points: a line, the plane, R^3, or a disc.
inline Witness exact_embedding(const MetricSpace& y, double tol = kDefaultTol) {
  const std::size_t n = y.size();
  if (n == 0) throw Error(ErrorKind::EmptySubset, "no points");
  if (n > 4) throw Error(ErrorKind::TooManyPoints, std::to_string(n));
  if (n <= 2) {
    RealLine r{{0.0}};
    if (n == 2) r.values.push_back(y.d(0, 1));
    return detail::plain(r, n, StrategyTag::Planar, "exact-line");
  }
  if (n == 3) {
    const auto t = place_triangle(y.d(0, 1), y.d(1, 2), y.d(2, 0), tol);
    return detail::plain(PointSet{2, {geom::lift(t[0]), geom::lift(t[1]), geom::lift(t[2])}}, n, StrategyTag::Planar,
                         "exact-plane");
  }
  if (auto e = detail::embed4(y, {0, 1, 2, 3}, tol))
    return detail::plain(PointSet{3, {(*e)[0], (*e)[1], (*e)[2], (*e)[3]}}, n, StrategyTag::Planar, "exact-r3");
  for (const auto& c : detail::disc_choices(y, {0, 1, 2, 3}, tol)) {
    if (!detail::disc_ok(y, c, tol)) continue;
    ComplexBuilder b;
    detail::add_disc(b, y, c, tol);
    for (std::size_t v = 0; v < 4; ++v) b.mark(detail::vname(v));
    auto w = detail::complex_witness(b, 4, tol);
    w.strategy.tag = StrategyTag::Planar;
    w.provenance = "exact-disc";
    return w;
  }
  throw Error(ErrorKind::NotEmbeddable, "no R^3 realization and no disc with apex sum 2 pi");
}

// ---------------------------------------------------------------------------
// Dispatch.

namespace detail {

inline std::optional<std::size_t> line_vertex(const SimpleGraph& g) {
  const std::size_t n = g.size();
  for (std::size_t v0 = 0; v0 < n; ++v0) {
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u)
      for (std::size_t w = u + 1; w < n && ok; ++w)
        if (u != v0 && w != v0 && !g.has_edge(u, w)) ok = false;
    if (ok) return v0;
  }
  return std::nullopt;
}

inline double zero_threshold(const MetricSpace& x, double tol) { return 0.1 * tol * x.scale(); }

inline bool has_duplicates(const MetricSpace& x, double tol) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x.d(i, j) <= zero_threshold(x, tol)) return true;
  return false;
}

}  // namespace detail

inline Strategy strategy_for(const SimpleGraph& g, const MetricSpace& xf, double tol = kDefaultTol) {
  if (g.size() != xf.size()) throw Error(ErrorKind::ArityMismatch, "graph and metric sizes differ");
  Strategy s;
  if (detail::has_duplicates(xf, tol)) {
    s.tag = StrategyTag::Quotient;
    return s;
  }
  if (auto v0 = detail::line_vertex(g)) {
    s.tag = StrategyTag::Line;
    s.v0 = *v0;
    return s;
  }
  if (g.is_tree()) {
    s.tag = StrategyTag::Tree;
    return s;
  }
  if (!g.connected()) {
    s.tag = StrategyTag::SegmentSpacerGlue;
    return s;
  }
  if (auto cut = g.cut_vertices(); !cut.empty()) {
    s.tag = StrategyTag::PointGlue;
    s.v0 = cut.front();
    return s;
  }
  if (g.is_cycle()) {
    s.tag = StrategyTag::Cycle;
    s.k = g.size();
    return s;
  }
  const std::pair<int, StrategyTag> table[] = {{3, StrategyTag::Fan35}, {5, StrategyTag::Fan35}, {4, StrategyTag::Fan46},
                                               {6, StrategyTag::Fan46}, {7, StrategyTag::CaseG7}, {9, StrategyTag::CaseG9}};
  if (g.size() == 5)
    for (auto [k, tag] : table)
      if (auto sigma = isomorphism(g, catalogue::g5(k))) {
        s.tag = tag;
        s.k = static_cast<std::size_t>(k);
        s.to_catalogue = *sigma;
        return s;
      }
  throw Error(ErrorKind::CaseDispatchAmbiguous, "no strategy for " + format_graph(g));
}

// ---------------------------------------------------------------------------
// Constructions on the pulled-back space xf (vertex i of the graph is point i).

namespace detail {

inline Witness line_on(const MetricSpace& xf, const SimpleGraph& g) {
  const auto v0 = line_vertex(g);
  if (!v0) throw Error(ErrorKind::NoSuchVertex, "no vertex adjacent-complement base in " + format_graph(g));
  RealLine r;
  for (std::size_t v = 0; v < xf.size(); ++v) r.values.push_back(xf.d(*v0, v));
  auto w = plain(r, xf.size(), StrategyTag::Line, "line");
  w.strategy.v0 = *v0;
  return w;
}

inline Witness tree_on(const MetricSpace& xf, const SimpleGraph& g, double tol) {
  if (!g.is_tree()) throw Error(ErrorKind::NotATree, format_graph(g));
  const std::size_t n = g.size();
  if (n == 1) return plain(RealLine{{0.0}}, 1, StrategyTag::Tree, "tree");
  ComplexBuilder b;
  std::vector<std::vector<std::size_t>> at(n);
  for (auto [u, v] : g.edges()) {
    const auto id = b.add_segment({vname(u), vname(v)}, xf.d(u, v));
    at[u].push_back(id);
    at[v].push_back(id);
  }
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 0; i + 1 < at[v].size(); ++i) b.glue(GlueKind::Point, at[v][i], at[v][i + 1], {vname(v)});
  for (std::size_t v = 0; v < n; ++v) b.mark(vname(v));
  auto w = complex_witness(b, n, tol);
  w.strategy.tag = StrategyTag::Tree;
  w.provenance = "tree";
  return w;
}

inline Composite::Spacer spacer(std::size_t a, std::size_t b, double len) { return {a, 0, b, 0, len}; }

inline Witness composite_of(const MetricSpace& xf, const std::vector<std::vector<std::size_t>>& parts, bool spacers,
                            double tol) {
  Composite c;
  c.slots = xf.size();
  for (const auto& vs : parts) {
    c.parts.push_back(exact_embedding(restrict(xf, vs), tol));
    c.slot_of.push_back(vs);
  }
  if (spacers)
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) c.spacers.push_back(spacer(i, i + 1, xf.scale()));
  return plain(std::move(c), xf.size(), spacers ? StrategyTag::SegmentSpacerGlue : StrategyTag::PointGlue,
               spacers ? "spacer-glue" : "point-glue");
}

}  // namespace detail

// Split for a point gluing: V1 and V2 meet exactly in v0 and no edge joins V1 - v0 to V2 - v0.
struct Split {
  std::vector<std::size_t> v1, v2;
  std::size_t v0 = 0;
};

inline Split cut_split(const SimpleGraph& g, std::size_t v0) {
  const std::uint32_t rest = g.all() & ~(1u << v0);
  if (!rest) throw Error(ErrorKind::BadSplit, "nothing to split");
  const auto first = g.component_of(static_cast<std::size_t>(__builtin_ctz(rest)), rest);
  Split s;
  s.v0 = v0;
  std::uint32_t in1 = 1u << v0;
  for (auto v : first) in1 |= 1u << v;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if ((in1 >> v) & 1u) s.v1.push_back(v);
    if (v == v0 || !((in1 >> v) & 1u)) s.v2.push_back(v);
  }
  if (s.v2.size() < 2) throw Error(ErrorKind::BadSplit, "vertex " + std::to_string(v0) + " is not a cut vertex");
  return s;
}

namespace detail {

inline void check_split(const SimpleGraph& g, const Split& s) {
  std::vector<int> side(g.size(), 0);
  for (auto v : s.v1) side.at(v) |= 1;
  for (auto v : s.v2) side.at(v) |= 2;
  for (std::size_t v = 0; v < g.size(); ++v) {
    const int want = v == s.v0 ? 3 : side[v];
    if (side[v] == 0 || side[v] != want || (v != s.v0 && side[v] == 3))
      throw Error(ErrorKind::BadSplit, "vertex sets must cover and meet only in v0");
  }
  for (auto [u, v] : g.edges())
    if (u != s.v0 && v != s.v0 && side[u] != side[v]) throw Error(ErrorKind::BadSplit, "edge across the split");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cycle search in the plane.

struct CycleSearch {
  double best_penalty = 0.0;
  std::size_t starts_used = 0;
  std::vector<Vec2> points;
};

namespace detail {

inline double cycle_penalty(const MetricSpace& xf, const SimpleGraph& g, const Eigen::VectorXd& z, double inv,
                            Eigen::VectorXd* r = nullptr, Eigen::MatrixXd* J = nullptr) {
  const std::size_t n = xf.size();
  std::size_t row = 0;
  if (r) r->setZero(n * (n - 1) / 2);
  if (J) J->setZero(n * (n - 1) / 2, 2 * n);
  double pen = 0.0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v, ++row) {
      const Eigen::Vector2d d = z.segment<2>(2 * u) - z.segment<2>(2 * v);
      const double len = d.norm(), target = xf.d(u, v) * inv;
      const double res = g.has_edge(u, v) ? std::max(0.0, len - target) : std::max(0.0, target - len);
      pen += res * res;
      if (res > 0.0) {
        if (r) (*r)[row] = res;
        if (J && len > 0.0) {
          const Eigen::Vector2d gr = (g.has_edge(u, v) ? 1.0 : -1.0) * d / len;
          J->block<1, 2>(row, 2 * u) = gr.transpose();
          J->block<1, 2>(row, 2 * v) = -gr.transpose();
        }
      }
    }
  return pen;
}

// Levenberg-Marquardt on the clipped residuals, in units of the metric scale.
inline double cycle_descend(const MetricSpace& xf, const SimpleGraph& g, Eigen::VectorXd& z, std::size_t iters,
                            double target) {
  const double inv = 1.0 / xf.scale();
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  double pen = cycle_penalty(xf, g, z, inv, &r, &J);
  double lambda = 1e-3;
  for (std::size_t it = 0; it < iters && pen > target; ++it) {
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd rhs = -J.transpose() * r;
    Eigen::MatrixXd M = A;
    M.diagonal().array() += lambda * (1.0 + A.diagonal().array());
    const Eigen::VectorXd step = M.ldlt().solve(rhs);
    const Eigen::VectorXd cand = z + step;
    const double pc = cycle_penalty(xf, g, cand, inv);
    if (pc < pen) {
      z = cand;
      pen = cycle_penalty(xf, g, z, inv, &r, &J);
      lambda = std::max(lambda / 3.0, 1e-12);
    } else {
      lambda *= 4.0;
      if (lambda > 1e12) break;
    }
  }
  return pen;
}

// Classical multidimensional scaling onto the plane.
inline Eigen::VectorXd mds2(const MetricSpace& xf) {
  const std::size_t n = xf.size();
  const double inv = 1.0 / xf.scale();
  Eigen::MatrixXd D2(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) D2(i, j) = xf.d2(i, j) * inv * inv;
  const Eigen::MatrixXd C = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd B = -0.5 * C * D2 * C;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  Eigen::VectorXd z(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < 2; ++k) {
      const Eigen::Index col = static_cast<Eigen::Index>(n) - 1 - k;
      z[2 * i + k] = es.eigenvectors()(i, col) * std::sqrt(std::max(0.0, es.eigenvalues()[col]));
    }
  return z;
}

}  // namespace detail

// Multistart search for planar points realizing the cycle pattern; the best
// configuration is returned even when it misses the target.
inline CycleSearch cycle_search(const MetricSpace& xf, const SimpleGraph& g, const WitnessConfig& cfg) {
  const std::size_t n = xf.size();
  const double target = std::pow(cfg.tol, 2);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  CycleSearch out;
  out.best_penalty = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best;
  for (std::size_t s = 0; s < std::max<std::size_t>(cfg.multistarts, 1); ++s) {
    Eigen::VectorXd z(2 * n);
    if (s == 0) {
      z = detail::mds2(xf);
    } else {
      for (std::size_t i = 0; i < 2 * n; ++i) z[i] = unif(rng);
    }
    const double pen = detail::cycle_descend(xf, g, z, cfg.max_iterations, 0.01 * target);
    ++out.starts_used;
    if (pen < out.best_penalty) {
      out.best_penalty = pen;
      best = z;
    }
    if (out.best_penalty <= 0.01 * target) break;
  }
  for (std::size_t i = 0; i < n; ++i) out.points.push_back(best.segment<2>(2 * i) * xf.scale());
  out.best_penalty *= xf.scale() * xf.scale();
  return out;
}

namespace detail {

inline Witness cycle_on(const MetricSpace& xf, const SimpleGraph& g, const WitnessConfig& cfg) {
  if (!g.is_cycle()) throw Error(ErrorKind::BadParams, "graph is not a cycle: " + format_graph(g));
  const auto s = cycle_search(xf, g, cfg);
  const double lim = std::pow(cfg.tol * xf.scale(), 2);
  if (!(s.best_penalty <= lim)) {
    std::ostringstream os;
    os << "best penalty " << s.best_penalty << " after " << s.starts_used << " starts";
    throw Error(ErrorKind::SearchFailed, os.str());
  }
  PointSet ps{2, {}};
  for (const auto& p : s.points) ps.pts.push_back(geom::lift(p));
  auto w = plain(ps, xf.size(), StrategyTag::Cycle, "cycle-search");
  w.strategy.k = g.size();
  w.log.push_back("starts " + std::to_string(s.starts_used));
  return w;
}

// ---------------------------------------------------------------------------
// Catalogue graphs: constructions in catalogue labels, tried over every
// isomorphism onto the catalogue graph; the first branch that verifies wins.

class Trial {
 public:
  Trial(const MetricSpace& xf, const SimpleGraph& g, const WitnessConfig& cfg) : xf_(xf), g_(g), cfg_(cfg) {}

  void set_map(std::vector<std::size_t> sigma) { sigma_ = std::move(sigma); }
  bool done() const { return result_.has_value(); }
  std::optional<Witness>& result() { return result_; }
  std::vector<std::string>& log() { return log_; }

  // Builds a candidate in catalogue labels and keeps it if it verifies.
  template <class F>
  bool operator()(const std::string& branch, F&& build) {
    if (done()) return true;
    const std::string tag = branch + "@" + perm_str();
    try {
      std::optional<Witness> wh = build();
      if (!wh) {
        log_.push_back(tag + " n/a");
        return false;
      }
      Witness w = permute_witness(*wh, sigma_);
      const auto rep = verify_distances(xf_, g_, w, witness_distances(w, cfg_.distance), cfg_.tol);
      std::ostringstream os;
      os << tag << (rep.pass ? " verified" : " rejected") << " worst slack " << rep.worst_slack();
      if (!rep.model_ok) os << " (model)";
      log_.push_back(os.str());
      if (!rep.pass) return false;
      w.provenance = branch;
      result_ = std::move(w);
      return true;
    } catch (const Error& e) {
      log_.push_back(tag + " " + std::string(to_string(e.kind())) + ": " + e.what());
      return false;
    }
  }

 private:
  std::string perm_str() const {
    std::string s;
    for (auto v : sigma_) s += std::to_string(v + 1);
    return s;
  }
  const MetricSpace& xf_;
  const SimpleGraph& g_;
  const WitnessConfig& cfg_;
  std::vector<std::size_t> sigma_;
  std::optional<Witness> result_;
  std::vector<std::string> log_;
};

template <class Builder>
Witness on_catalogue(const MetricSpace& xf, const SimpleGraph& g, const SimpleGraph& h, StrategyTag tag,
                     const WitnessConfig& cfg, Builder&& build) {
  Trial trial(xf, g, cfg);
  const auto maps = isomorphisms(g, h);
  if (maps.empty()) throw Error(ErrorKind::BadParams, format_graph(g) + " is not isomorphic to " + format_graph(h));
  for (const auto& sigma : maps) {
    std::vector<std::size_t> inv(sigma.size());
    for (std::size_t u = 0; u < sigma.size(); ++u) inv[sigma[u]] = u;
    trial.set_map(sigma);
    build(pullback(xf, inv), trial);
    if (trial.done()) break;
  }
  if (!trial.done()) {
    std::string all;
    for (const auto& l : trial.log()) all += "\n  " + l;
    throw Error(ErrorKind::CaseDispatchAmbiguous, "no branch verified:" + all);
  }
  Witness w = std::move(*trial.result());
  w.strategy.tag = tag;
  w.log = std::move(trial.log());
  for (std::size_t u = 0; u < g.size(); ++u) w.strategy.to_catalogue = isomorphism(g, h).value();
  return w;
}

// Labels of the catalogue graphs, zero-based.
inline constexpr std::size_t V1 = 0, V2 = 1, V3 = 2, V4 = 3, V5 = 4;

inline std::optional<Witness> fan_build(const MetricSpace& xh, const std::vector<std::array<std::size_t, 3>>& tris,
                                        double tol) {
  std::vector<FanTriangle> ft;
  for (const auto& t : tris)
    ft.push_back({{vname(t[0]), vname(t[1]), vname(t[2])}, {xh.d(t[0], t[1]), xh.d(t[1], t[2]), xh.d(t[2], t[0])}});
  ComplexModel cm{build_fan(ft, tol), {}};
  for (std::size_t v = 0; v < 5; ++v) cm.marks.push_back(cm.space.mark_index(vname(v)));
  Witness w;
  w.model = std::move(cm);
  w.assignment = iota_vec(5);
  return w;
}

// Triangle (a, b, c) added with its side [a, b] set to an exact length.
inline std::size_t add_triangle_with(ComplexBuilder& b, const MetricSpace& m, std::size_t a, std::size_t bb,
                                     std::size_t c, double ab, double tol) {
  return b.add_triangle({vname(a), vname(bb), vname(c)}, ab, m.d(bb, c), m.d(c, a), tol);
}

inline void g7_build(const MetricSpace& xh, Trial& trial, double tol) {
  const auto cl = classify(xh, {V3, V2, V4, V5}, tol);
  const double eps = tol * xh.scale();
  if (cl.verdict == QuadVerdict::Embeddable) {
    trial("g7-embeddable", [&]() -> std::optional<Witness> {
      const auto& p = cl.embedding->pts;  // roles v3, v2, v4, v5
      ComplexBuilder b;
      const auto r = b.add_piece(3, {vname(V3), vname(V2), vname(V4), vname(V5)}, {p[0], p[1], p[2], p[3]});
      const auto t = add_triangle_with(b, xh, V2, V5, V1, (p[1] - p[3]).norm(), tol);
      b.glue_segment(r, t, vname(V2), vname(V5));
      for (std::size_t v = 0; v < 5; ++v) b.mark(vname(v));
      return complex_witness(b, 5, tol);
    });
  } else if (cl.verdict == QuadVerdict::UnderDistance) {
    trial("g7-under", [&]() -> std::optional<Witness> {
      // Hull condition on the x-configuration: v5 inside the triangle v3 v4 v2.
      const auto hx = hinge(xh.d(V3, V2), xh.d(V2, V4), xh.d(V4, V3), xh.d(V3, V5), xh.d(V5, V4), Side::SameAsY, tol);
      if (!geom::in_triangle(hx.w, hx.x, hx.z, hx.y, geom::area_eps(xh.scale()))) return std::nullopt;
      // y-configuration: triangle v2 v3 v5 and v4 re-hinged on the side of v3.
      const auto hy = hinge(xh.d(V2, V3), xh.d(V3, V5), xh.d(V5, V2), xh.d(V2, V4), xh.d(V4, V5), Side::SameAsY, tol);
      ComplexBuilder b;
      const auto q = b.add_piece(2, {vname(V2), vname(V3), vname(V5), vname(V4)},
                                 {geom::lift(hy.x), geom::lift(hy.y), geom::lift(hy.z), geom::lift(hy.w)});
      const auto t = add_triangle_with(b, xh, V2, V5, V1, (hy.x - hy.z).norm(), tol);
      b.glue_segment(q, t, vname(V2), vname(V5));
      for (std::size_t v = 0; v < 5; ++v) b.mark(vname(v));
      auto w = complex_witness(b, 5, tol);
      w.log.push_back("rebuilt |v3 v4| = " + std::to_string((hy.y - hy.w).norm()));
      return w;
    });
  } else {
    trial("g7-over", [&]() -> std::optional<Witness> {
      const double s = cangle(xh, V2, V3, V4) + cangle(xh, V4, V3, V5);
      if (!(s > std::numbers::pi - eps / std::max(xh.scale(), 1e-300))) return std::nullopt;
      const DiscChoice c{V3, V2, V4, V5};
      if (!disc_ok(xh, c, tol)) return std::nullopt;
      ComplexBuilder b;
      const auto ids = add_disc(b, xh, c, tol);  // (3,2,4), (3,4,5), (3,5,2)
      const auto t = add_triangle_with(b, xh, V2, V5, V1, xh.d(V2, V5), tol);
      b.glue_segment(ids[2], t, vname(V2), vname(V5));
      for (std::size_t v = 0; v < 5; ++v) b.mark(vname(v));
      return complex_witness(b, 5, tol);
    });
  }
}

// Five points p, q around a triangle x y z, named by catalogue vertices.
struct Pentad {
  std::size_t p, q, x, y, z;
};

// Planar frame of the triangle x y z: x at the origin, y on the first axis.
struct Frame {
  std::array<Vec3, 3> t;  // x', y', z'
  double eps = 0.0;       // length tolerance
  bool degenerate = false;
};

inline Frame frame_of(const MetricSpace& m, const Pentad& r, double tol) {
  const auto t = place_triangle(m.d(r.x, r.y), m.d(r.y, r.z), m.d(r.z, r.x), tol);
  Frame f{{geom::lift(t[0]), geom::lift(t[1]), geom::lift(t[2])}, tol * m.scale(), false};
  f.degenerate = std::abs(t[2].y()) * m.d(r.x, r.y) <= geom::area_eps(m.scale()) * 1e3;
  return f;
}

// Position of a (one of p, q) in R^3 with x y z on the frame, above (sign > 0) or below the plane.
inline std::optional<Vec3> lift_apex(const MetricSpace& m, const Pentad& r, std::size_t a, const Frame& f, int sign,
                                     double tol) {
  const auto e = embed4(m, {a, r.x, r.y, r.z}, tol);
  if (!e) return std::nullopt;
  Vec3 p = align({(*e)[1], (*e)[2], (*e)[3]}, f.t, (*e)[0]);
  if (p.z() * sign < 0) p.z() = -p.z();
  return p;
}

// Planar point at distances d(u, a), d(a, w) from the frame points u, w, on the side of the third frame point.
inline Vec3 rehinge(const MetricSpace& m, const Pentad& r, const Frame& f, std::size_t a, int u, int w, double tol) {
  const std::size_t idx[3] = {r.x, r.y, r.z};
  const int o = 3 - u - w;
  const auto h = hinge(m.d(idx[u], idx[o]), m.d(idx[o], idx[w]), m.d(idx[w], idx[u]), m.d(idx[u], a), m.d(a, idx[w]),
                       Side::SameAsY, tol);
  std::array<Vec3, 3> src{}, dst{};
  src[u] = geom::lift(h.x);
  src[o] = geom::lift(h.y);
  src[w] = geom::lift(h.z);
  dst = f.t;
  return transfer(geom::lift(h.w), src, dst);
}

inline Vec3 bary_in(const Frame& f, const Vec3& p) { return geom::barycentric(p, f.t[0], f.t[1], f.t[2]); }

// Inside the closed frame triangle, with a relative margin (negative margin shrinks to the interior).
inline bool in_frame(const Frame& f, const Vec3& p, double margin = 1e-9) {
  const Vec3 b = bary_in(f, p);
  return b.minCoeff() >= -margin;
}

inline bool in_tri(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c, double scale) {
  return geom::in_triangle(p.head<2>(), a.head<2>(), b.head<2>(), c.head<2>(), geom::area_eps(scale) * 1e3);
}

inline Witness plane_points(const Pentad& r, const Frame& f, const Vec3& p, const Vec3& q) {
  PointSet ps{2, std::vector<Vec3>(5)};
  ps.pts[r.x] = f.t[0];
  ps.pts[r.y] = f.t[1];
  ps.pts[r.z] = f.t[2];
  ps.pts[r.p] = Vec3(p.x(), p.y(), 0.0);
  ps.pts[r.q] = Vec3(q.x(), q.y(), 0.0);
  return kirszbraun(plain(ps, 5, StrategyTag::CaseG9, ""), r.x);
}

inline Witness double_with(const MetricSpace& m, const Pentad& r, const Frame& f, const Vec3& p, const Vec3& q,
                           double tol) {
  auto b = double_builder({vname(r.x), vname(r.y), vname(r.z)}, m.d(r.x, r.y), m.d(r.y, r.z), m.d(r.z, r.x), tol);
  for (auto v : {r.x, r.y, r.z}) b.mark(vname(v));
  b.mark_bary(vname(r.p), 0, clamp_bary(bary_in(f, p)));
  b.mark_bary(vname(r.q), 1, clamp_bary(bary_in(f, q)));
  return kirszbraun(complex_witness(b, 5, tol, true), r.x);
}

// Two discs glued along the triangle x y z (both quadruples over-distance).
inline void build_ll(const MetricSpace& m, const Pentad& r, Trial& trial, double tol, const std::string& tag) {
  const auto cp = disc_choices(m, {r.p, r.x, r.y, r.z}, tol, r.p);
  const auto cq = disc_choices(m, {r.q, r.x, r.y, r.z}, tol, r.q);
  for (const auto& a : cp)
    for (const auto& b : cq) {
      if (trial.done()) return;
      trial(tag + "-ll", [&]() -> std::optional<Witness> {
        if (!disc_ok(m, a, tol) || !disc_ok(m, b, tol)) return std::nullopt;
        ComplexBuilder cb;
        const auto s = add_disc(cb, m, a, tol);
        const auto t = add_disc(cb, m, b, tol);
        cb.glue(GlueKind::Facet, s[0], t[0], {vname(r.x), vname(r.y), vname(r.z)});
        for (auto v : {r.x, r.y, r.z}) cb.mark_in(vname(v), s[0], vname(v));
        cb.mark_in(vname(r.p), s[1], vname(r.p));
        cb.mark_in(vname(r.q), t[1], vname(r.q));
        return complex_witness(cb, 5, tol);
      });
    }
}

// Both quadruples {p,x,y,z} and {q,x,y,z} embed in R^3.
inline void build_both(const MetricSpace& m, const Pentad& r, Trial& trial, double tol) {
  const Frame f = frame_of(m, r, tol);
  const auto p = lift_apex(m, r, r.p, f, 1, tol), q = lift_apex(m, r, r.q, f, -1, tol);
  if (!p || !q) return;
  const double eps = f.eps;
  const bool p_in = std::abs(p->z()) <= eps, q_in = std::abs(q->z()) <= eps;
  // Where [p', q'] meets the plane, and whether that point lies strictly inside the triangle.
  bool meets_outside;
  if (p_in && q_in) {
    meets_outside = !(in_frame(f, *p, -1e-9) && in_frame(f, *q, -1e-9));
  } else {
    const Vec3 hit = p_in ? *p : q_in ? *q : *p + (p->z() / (p->z() - q->z())) * (*q - *p);
    meets_outside = !in_frame(f, hit, -1e-9);
    if (std::abs(bary_in(f, hit).minCoeff()) < 1e-6) trial.log().push_back("near-tangent p'q' crossing");
  }
  auto facet = [&]() -> std::optional<Witness> {
    ComplexBuilder b;
    const auto P = b.add_piece(3, {vname(r.p), vname(r.x), vname(r.y), vname(r.z)}, {*p, f.t[0], f.t[1], f.t[2]});
    const auto Q = b.add_piece(3, {vname(r.q), vname(r.x), vname(r.y), vname(r.z)}, {*q, f.t[0], f.t[1], f.t[2]});
    b.glue(GlueKind::Facet, P, Q, {vname(r.x), vname(r.y), vname(r.z)});
    for (auto v : {r.p, r.x, r.y, r.z}) b.mark_in(vname(v), P, vname(v));
    b.mark_in(vname(r.q), Q, vname(r.q));
    return complex_witness(b, 5, tol);
  };
  auto bipyramid = [&]() -> std::optional<Witness> {
    if (p_in && q_in) return std::nullopt;
    std::vector<NamedTriangle> faces;
    const std::array<std::pair<int, int>, 3> sides{{{0, 1}, {1, 2}, {2, 0}}};
    const std::size_t idx[3] = {r.x, r.y, r.z};
    for (auto [apex, pt] : {std::pair{r.p, *p}, std::pair{r.q, *q}})
      for (auto [i, j] : sides) faces.push_back({{vname(apex), vname(idx[i]), vname(idx[j])}, {pt, f.t[i], f.t[j]}});
    auto b = polytope_builder(faces);
    for (std::size_t v = 0; v < 5; ++v) b.mark(vname(v));
    return kirszbraun(complex_witness(b, 5, tol, true), r.x);
  };
  auto dbl = [&]() -> std::optional<Witness> {
    if (!(p_in && q_in) || f.degenerate) return std::nullopt;
    return double_with(m, r, f, *p, *q, tol);
  };
  if (meets_outside) {
    trial("g9-both-facet", facet);
    trial("g9-both-bipyramid", bipyramid);
    trial("g9-both-double", dbl);
  } else {
    trial(p_in && q_in ? "g9-both-double" : "g9-both-bipyramid", p_in && q_in ? std::function(dbl) : std::function(bipyramid));
    trial("g9-both-facet", facet);
  }
}

// {p,x,y,z} embeds in R^3 and {q,x,y,z} does not.
inline void build_mixed(const MetricSpace& m, const Pentad& r, Trial& trial, double tol) {
  const Frame f = frame_of(m, r, tol);
  const auto p = lift_apex(m, r, r.p, f, 1, tol);
  if (!p) return;
  // Case 1: a disc on the q-quadruple with x y z as its first triangle, glued to the tetrahedron.
  for (auto end : {r.y, r.z}) {
    for (const auto& c : disc_choices(m, {r.q, r.x, r.y, r.z}, tol, r.q)) {
      if (c.a != end || trial.done()) continue;
      trial("g9-mixed-disc", [&]() -> std::optional<Witness> {
        if (!disc_ok(m, c, tol)) return std::nullopt;
        ComplexBuilder b;
        const auto P = b.add_piece(3, {vname(r.p), vname(r.x), vname(r.y), vname(r.z)}, {*p, f.t[0], f.t[1], f.t[2]});
        const auto s = add_disc(b, m, c, tol);
        b.glue(GlueKind::Facet, P, s[0], {vname(r.x), vname(r.y), vname(r.z)});
        for (auto v : {r.p, r.x, r.y, r.z}) b.mark_in(vname(v), P, vname(v));
        b.mark_in(vname(r.q), s[1], vname(r.q));
        return complex_witness(b, 5, tol);
      });
    }
  }
  if (trial.done() || f.degenerate) return;
  // Case 2: q re-hinged into the triangle on the side of y.
  const Vec3 q = rehinge(m, r, f, r.q, 0, 2, tol);
  if (!in_frame(f, q, 1e-7)) {
    trial.log().push_back("g9-mixed: re-hinged q outside the triangle");
    return;
  }
  const bool flat = std::abs(p->z()) <= f.eps;
  trial("g9-mixed-tetra", [&]() -> std::optional<Witness> {
    if (flat) return std::nullopt;
    const std::size_t idx[3] = {r.x, r.y, r.z};
    std::vector<NamedTriangle> faces;
    faces.push_back({{vname(r.x), vname(r.y), vname(r.z)}, {f.t[0], f.t[1], f.t[2]}});
    for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 0}})
      faces.push_back({{vname(r.p), vname(idx[i]), vname(idx[j])}, {*p, f.t[i], f.t[j]}});
    auto b = polytope_builder(faces);
    for (auto v : {r.p, r.x, r.y, r.z}) b.mark(vname(v));
    b.mark_bary(vname(r.q), 0, clamp_bary(bary_in(f, q)));
    return kirszbraun(complex_witness(b, 5, tol, true), r.x);
  });
  trial("g9-mixed-double", [&]() -> std::optional<Witness> {
    if (!flat || !in_frame(f, *p, 1e-7)) return std::nullopt;
    return double_with(m, r, f, *p, q, tol);
  });
  trial("g9-mixed-plane", [&]() -> std::optional<Witness> {
    if (!flat) return std::nullopt;
    return plane_points(r, f, *p, q);
  });
}

inline bool under_wrt(const MetricSpace& m, std::size_t a, std::size_t b, std::array<std::size_t, 2> frame, double tol) {
  return classify(m, {frame[0], a, frame[1], b}, tol).verdict == QuadVerdict::UnderDistance;
}

// Both quadruples under-distance: p w.r.t. {p,y}; q w.r.t. {q,y} (same) or {q,z} (crossed).
inline void build_ss(const MetricSpace& m, const Pentad& r, Trial& trial, double tol, bool crossed) {
  if (!under_wrt(m, r.p, r.y, {r.x, r.z}, tol)) return;
  if (!crossed && !under_wrt(m, r.q, r.y, {r.x, r.z}, tol)) return;
  if (crossed && !under_wrt(m, r.q, r.z, {r.x, r.y}, tol)) return;
  const Frame f = frame_of(m, r, tol);
  if (f.degenerate) return;
  const std::string tag = crossed ? "g9-ss2" : "g9-ss1";
  const Vec3 p = rehinge(m, r, f, r.p, 0, 2, tol);
  const Vec3 q = crossed ? rehinge(m, r, f, r.q, 0, 1, tol) : rehinge(m, r, f, r.q, 0, 2, tol);
  const double sc = m.scale();
  const bool p_in = in_frame(f, p, 1e-7), q_in = in_frame(f, q, 1e-7);
  // The frame vertex opposite the hinge line of q.
  const Vec3& q_far = crossed ? f.t[2] : f.t[1];
  const Vec3& q_a = f.t[0];
  const Vec3& q_b = crossed ? f.t[1] : f.t[2];
  const bool y_in_p = in_tri(f.t[1], p, f.t[0], f.t[2], sc);
  const bool far_in_q = in_tri(q_far, q, q_a, q_b, sc);
  if (p_in && q_in) trial(tag + "-double", [&]() -> std::optional<Witness> { return double_with(m, r, f, p, q, tol); });
  if ((p_in && far_in_q) || (y_in_p && q_in) || (p_in && q_in))
    trial(tag + "-plane", [&]() -> std::optional<Witness> { return plane_points(r, f, p, q); });
  if (!trial.done()) build_ll(m, r, trial, tol, tag);
}

inline bool embeds(const MetricSpace& m, std::array<std::size_t, 4> v, double tol) {
  return embed4(m, v, tol).has_value();
}

inline void g9_build(const MetricSpace& xh, Trial& trial, double tol) {
  for (const Pentad r : {Pentad{V2, V4, V1, V3, V5}, Pentad{V4, V2, V1, V3, V5}}) {
    const bool ep = embeds(xh, {r.p, r.x, r.y, r.z}, tol), eq = embeds(xh, {r.q, r.x, r.y, r.z}, tol);
    if (ep && eq) build_both(xh, r, trial, tol);
    else if (ep) build_mixed(xh, r, trial, tol);
    else if (!eq) {
      build_ll(xh, r, trial, tol, "g9");
      for (const Pentad s : {r, Pentad{r.p, r.q, r.x, r.z, r.y}}) {
        build_ss(xh, s, trial, tol, false);
        build_ss(xh, s, trial, tol, true);
      }
    }
    if (trial.done()) return;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public operations. Each works on the space pulled back along f.

inline Witness witness_line(const MetricSpace& x, const std::vector<std::size_t>& f, const SimpleGraph& g) {
  return detail::line_on(pullback(x, f), g);
}

inline Witness witness_tree(const MetricSpace& x, const std::vector<std::size_t>& f, const SimpleGraph& g,
                            double tol = kDefaultTol) {
  return detail::tree_on(pullback(x, f), g, tol);
}

// Point gluing along split, or, without a split, spacer gluing of the components of g.
inline Witness witness_glue(const MetricSpace& x, const std::vector<std::size_t>& f, const SimpleGraph& g,
                            const std::optional<Split>& split, double tol = kDefaultTol) {
  const auto xf = pullback(x, f);
  if (split) {
    detail::check_split(g, *split);
    auto w = detail::composite_of(xf, {split->v1, split->v2}, false, tol);
    w.strategy.v0 = split->v0;
    return w;
  }
  if (g.connected()) throw Error(ErrorKind::BadSplit, "spacer gluing needs a disconnected graph");
  return detail::composite_of(xf, g.components(), true, tol);
}

inline Witness witness_cycle(const MetricSpace& x, const std::vector<std::size_t>& f, const SimpleGraph& g,
                             const WitnessConfig& cfg = {}) {
  return detail::cycle_on(pullback(x, f), g, cfg);
}

inline Witness witness_fan(const MetricSpace& x, const std::vector<std::size_t>& f, const SimpleGraph& g,
                           StrategyTag variant, const WitnessConfig& cfg = {}) {
  using namespace detail;
  const auto xf = pullback(x, f);
  if (variant == StrategyTag::Fan35) {
    const SimpleGraph h = isomorphism(g, catalogue::g5(3)) ? catalogue::g5(3) : catalogue::g5(5);
    return on_catalogue(xf, g, h, variant, cfg, [&](const MetricSpace& xh, Trial& t) {
      t("fan-35", [&] { return fan_build(xh, {{V1, V2, V5}, {V2, V3, V5}, {V3, V4, V5}}, cfg.tol); });
    });
  }
  if (variant == StrategyTag::Fan46) {
    const SimpleGraph h = isomorphism(g, catalogue::g5(4)) ? catalogue::g5(4) : catalogue::g5(6);
    return on_catalogue(xf, g, h, variant, cfg, [&](const MetricSpace& xh, Trial& t) {
      t("fan-46", [&] { return fan_build(xh, {{V1, V2, V5}, {V2, V3, V5}, {V2, V4, V5}}, cfg.tol); });
    });
  }
  throw Error(ErrorKind::BadParams, "fan variant must be Fan35 or Fan46");
}

inline Witness witness_g7(const MetricSpace& x, const std::vector<std::size_t>& f, const SimpleGraph& g,
                          const WitnessConfig& cfg = {}) {
  return detail::on_catalogue(pullback(x, f), g, catalogue::g5(7), StrategyTag::CaseG7, cfg,
                              [&](const MetricSpace& xh, detail::Trial& t) { detail::g7_build(xh, t, cfg.tol); });
}

inline Witness witness_g9(const MetricSpace& x, const std::vector<std::size_t>& f, const SimpleGraph& g,
                          const WitnessConfig& cfg = {}) {
  return detail::on_catalogue(pullback(x, f), g, catalogue::g5(9), StrategyTag::CaseG9, cfg,
                              [&](const MetricSpace& xh, detail::Trial& t) { detail::g9_build(xh, t, cfg.tol); });
}

namespace detail {

inline Witness quotient_on(const MetricSpace& xf, double tol) {
  const std::size_t n = xf.size();
  std::vector<std::size_t> rep(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep[i] = i;
    for (std::size_t j = 0; j < i; ++j)
      if (rep[j] == j && xf.d(i, j) <= zero_threshold(xf, tol)) {
        rep[i] = j;
        break;
      }
  }
  std::vector<std::size_t> reps;
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rep[i] == i) {
      pos[i] = reps.size();
      reps.push_back(i);
    }
  Witness w = exact_embedding(restrict(xf, reps), tol);
  for (std::size_t i = 0; i < n; ++i) w.assignment.resize(n), w.assignment[i] = pos[rep[i]];
  w.strategy.tag = StrategyTag::Quotient;
  w.provenance = "quotient/" + w.provenance;
  return w;
}

}  // namespace detail

// Witness for the G(0)-pattern of g on the configuration f in x.
inline Witness construct(const MetricSpace& x, const std::vector<std::size_t>& f, const SimpleGraph& g,
                         const WitnessConfig& cfg = {}) {
  if (g.size() != f.size()) throw Error(ErrorKind::ArityMismatch, "vertex map and graph sizes differ");
  if (f.size() > kMaxGraphVertices) throw Error(ErrorKind::TooManyPoints, std::to_string(f.size()));
  if (f.empty()) throw Error(ErrorKind::EmptySubset, "empty graph");
  for (auto i : f)
    if (i >= x.size()) throw Error(ErrorKind::BadIndex, "vertex map target " + std::to_string(i));
  const auto xf = pullback(x, f);
  const auto dec = space_satisfies(xf, cfg.tol);
  if (!dec.holds()) {
    std::ostringstream os;
    const auto& c = dec.certificate;
    os << "roles (" << c.roles[0] + 1 << "," << c.roles[1] + 1 << "," << c.roles[2] + 1 << "," << c.roles[3] + 1
       << ") s=" << c.at.s << " t=" << c.at.t << " value=" << c.value;
    throw Error(ErrorKind::BoxtimesViolated, os.str());
  }
  const Strategy s = strategy_for(g, xf, cfg.tol);
  Witness w;
  switch (s.tag) {
    case StrategyTag::Quotient: w = detail::quotient_on(xf, cfg.tol); break;
    case StrategyTag::Line: w = detail::line_on(xf, g); break;
    case StrategyTag::Tree: w = detail::tree_on(xf, g, cfg.tol); break;
    case StrategyTag::SegmentSpacerGlue: w = witness_glue(x, f, g, std::nullopt, cfg.tol); break;
    case StrategyTag::PointGlue: w = witness_glue(x, f, g, cut_split(g, s.v0), cfg.tol); break;
    case StrategyTag::Cycle: w = detail::cycle_on(xf, g, cfg); break;
    case StrategyTag::Fan35:
    case StrategyTag::Fan46: w = witness_fan(x, f, g, s.tag, cfg); break;
    case StrategyTag::CaseG7: w = witness_g7(x, f, g, cfg); break;
    case StrategyTag::CaseG9: w = witness_g9(x, f, g, cfg); break;
    case StrategyTag::Planar: w = exact_embedding(xf, cfg.tol); break;
  }
  const auto tag = w.strategy.tag;
  w.strategy = s;
  w.strategy.tag = tag;
  return w;
}

}  // namespace cat0
