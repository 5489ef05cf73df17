#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cat0/complex.hpp"
#include "cat0/geodesic.hpp"
#include "cat0/graph.hpp"
#include "cat0/metric.hpp"

namespace cat0 {

enum class StrategyTag { Line, Tree, PointGlue, SegmentSpacerGlue, Cycle, Fan35, Fan46, CaseG7, CaseG9, Planar, Quotient };

inline std::string_view to_string(StrategyTag t) {
  switch (t) {
    case StrategyTag::Line: return "Line";
    case StrategyTag::Tree: return "Tree";
    case StrategyTag::PointGlue: return "PointGlue";
    case StrategyTag::SegmentSpacerGlue: return "SegmentSpacerGlue";
    case StrategyTag::Cycle: return "Cycle";
    case StrategyTag::Fan35: return "Fan35";
    case StrategyTag::Fan46: return "Fan46";
    case StrategyTag::CaseG7: return "CaseG7";
    case StrategyTag::CaseG9: return "CaseG9";
    case StrategyTag::Planar: return "Planar";
    case StrategyTag::Quotient: return "Quotient";
  }
  return "?";
}

struct Strategy {
  StrategyTag tag = StrategyTag::Planar;
  std::size_t k = 0;                // cycle length
  std::size_t v0 = 0;               // Line base vertex or PointGlue cut vertex
  std::vector<std::size_t> to_catalogue;  // vertex u of G is vertex to_catalogue[u] of the catalogue graph
};

// Model spaces. Every model exposes a list of slots; the witness assignment
// sends each graph vertex to a slot.
struct RealLine {
  std::vector<double> values;
};

struct PointSet {
  int dim = 2;
  std::vector<Vec3> pts;
};

struct ComplexModel {
  ComplexSpace space;
  std::vector<std::size_t> marks;  // slot -> mark index
};

struct Witness;

// Parts wedged at shared slots, plus spacer segments between parts.
struct Composite {
  struct Spacer {
    std::size_t part_a = 0, slot_a = 0, part_b = 0, slot_b = 0;  // part-local slots
    double length = 0.0;
  };
  std::vector<Witness> parts;
  std::vector<std::vector<std::size_t>> slot_of;  // part -> local slot -> composite slot
  std::vector<Spacer> spacers;
  std::size_t slots = 0;
};

using Model = std::variant<RealLine, PointSet, ComplexModel, Composite>;

struct Witness {
  Model model;
  std::vector<std::size_t> assignment;  // vertex -> slot
  bool kirszbraun_required = false;
  std::optional<std::size_t> kirszbraun_center;  // vertex whose row is contracted
  Strategy strategy;
  std::string provenance;
  std::vector<std::string> log;
};

inline std::size_t slot_count(const Model& m) {
  struct {
    std::size_t operator()(const RealLine& r) const { return r.values.size(); }
    std::size_t operator()(const PointSet& p) const { return p.pts.size(); }
    std::size_t operator()(const ComplexModel& c) const { return c.marks.size(); }
    std::size_t operator()(const Composite& c) const { return c.slots; }
  } v;
  return std::visit(v, m);
}

inline std::vector<std::vector<double>> slot_distances(const Model& m, const DistanceConfig& cfg = {});

namespace detail {

inline std::vector<std::vector<double>> composite_distances(const Composite& c, const DistanceConfig& cfg) {
  std::vector<std::size_t> base(c.parts.size() + 1, 0);
  std::vector<std::vector<std::vector<double>>> inner;
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    inner.push_back(slot_distances(c.parts[i].model, cfg));
    base[i + 1] = base[i] + inner.back().size();
  }
  const std::size_t N = base.back();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> D(N, std::vector<double>(N, inf));
  for (std::size_t i = 0; i < c.parts.size(); ++i)
    for (std::size_t a = 0; a < inner[i].size(); ++a)
      for (std::size_t b = 0; b < inner[i].size(); ++b) D[base[i] + a][base[i] + b] = inner[i][a][b];
  for (std::size_t i = 0; i < c.parts.size(); ++i)
    for (std::size_t j = 0; j < c.parts.size(); ++j)
      for (std::size_t a = 0; a < c.slot_of[i].size(); ++a)
        for (std::size_t b = 0; b < c.slot_of[j].size(); ++b)
          if (c.slot_of[i][a] == c.slot_of[j][b]) D[base[i] + a][base[j] + b] = std::min(D[base[i] + a][base[j] + b], 0.0);
  for (const auto& s : c.spacers) {
    auto& e = D[base[s.part_a] + s.slot_a][base[s.part_b] + s.slot_b];
    e = std::min(e, s.length);
    D[base[s.part_b] + s.slot_b][base[s.part_a] + s.slot_a] = e;
  }
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) D[i][j] = std::min(D[i][j], D[i][k] + D[k][j]);

  std::vector<std::vector<double>> out(c.slots, std::vector<double>(c.slots, inf));
  for (std::size_t i = 0; i < c.parts.size(); ++i)
    for (std::size_t j = 0; j < c.parts.size(); ++j)
      for (std::size_t a = 0; a < c.slot_of[i].size(); ++a)
        for (std::size_t b = 0; b < c.slot_of[j].size(); ++b) {
          auto& e = out[c.slot_of[i][a]][c.slot_of[j][b]];
          e = std::min(e, D[base[i] + a][base[j] + b]);
        }
  return out;
}

}  // namespace detail

inline std::vector<std::vector<double>> slot_distances(const Model& m, const DistanceConfig& cfg) {
  const std::size_t n = slot_count(m);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  if (const auto* r = std::get_if<RealLine>(&m)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::abs(r->values[i] - r->values[j]);
  } else if (const auto* p = std::get_if<PointSet>(&m)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = (p->pts[i] - p->pts[j]).norm();
  } else if (const auto* c = std::get_if<ComplexModel>(&m)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        d[i][j] = d[j][i] = c->marks[i] == c->marks[j] ? 0.0 : distance(c->space, c->marks[i], c->marks[j], cfg);
  } else {
    d = detail::composite_distances(std::get<Composite>(m), cfg);
  }
  return d;
}

// Model distances between the images of the graph vertices.
inline std::vector<std::vector<double>> witness_distances(const Witness& w, const DistanceConfig& cfg = {}) {
  const auto s = slot_distances(w.model, cfg);
  const std::size_t n = w.assignment.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = s[w.assignment[i]][w.assignment[j]];
  return d;
}

// Every complex inside the model, composites flattened.
inline void collect_complexes(const Witness& w, std::vector<const ComplexSpace*>& out) {
  if (const auto* c = std::get_if<ComplexModel>(&w.model)) out.push_back(&c->space);
  if (const auto* c = std::get_if<Composite>(&w.model))
    for (const auto& p : c->parts) collect_complexes(p, out);
}

// Locally CAT(0) check for models that claim it. Lines, planes and R^3 pass trivially.
inline bool model_is_cat0(const Witness& w, double tol = kDefaultTol) {
  std::vector<const ComplexSpace*> cs;
  collect_complexes(w, cs);
  for (const auto* c : cs)
    if (c->nonneg_surface() || !local_cat0_check(*c, tol)) return false;
  return true;
}

// Same witness seen through a vertex relabeling: vertex u of the result is
// vertex perm[u] of w.
inline Witness permute_witness(const Witness& w, const std::vector<std::size_t>& perm) {
  Witness out = w;
  out.assignment.resize(perm.size());
  for (std::size_t u = 0; u < perm.size(); ++u) out.assignment[u] = w.assignment[perm[u]];
  if (w.kirszbraun_center) {
    for (std::size_t u = 0; u < perm.size(); ++u)
      if (perm[u] == *w.kirszbraun_center) out.kirszbraun_center = u;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification.

enum class Relation { Le, Ge, Eq };

inline std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Le: return "<=";
    case Relation::Ge: return ">=";
    case Relation::Eq: return "=";
  }
  return "?";
}

struct PairCheck {
  std::size_t u = 0, v = 0;
  Relation rel = Relation::Le;
  double witness = 0.0, metric = 0.0;
  double slack = 0.0;  // positive when satisfied with room to spare
};

struct VerificationReport {
  std::vector<PairCheck> pairs;
  bool model_ok = true;  // model is CAT(0), or nonnegatively curved when the Kirszbraun step is flagged
  bool pass = false;
  double scale = 0.0;
  double tol = 0.0;

  std::vector<PairCheck> offending() const {
    std::vector<PairCheck> out;
    for (const auto& p : pairs)
      if (p.slack < -tol * scale) out.push_back(p);
    return out;
  }
  double worst_slack() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : pairs) m = std::min(m, p.slack);
    return m;
  }
};

// Relation a witness must realize for the pair {u, v}.
inline Relation required_relation(const SimpleGraph& g, const Witness& w, std::size_t u, std::size_t v) {
  if (w.kirszbraun_required && w.kirszbraun_center)
    return (u == *w.kirszbraun_center || v == *w.kirszbraun_center) ? Relation::Le : Relation::Ge;
  return g.has_edge(u, v) ? Relation::Le : Relation::Ge;
}

inline VerificationReport verify_distances(const MetricSpace& xf, const SimpleGraph& g, const Witness& w,
                                           const std::vector<std::vector<double>>& dw, double tol) {
  VerificationReport r;
  r.scale = xf.scale();
  r.tol = tol;
  const std::size_t n = xf.size();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      PairCheck pc{u, v, required_relation(g, w, u, v), dw[u][v], xf.d(u, v)};
      pc.slack = pc.rel == Relation::Le ? pc.metric - pc.witness : pc.witness - pc.metric;
      r.pairs.push_back(pc);
    }
  r.model_ok = w.kirszbraun_required ? (w.kirszbraun_center.has_value() && g.size() == n) : model_is_cat0(w, 1e-9);
  r.pass = r.model_ok && r.offending().empty();
  return r;
}

// Checks the G(0)-pattern of w against the metric pulled back along f.
inline VerificationReport verify(const MetricSpace& x, const std::vector<std::size_t>& f, const SimpleGraph& g,
                                 const Witness& w, double tol = kDefaultTol, const DistanceConfig& cfg = {}) {
  const auto xf = pullback(x, f);
  return verify_distances(xf, g, w, witness_distances(w, cfg), tol);
}

}  // namespace cat0
