#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "cat0/metric.hpp"
#include "cat0/predicates.hpp"
#include "cat0/quad.hpp"

namespace cat0 {

// Convex hull of generators; coordinates always live in R^3.
struct Piece {
  int dim = 2;
  std::vector<Vec3> gens;
  std::vector<std::string> names;  // one per generator, may be empty strings
};

enum class GlueKind { Point, Segment, Facet, Boundary };

inline std::string_view to_string(GlueKind k) {
  switch (k) {
    case GlueKind::Point: return "point";
    case GlueKind::Segment: return "segment";
    case GlueKind::Facet: return "facet";
    case GlueKind::Boundary: return "boundary";
  }
  return "?";
}

struct GlueSide {
  std::size_t piece = 0;
  std::vector<std::size_t> verts;  // generator indices, matched in order with the other side
};

struct Gluing {
  GlueKind kind = GlueKind::Segment;
  GlueSide a, b;
};

struct Mark {
  std::string name;
  std::size_t piece = 0;
  std::vector<double> bary;  // one weight per generator of the piece
};

class ComplexSpace {
 public:
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  // Gluings as given; boundary gluings are kept whole here.
  const std::vector<Gluing>& gluings() const noexcept { return gluings_; }
  // Gluings with every boundary gluing split into its three segment gluings.
  const std::vector<Gluing>& elementary() const noexcept { return elementary_; }
  const std::vector<Mark>& marks() const noexcept { return marks_; }

  std::size_t mark_index(const std::string& name) const {
    for (std::size_t i = 0; i < marks_.size(); ++i)
      if (marks_[i].name == name) return i;
    throw Error(ErrorKind::UnreachableMark, "no mark named " + name);
  }

  Vec3 mark_position(std::size_t i) const {
    const auto& m = marks_.at(i);
    const auto& g = pieces_[m.piece].gens;
    Vec3 p = Vec3::Zero();
    for (std::size_t k = 0; k < g.size(); ++k) p += m.bary[k] * g[k];
    return p;
  }

  // Largest piece diameter.
  double scale() const noexcept { return scale_; }

  // Set on closed surfaces (doubles, polytope boundaries): nonnegatively curved, not CAT(0).
  bool nonneg_surface() const noexcept { return nonneg_surface_; }
  void set_nonneg_surface(bool v) noexcept { nonneg_surface_ = v; }

  std::string label;

 private:
  friend ComplexSpace assemble(std::vector<Piece>, std::vector<Gluing>, std::vector<Mark>, double);
  std::vector<Piece> pieces_;
  std::vector<Gluing> gluings_, elementary_;
  std::vector<Mark> marks_;
  double scale_ = 0.0;
  bool nonneg_surface_ = false;
};

namespace detail {

inline double piece_diameter(const Piece& p) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.gens.size(); ++i)
    for (std::size_t j = i + 1; j < p.gens.size(); ++j) d = std::max(d, (p.gens[i] - p.gens[j]).norm());
  return d;
}

inline std::size_t side_arity(GlueKind k) {
  switch (k) {
    case GlueKind::Point: return 1;
    case GlueKind::Segment: return 2;
    default: return 3;
  }
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

inline ComplexSpace assemble(std::vector<Piece> pieces, std::vector<Gluing> gluings, std::vector<Mark> marks,
                             double tol = kDefaultTol) {
  ComplexSpace c;
  if (pieces.empty()) throw Error(ErrorKind::BadParams, "complex without pieces");
  for (auto& p : pieces) {
    if (p.dim < 1 || p.dim > 3) throw Error(ErrorKind::BadParams, "piece dimension");
    if (p.gens.empty()) throw Error(ErrorKind::BadParams, "piece without generators");
    p.names.resize(p.gens.size());
    c.scale_ = std::max(c.scale_, detail::piece_diameter(p));
  }
  const double eps = tol * std::max(c.scale_, 1e-300);

  for (std::size_t gi = 0; gi < gluings.size(); ++gi) {
    const auto& g = gluings[gi];
    const std::size_t k = detail::side_arity(g.kind);
    for (const GlueSide* s : {&g.a, &g.b}) {
      if (s->piece >= pieces.size()) throw Error(ErrorKind::BadIndex, "gluing piece");
      if (s->verts.size() != k) throw Error(ErrorKind::BadParams, "gluing arity");
      for (auto v : s->verts)
        if (v >= pieces[s->piece].gens.size()) throw Error(ErrorKind::BadIndex, "gluing vertex");
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        const double la = (pieces[g.a.piece].gens[g.a.verts[i]] - pieces[g.a.piece].gens[g.a.verts[j]]).norm();
        const double lb = (pieces[g.b.piece].gens[g.b.verts[i]] - pieces[g.b.piece].gens[g.b.verts[j]]).norm();
        if (std::abs(la - lb) > eps)
          throw Error(ErrorKind::LengthMismatch, "gluing " + std::to_string(gi) + ": " + std::to_string(la) +
                                                     " vs " + std::to_string(lb));
      }
    if (g.kind == GlueKind::Boundary) {
      for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 0}})
        c.elementary_.push_back({GlueKind::Segment,
                                 {g.a.piece, {g.a.verts[i], g.a.verts[j]}},
                                 {g.b.piece, {g.b.verts[i], g.b.verts[j]}}});
    } else {
      c.elementary_.push_back(g);
    }
  }

  detail::UnionFind uf(pieces.size());
  for (const auto& g : c.elementary_) uf.unite(g.a.piece, g.b.piece);
  for (std::size_t i = 1; i < pieces.size(); ++i)
    if (uf.find(i) != uf.find(0)) throw Error(ErrorKind::DisconnectedComplex, "piece " + std::to_string(i));

  for (auto& m : marks) {
    if (m.piece >= pieces.size()) throw Error(ErrorKind::BadIndex, "mark " + m.name);
    if (m.bary.size() != pieces[m.piece].gens.size())
      throw Error(ErrorKind::BadBarycentric, m.name + ": wrong number of weights");
    double sum = 0.0;
    for (double w : m.bary) {
      if (w < -tol) throw Error(ErrorKind::BadBarycentric, m.name + ": negative weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > tol * m.bary.size() + 1e-12)
      throw Error(ErrorKind::BadBarycentric, m.name + ": weights sum to " + std::to_string(sum));
  }

  c.pieces_ = std::move(pieces);
  c.gluings_ = std::move(gluings);
  c.marks_ = std::move(marks);
  return c;
}

// Incremental construction with generators addressed by name within each piece.
class ComplexBuilder {
 public:
  std::size_t add_piece(int dim, std::vector<std::string> names, std::vector<Vec3> coords) {
    pieces_.push_back({dim, std::move(coords), std::move(names)});
    return pieces_.size() - 1;
  }

  // Triangle with vertices named n[0], n[1], n[2] and sides |n0 n1|, |n1 n2|, |n2 n0|.
  std::size_t add_triangle(std::array<std::string, 3> n, double d01, double d12, double d20, double tol = kDefaultTol) {
    const auto t = place_triangle(d01, d12, d20, tol);
    return add_piece(2, {n[0], n[1], n[2]}, {geom::lift(t[0]), geom::lift(t[1]), geom::lift(t[2])});
  }

  std::size_t add_segment(std::array<std::string, 2> n, double length) {
    if (length < 0.0) throw Error(ErrorKind::NegativeLength, std::to_string(length));
    return add_piece(1, {n[0], n[1]}, {Vec3::Zero(), Vec3(length, 0, 0)});
  }

  void glue(GlueKind kind, std::size_t pa, std::size_t pb, const std::vector<std::string>& verts) {
    gluings_.push_back({kind, {pa, lookup(pa, verts)}, {pb, lookup(pb, verts)}});
  }

  void glue_segment(std::size_t pa, std::size_t pb, const std::string& u, const std::string& v) {
    glue(GlueKind::Segment, pa, pb, {u, v});
  }

  // Marks the first generator carrying this name.
  void mark(const std::string& name, const std::string& vertex) {
    for (std::size_t p = 0; p < pieces_.size(); ++p)
      for (std::size_t i = 0; i < pieces_[p].names.size(); ++i)
        if (pieces_[p].names[i] == vertex) {
          mark_in(name, p, vertex);
          return;
        }
    throw Error(ErrorKind::BadParams, "no vertex named " + vertex);
  }

  void mark(const std::string& name) { mark(name, name); }

  void mark_in(const std::string& name, std::size_t piece, const std::string& vertex) {
    const auto idx = lookup(piece, {vertex}).front();
    std::vector<double> w(pieces_[piece].gens.size(), 0.0);
    w[idx] = 1.0;
    marks_.push_back({name, piece, std::move(w)});
  }

  void mark_bary(const std::string& name, std::size_t piece, std::vector<double> weights) {
    marks_.push_back({name, piece, std::move(weights)});
  }

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }

  ComplexSpace build(double tol = kDefaultTol) const { return assemble(pieces_, gluings_, marks_, tol); }

 private:
  std::vector<std::size_t> lookup(std::size_t piece, const std::vector<std::string>& verts) const {
    std::vector<std::size_t> out;
    const auto& names = pieces_.at(piece).names;
    for (const auto& v : verts) {
      auto it = std::find(names.begin(), names.end(), v);
      if (it == names.end()) throw Error(ErrorKind::BadParams, "piece " + std::to_string(piece) + " has no vertex " + v);
      out.push_back(static_cast<std::size_t>(it - names.begin()));
    }
    return out;
  }

  std::vector<Piece> pieces_;
  std::vector<Gluing> gluings_;
  std::vector<Mark> marks_;
};

// Three triangles (x,y,z), (x,z,w), (x,w,y) glued pairwise along the sides through x.
struct Disc {
  ComplexSpace space;
  double apex_sum = 0.0;
  bool cat0 = false;
};

// Adds the three disc triangles (x,y,z), (x,z,w), (x,w,y) with their gluings
// along the sides through x; returns the piece ids in that order.
inline std::array<std::size_t, 3> add_disc(ComplexBuilder& b, const std::array<std::string, 4>& names, double dxy,
                                           double dxz, double dxw, double dyz, double dzw, double dwy,
                                           double tol = kDefaultTol) {
  const auto& [x, y, z, w] = names;
  const auto t1 = b.add_triangle({x, y, z}, dxy, dyz, dxz, tol);
  const auto t2 = b.add_triangle({x, z, w}, dxz, dzw, dxw, tol);
  const auto t3 = b.add_triangle({x, w, y}, dxw, dwy, dxy, tol);
  b.glue_segment(t1, t2, x, z);
  b.glue_segment(t2, t3, x, w);
  b.glue_segment(t3, t1, x, y);
  return {t1, t2, t3};
}

inline double disc_apex_sum(double dxy, double dxz, double dxw, double dyz, double dzw, double dwy) {
  return cangle(dxy, dxz, dyz) + cangle(dxz, dxw, dzw) + cangle(dxw, dxy, dwy);
}

inline Disc build_disc(double dxy, double dxz, double dxw, double dyz, double dzw, double dwy,
                       std::array<std::string, 4> names = {"x", "y", "z", "w"}, double tol = kDefaultTol) {
  ComplexBuilder b;
  add_disc(b, names, dxy, dxz, dxw, dyz, dzw, dwy, tol);
  for (const auto& n : names) b.mark(n);
  Disc d{b.build(tol)};
  d.apex_sum = disc_apex_sum(dxy, dxz, dxw, dyz, dzw, dwy);
  d.cat0 = d.apex_sum >= 2.0 * std::numbers::pi - tol;
  d.space.label = "disc";
  return d;
}

struct FanTriangle {
  std::array<std::string, 3> names;
  std::array<double, 3> sides;  // |n0 n1|, |n1 n2|, |n2 n0|
};

// Consecutive triangles glued along the side whose two vertex names they share.
inline ComplexSpace build_fan(const std::vector<FanTriangle>& tris, double tol = kDefaultTol) {
  ComplexBuilder b;
  std::vector<std::size_t> ids;
  for (const auto& t : tris) ids.push_back(b.add_triangle(t.names, t.sides[0], t.sides[1], t.sides[2], tol));
  for (std::size_t i = 0; i + 1 < tris.size(); ++i) {
    std::vector<std::string> shared;
    for (const auto& n : tris[i].names)
      if (std::find(tris[i + 1].names.begin(), tris[i + 1].names.end(), n) != tris[i + 1].names.end())
        shared.push_back(n);
    if (shared.size() != 2) throw Error(ErrorKind::BadParams, "consecutive fan triangles must share one side");
    b.glue_segment(ids[i], ids[i + 1], shared[0], shared[1]);
  }
  std::vector<std::string> seen;
  for (const auto& t : tris)
    for (const auto& n : t.names)
      if (std::find(seen.begin(), seen.end(), n) == seen.end()) {
        seen.push_back(n);
        b.mark(n);
      }
  auto c = b.build(tol);
  c.label = "fan";
  return c;
}

struct NamedTriangle {
  std::array<std::string, 3> names;
  std::array<Vec3, 3> pts;
};

// Faces of a polytope boundary; faces sharing two vertex names are glued
// along that side. Vertices are not marked.
inline ComplexBuilder polytope_builder(const std::vector<NamedTriangle>& faces) {
  ComplexBuilder b;
  std::vector<std::size_t> ids;
  for (const auto& f : faces)
    ids.push_back(b.add_piece(2, {f.names[0], f.names[1], f.names[2]}, {f.pts[0], f.pts[1], f.pts[2]}));
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      std::vector<std::string> shared;
      for (const auto& n : faces[i].names)
        if (std::find(faces[j].names.begin(), faces[j].names.end(), n) != faces[j].names.end()) shared.push_back(n);
      if (shared.size() == 2) b.glue_segment(ids[i], ids[j], shared[0], shared[1]);
    }
  return b;
}

// Boundary surface of a convex polytope given by its triangular faces.
inline ComplexSpace build_polytope_boundary(const std::vector<NamedTriangle>& faces, double tol = kDefaultTol) {
  auto b = polytope_builder(faces);
  std::vector<std::string> seen;
  for (const auto& f : faces)
    for (const auto& n : f.names)
      if (std::find(seen.begin(), seen.end(), n) == seen.end()) {
        seen.push_back(n);
        b.mark(n);
      }
  auto c = b.build(tol);
  c.set_nonneg_surface(true);
  c.label = "polytope_boundary";
  return c;
}

inline ComplexSpace build_tetra_boundary(const std::array<Vec3, 4>& p, std::array<std::string, 4> n = {"a", "b", "c", "d"},
                                         double tol = kDefaultTol) {
  double sc = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) sc = std::max(sc, (p[i] - p[j]).norm());
  const double vol = std::abs((p[1] - p[0]).cross(p[2] - p[0]).dot(p[3] - p[0]));
  if (!(vol > 1e-12 * sc * sc * sc)) throw Error(ErrorKind::DegenerateInput, "coplanar tetrahedron");
  auto c = build_polytope_boundary({{{n[0], n[1], n[2]}, {p[0], p[1], p[2]}},
                                    {{n[0], n[1], n[3]}, {p[0], p[1], p[3]}},
                                    {{n[0], n[2], n[3]}, {p[0], p[2], p[3]}},
                                    {{n[1], n[2], n[3]}, {p[1], p[2], p[3]}}},
                                   tol);
  c.label = "tetra_boundary";
  return c;
}

// Two copies of a triangle glued along their boundaries. Vertex marks sit on
// face 0; further marks are added by the caller through mark_in.
inline ComplexBuilder double_builder(std::array<std::string, 3> n, double d01, double d12, double d20,
                                     double tol = kDefaultTol) {
  const double sc = std::max({d01, d12, d20});
  const auto t = place_triangle(d01, d12, d20, tol);
  if (!(std::abs(t[2].y()) * d01 > 1e-12 * sc * sc)) throw Error(ErrorKind::DegenerateInput, "flat triangle");
  ComplexBuilder b;
  const std::vector<Vec3> pts{geom::lift(t[0]), geom::lift(t[1]), geom::lift(t[2])};
  const auto f0 = b.add_piece(2, {n[0], n[1], n[2]}, pts);
  const auto f1 = b.add_piece(2, {n[0], n[1], n[2]}, pts);
  b.glue(GlueKind::Boundary, f0, f1, {n[0], n[1], n[2]});
  return b;
}

inline ComplexSpace build_double(double d01, double d12, double d20, double tol = kDefaultTol) {
  auto b = double_builder({"a", "b", "c"}, d01, d12, d20, tol);
  for (const auto& v : {"a", "b", "c"}) b.mark(v);
  auto c = b.build(tol);
  c.set_nonneg_surface(true);
  c.label = "double";
  return c;
}

// Adds a generator at p to the piece and returns its index (convex hull unchanged
// when p lies in the piece).
inline std::size_t add_generator(Piece& piece, const Vec3& p, std::vector<Mark>& marks, std::size_t piece_id) {
  for (std::size_t i = 0; i < piece.gens.size(); ++i)
    if (piece.gens[i] == p) return i;
  piece.gens.push_back(p);
  piece.names.emplace_back();
  for (auto& m : marks)
    if (m.piece == piece_id) m.bary.push_back(0.0);
  return piece.gens.size() - 1;
}

// Wedge sum identifying mark a of A with mark b of B. Clashing names from B get a prime.
inline ComplexSpace glue_at_point(const ComplexSpace& A, const std::string& a, const ComplexSpace& B,
                                  const std::string& b, double tol = kDefaultTol) {
  std::vector<Piece> pieces = A.pieces();
  std::vector<Gluing> gluings = A.gluings();
  std::vector<Mark> marks = A.marks();
  const std::size_t off = pieces.size();
  for (const auto& p : B.pieces()) pieces.push_back(p);
  for (auto g : B.gluings()) {
    g.a.piece += off;
    g.b.piece += off;
    gluings.push_back(g);
  }
  for (auto m : B.marks()) {
    m.piece += off;
    while (std::any_of(marks.begin(), marks.end(), [&](const Mark& o) { return o.name == m.name; })) m.name += "'";
    marks.push_back(m);
  }
  const auto ia = A.mark_index(a), ib = B.mark_index(b);
  const std::size_t pa = A.marks()[ia].piece, pb = B.marks()[ib].piece + off;
  const auto va = add_generator(pieces[pa], A.mark_position(ia), marks, pa);
  const auto vb = add_generator(pieces[pb], B.mark_position(ib), marks, pb);
  gluings.push_back({GlueKind::Point, {pa, {va}}, {pb, {vb}}});
  auto c = assemble(std::move(pieces), std::move(gluings), std::move(marks), tol);
  c.label = "wedge";
  return c;
}

// Glues a segment of the given length at mark a; its far end is marked `end`.
inline ComplexSpace attach_segment(const ComplexSpace& A, const std::string& a, double length, const std::string& end,
                                   double tol = kDefaultTol) {
  if (length < 0.0) throw Error(ErrorKind::NegativeLength, std::to_string(length));
  const std::string anchor = "\x01anchor";
  ComplexBuilder s;
  s.add_segment({anchor, end}, length);
  s.mark(anchor);
  s.mark(end);
  auto seg = s.build(tol);
  auto c = glue_at_point(A, a, seg, anchor, tol);
  // The wedge point keeps its name from A; drop the helper mark.
  std::vector<Mark> marks;
  for (const auto& m : c.marks())
    if (m.name != anchor) marks.push_back(m);
  auto out = assemble(c.pieces(), c.gluings(), std::move(marks), tol);
  out.label = "spacer";
  return out;
}

// ---------------------------------------------------------------------------
// Vertex curvature.

struct VertexInfo {
  std::vector<std::pair<std::size_t, std::size_t>> members;  // (piece, generator)
  double angle_sum = 0.0;
  bool interior = false;
};

namespace detail {

// Hull-order neighbours of every hull vertex of a planar piece.
inline std::vector<std::array<std::size_t, 3>> planar_corners(const Piece& p) {
  std::vector<std::array<std::size_t, 3>> out;
  const auto& g = p.gens;
  if (g.size() < 3) return out;
  Vec3 e1 = Vec3::Zero(), nrm = Vec3::Zero();
  for (std::size_t i = 1; i < g.size() && e1.norm() == 0.0; ++i) e1 = g[i] - g[0];
  if (e1.norm() == 0.0) return out;
  e1.normalize();
  for (std::size_t i = 1; i < g.size(); ++i) {
    const Vec3 c = e1.cross(g[i] - g[0]);
    if (c.norm() > nrm.norm()) nrm = c;
  }
  if (g.size() == 3) {
    out.push_back({0, 2, 1});
    out.push_back({1, 0, 2});
    out.push_back({2, 1, 0});
    return out;
  }
  if (nrm.norm() == 0.0) return out;
  nrm.normalize();
  const Vec3 e2 = nrm.cross(e1);
  std::vector<std::size_t> idx(g.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto proj = [&](std::size_t i) { return Vec2((g[i] - g[0]).dot(e1), (g[i] - g[0]).dot(e2)); };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Vec2 pa = proj(a), pb = proj(b);
    return pa.x() < pb.x() || (pa.x() == pb.x() && pa.y() < pb.y());
  });
  const double sc = piece_diameter(p);
  const double eps = geom::area_eps(sc);
  std::vector<std::size_t> hull(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (k >= 2 && geom::cross(proj(hull[k - 1]) - proj(hull[k - 2]), proj(idx[i]) - proj(hull[k - 2])) <= eps) --k;
    hull[k++] = idx[i];
  }
  for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && geom::cross(proj(hull[k - 1]) - proj(hull[k - 2]), proj(idx[i]) - proj(hull[k - 2])) <= eps) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);
  for (std::size_t i = 0; i < hull.size(); ++i)
    out.push_back({hull[i], hull[(i + hull.size() - 1) % hull.size()], hull[(i + 1) % hull.size()]});
  return out;
}

}  // namespace detail

// Vertex classes of the complex (generators identified through gluings).
inline std::vector<VertexInfo> vertex_classes(const ComplexSpace& c) {
  const auto& P = c.pieces();
  std::vector<std::size_t> base(P.size() + 1, 0);
  for (std::size_t i = 0; i < P.size(); ++i) base[i + 1] = base[i] + P[i].gens.size();
  detail::UnionFind uf(base.back());
  for (const auto& g : c.elementary())
    for (std::size_t k = 0; k < g.a.verts.size(); ++k) uf.unite(base[g.a.piece] + g.a.verts[k], base[g.b.piece] + g.b.verts[k]);

  // Edge classes: unordered generator pairs identified by segment/facet gluings.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_id;
  auto key = [&](std::size_t p, std::size_t i, std::size_t j) {
    std::size_t a = base[p] + i, b = base[p] + j;
    return std::pair{std::min(a, b), std::max(a, b)};
  };
  auto edge = [&](std::size_t p, std::size_t i, std::size_t j) {
    auto k = key(p, i, j);
    auto it = edge_id.find(k);
    if (it != edge_id.end()) return it->second;
    const std::size_t id = edge_id.size();
    edge_id.emplace(k, id);
    return id;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edge_glue;
  for (const auto& g : c.elementary()) {
    const std::size_t k = g.a.verts.size();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        edge_glue.push_back({edge(g.a.piece, g.a.verts[i], g.a.verts[j]), edge(g.b.piece, g.b.verts[i], g.b.verts[j])});
  }

  struct Corner {
    std::size_t e1, e2;
    double angle;
  };
  std::map<std::size_t, std::vector<Corner>> corners;
  std::map<std::size_t, bool> blocked;  // touches a 1- or 3-dimensional piece
  std::map<std::size_t, VertexInfo> info;
  for (std::size_t p = 0; p < P.size(); ++p) {
    for (std::size_t i = 0; i < P[p].gens.size(); ++i) {
      const auto r = uf.find(base[p] + i);
      info[r].members.push_back({p, i});
      if (P[p].dim != 2) blocked[r] = true;
    }
    if (P[p].dim != 2) continue;
    for (const auto& [v, a, b] : detail::planar_corners(P[p])) {
      const auto r = uf.find(base[p] + v);
      corners[r].push_back({edge(p, v, a), edge(p, v, b), geom::angle_at(P[p].gens[v], P[p].gens[a], P[p].gens[b])});
    }
  }
  detail::UnionFind ef(edge_id.size() + 1);
  for (auto [a, b] : edge_glue) ef.unite(a, b);

  std::vector<VertexInfo> out;
  for (auto& [r, vi] : info) {
    const auto& cs = corners[r];
    for (const auto& k : cs) vi.angle_sum += k.angle;
    bool interior = !blocked[r] && cs.size() >= 2;
    if (interior) {
      std::map<std::size_t, int> deg;
      detail::UnionFind link(2 * cs.size());
      std::map<std::size_t, std::size_t> local;
      auto loc = [&](std::size_t e) {
        auto it = local.find(e);
        if (it != local.end()) return it->second;
        const auto id = local.size();
        local.emplace(e, id);
        return id;
      };
      for (const auto& k : cs) {
        const auto a = ef.find(k.e1), b = ef.find(k.e2);
        ++deg[a];
        ++deg[b];
        link.unite(loc(a), loc(b));
      }
      for (auto [e, d] : deg)
        if (d != 2) interior = false;
      const auto root = link.find(0);
      for (std::size_t i = 0; i < local.size(); ++i)
        if (link.find(i) != root) interior = false;
    }
    vi.interior = interior;
    out.push_back(vi);
  }
  return out;
}

inline double angle_sum(const ComplexSpace& c, std::size_t piece, std::size_t gen) {
  for (const auto& v : vertex_classes(c))
    for (const auto& m : v.members)
      if (m.first == piece && m.second == gen) {
        if (!v.interior) throw Error(ErrorKind::NotInteriorVertex, "piece " + std::to_string(piece) + " vertex " + std::to_string(gen));
        return v.angle_sum;
      }
  throw Error(ErrorKind::BadIndex, "vertex");
}

inline bool local_cat0_check(const ComplexSpace& c, double tol = kDefaultTol) {
  for (const auto& v : vertex_classes(c))
    if (v.interior && v.angle_sum < 2.0 * std::numbers::pi - tol) return false;
  return true;
}

}  // namespace cat0
