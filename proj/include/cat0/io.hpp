#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cat0/generate.hpp"
#include "cat0/qmi.hpp"
#include "cat0/witness.hpp"

namespace cat0::io {

using json = nlohmann::ordered_json;

inline json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string(what) + ": " + e.what());
  }
}

// {"labels": [...], "d": [[...], ...]}
inline MetricSpace metric_from_json(const json& j, double tol = kDefaultTol) {
  return guarded("metric", [&] {
    auto d = j.at("d").get<std::vector<std::vector<double>>>();
    std::vector<std::string> labels =
        j.contains("labels") ? j.at("labels").get<std::vector<std::string>>() : default_labels(d.size());
    return from_matrix(labels, d, tol);
  });
}

inline json to_json(const MetricSpace& x) { return {{"labels", x.labels()}, {"d", x.matrix()}}; }

inline json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

inline Vec3 vec_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.empty() || v.size() > 3) throw Error(ErrorKind::ParseError, "coordinates need 1 to 3 entries");
  Vec3 out = Vec3::Zero();
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

// {"pieces": [{"dim", "names", "coords"}], "gluings": [{"kind", "a", "b", "verts"}],
//  "marks": [{"name", "piece", "vertex"} | {"name", "piece", "weights"}], "nonneg_surface"}
inline ComplexSpace complex_from_json(const json& j, double tol = kDefaultTol) {
  return guarded("complex", [&] {
    ComplexBuilder b;
    for (const auto& p : j.at("pieces")) {
      std::vector<Vec3> coords;
      for (const auto& c : p.at("coords")) coords.push_back(vec_from(c));
      auto names = p.value("names", std::vector<std::string>(coords.size()));
      b.add_piece(p.at("dim").get<int>(), names, coords);
    }
    const std::size_t np = b.pieces().size();
    for (const auto& g : j.value("gluings", json::array())) {
      const std::string kind = g.at("kind");
      GlueKind k = kind == "point"     ? GlueKind::Point
                   : kind == "segment" ? GlueKind::Segment
                   : kind == "facet"   ? GlueKind::Facet
                   : kind == "boundary"
                       ? GlueKind::Boundary
                       : throw Error(ErrorKind::ParseError, "unknown gluing kind " + kind);
      const auto a = g.at("a").get<std::size_t>(), c = g.at("b").get<std::size_t>();
      if (a >= np || c >= np) throw Error(ErrorKind::BadIndex, "gluing piece out of range");
      b.glue(k, a, c, g.at("verts").get<std::vector<std::string>>());
    }
    for (const auto& m : j.value("marks", json::array())) {
      const auto piece = m.at("piece").get<std::size_t>();
      if (piece >= np) throw Error(ErrorKind::BadIndex, "mark piece out of range");
      if (m.contains("vertex"))
        b.mark_in(m.at("name"), piece, m.at("vertex"));
      else
        b.mark_bary(m.at("name"), piece, m.at("weights").get<std::vector<double>>());
    }
    auto c = b.build(tol);
    c.set_nonneg_surface(j.value("nonneg_surface", false));
    return c;
  });
}

inline json to_json(const ComplexSpace& c) {
  json pieces = json::array(), glues = json::array(), marks = json::array();
  for (const auto& p : c.pieces()) {
    json coords = json::array();
    for (const auto& g : p.gens) coords.push_back(vec_json(g));
    pieces.push_back({{"dim", p.dim}, {"names", p.names}, {"coords", coords}});
  }
  for (const auto& g : c.gluings()) {
    std::vector<std::string> verts;
    for (auto v : g.a.verts) verts.push_back(c.pieces()[g.a.piece].names[v]);
    glues.push_back({{"kind", to_string(g.kind)}, {"a", g.a.piece}, {"b", g.b.piece}, {"verts", verts}});
  }
  for (const auto& m : c.marks()) marks.push_back({{"name", m.name}, {"piece", m.piece}, {"weights", m.bary}});
  return {{"pieces", pieces}, {"gluings", glues}, {"marks", marks}, {"nonneg_surface", c.nonneg_surface()}};
}

// {"n": 4, "a": {"0,1": 0.25, ...}}
inline QuadraticInequality qmi_from_json(const json& j) {
  return guarded("qmi", [&] {
    QuadraticInequality q{j.at("n").get<std::size_t>(), {}};
    for (const auto& [key, val] : j.at("a").items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "pair key " + key);
      q.set(std::stoul(key.substr(0, comma)), std::stoul(key.substr(comma + 1)), val.get<double>());
    }
    return q;
  });
}

inline json to_json(const QuadraticInequality& q) {
  json a = json::object();
  for (const auto& [ij, c] : q.a) a[std::to_string(ij.first) + "," + std::to_string(ij.second)] = c;
  return {{"n", q.n}, {"a", a}};
}

inline json to_json(const BoxDecision& d) {
  const auto& c = d.certificate;
  return {{"verdict", d.holds() ? "Holds" : "Violated"},
          {"certificate",
           {{"roles", c.roles}, {"s", c.at.s}, {"t", c.at.t}, {"value", c.value}}}};
}

inline json to_json(const Classification& q) {
  json j{{"verdict", to_string(q.verdict)}, {"lo", q.lo}, {"hi", q.hi}};
  if (q.embedding) {
    json pts = json::array();
    for (const auto& p : q.embedding->pts) pts.push_back(vec_json(p));
    j["embedding"] = pts;
    j["theta0"] = q.embedding->theta0;
  }
  return j;
}

inline json to_json(const Witness& w);

inline json model_json(const Model& m) {
  if (const auto* r = std::get_if<RealLine>(&m)) return {{"type", "line"}, {"values", r->values}};
  if (const auto* p = std::get_if<PointSet>(&m)) {
    json pts = json::array();
    for (const auto& v : p->pts) {
      json row = json::array();
      for (int k = 0; k < p->dim; ++k) row.push_back(v[k]);
      pts.push_back(row);
    }
    return {{"type", p->dim == 2 ? "plane" : "r3"}, {"points", pts}};
  }
  if (const auto* c = std::get_if<ComplexModel>(&m)) {
    std::vector<std::string> names;
    for (auto k : c->marks) names.push_back(c->space.marks()[k].name);
    return {{"type", "complex"}, {"complex", to_json(c->space)}, {"slots", names}};
  }
  const auto& c = std::get<Composite>(m);
  json parts = json::array(), spacers = json::array();
  for (std::size_t i = 0; i < c.parts.size(); ++i) parts.push_back({{"slots", c.slot_of[i]}, {"witness", to_json(c.parts[i])}});
  for (const auto& s : c.spacers)
    spacers.push_back({{"from", {s.part_a, s.slot_a}}, {"to", {s.part_b, s.slot_b}}, {"length", s.length}});
  return {{"type", "composite"}, {"slots", c.slots}, {"parts", parts}, {"spacers", spacers}};
}

inline json to_json(const Witness& w) {
  json assign = json::object();
  for (std::size_t v = 0; v < w.assignment.size(); ++v) assign[std::to_string(v + 1)] = w.assignment[v];
  json j{{"model", model_json(w.model)},
         {"assignment", assign},
         {"kirszbraun_required", w.kirszbraun_required},
         {"provenance", w.provenance},
         {"strategy", to_string(w.strategy.tag)}};
  if (w.kirszbraun_center) j["kirszbraun_center"] = *w.kirszbraun_center + 1;
  return j;
}

inline json to_json(const VerificationReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"pair", {p.u + 1, p.v + 1}},
                     {"relation", to_string(p.rel)},
                     {"witness", p.witness},
                     {"metric", p.metric},
                     {"slack", p.slack}});
  return {{"pass", r.pass}, {"model_ok", r.model_ok}, {"pairs", pairs}};
}

}  // namespace cat0::io
