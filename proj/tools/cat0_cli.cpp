#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cat0.hpp"

namespace {

using cat0::io::json;

enum Exit { kPass = 0, kViolated = 1, kInputError = 2, kSearchFailed = 3 };

struct RunConfig {
  double tol = 1e-9;
  std::uint64_t seed = 1;
  int mesh = 64;
  std::size_t multistarts = 64;
  std::string output;
};

void emit(const RunConfig& rc, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (rc.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(rc.output);
  if (!out) throw cat0::Error(cat0::ErrorKind::ParseError, "cannot write " + rc.output);
  out << text;
}

json error_json(const cat0::Error& e) { return {{"error", cat0::to_string(e.kind())}, {"detail", e.what()}}; }

int exit_for(cat0::ErrorKind k) {
  switch (k) {
    case cat0::ErrorKind::BoxtimesViolated:
    case cat0::ErrorKind::NotEmbeddable:
    case cat0::ErrorKind::PatternViolated: return kViolated;
    case cat0::ErrorKind::SearchFailed:
    case cat0::ErrorKind::CaseDispatchAmbiguous: return kSearchFailed;
    default: return kInputError;
  }
}

// A point given by label, or failing that by 0-based index.
std::size_t point_index(const cat0::MetricSpace& x, const std::string& token) {
  const auto& labels = x.labels();
  if (auto it = std::find(labels.begin(), labels.end(), token); it != labels.end())
    return static_cast<std::size_t>(it - labels.begin());
  std::size_t pos = 0, v = 0;
  try {
    v = std::stoul(token, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != token.size() || v >= x.size()) throw cat0::Error(cat0::ErrorKind::BadIndex, "no point '" + token + "'");
  return v;
}

std::vector<std::size_t> point_list(const cat0::MetricSpace& x, const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(point_index(x, tok));
  return out;
}

cat0::GenKind gen_kind(const std::string& kind, int dim, double eps) {
  if (kind == "euclidean") return cat0::gen::Euclidean{dim};
  if (kind == "tree") return cat0::gen::Tree{};
  if (kind == "perturbed") return cat0::gen::Perturbed{eps};
  if (kind == "complex") return cat0::gen::ComplexSample{};
  throw cat0::Error(cat0::ErrorKind::BadParams, "unknown kind " + kind);
}

int cmd_validate(const RunConfig& rc, const std::string& file) {
  const auto x = cat0::io::metric_from_json(cat0::io::parse_file(file), rc.tol);
  emit(rc, {{"valid", true}, {"points", x.size()}, {"scale", x.scale()}});
  return kPass;
}

int cmd_decide(const RunConfig& rc, const std::string& file, bool bounded) {
  const auto x = cat0::io::metric_from_json(cat0::io::parse_file(file), rc.tol);
  const auto d = bounded ? cat0::decide_cat0_embeddable(x, rc.tol) : cat0::space_satisfies(x, rc.tol);
  auto j = cat0::io::to_json(d);
  if (bounded) j["verdict"] = d.holds() ? "Embeddable" : "NotEmbeddable";
  emit(rc, j);
  return d.holds() ? kPass : kViolated;
}

int cmd_classify(const RunConfig& rc, const std::string& file, const std::string& roles_csv,
                 const std::string& pivot_csv) {
  const auto x = cat0::io::metric_from_json(cat0::io::parse_file(file), rc.tol);
  const auto r = point_list(x, roles_csv);
  if (r.size() != 4) throw cat0::Error(cat0::ErrorKind::ArityMismatch, "--roles needs four points");
  std::array<std::size_t, 4> roles{r[0], r[1], r[2], r[3]};
  if (!pivot_csv.empty()) {
    const auto p = point_list(x, pivot_csv);
    if (p.size() != 2) throw cat0::Error(cat0::ErrorKind::ArityMismatch, "--pivot needs two points");
    auto is = [&](std::size_t a, std::size_t b) { return (p[0] == a && p[1] == b) || (p[0] == b && p[1] == a); };
    if (is(roles[0], roles[2]))
      roles = {roles[1], roles[0], roles[3], roles[2]};
    else if (!is(roles[1], roles[3]))
      throw cat0::Error(cat0::ErrorKind::BadParams, "pivot must be a diagonal of the roles");
  }
  const auto c = cat0::classify(x, roles, rc.tol);
  auto j = cat0::io::to_json(c);
  j["roles"] = roles;
  j["pivot"] = {roles[1], roles[3]};
  emit(rc, j);
  return c.verdict == cat0::QuadVerdict::Embeddable ? kPass : kViolated;
}

int cmd_witness(const RunConfig& rc, const std::string& file, const std::string& graph, const std::string& map_csv) {
  const auto x = cat0::io::metric_from_json(cat0::io::parse_file(file), rc.tol);
  const auto g = cat0::parse_graph(graph);
  std::vector<std::size_t> f;
  if (map_csv.empty()) {
    if (g.size() > x.size()) throw cat0::Error(cat0::ErrorKind::ArityMismatch, "graph larger than the space");
    f.resize(g.size());
    std::iota(f.begin(), f.end(), 0);
  } else {
    f = point_list(x, map_csv);
  }
  cat0::WitnessConfig wc;
  wc.tol = rc.tol;
  wc.seed = rc.seed;
  wc.multistarts = rc.multistarts;
  const auto w = cat0::construct(x, f, g, wc);
  const auto rep = cat0::verify(x, f, g, w, rc.tol, wc.distance);
  auto j = cat0::io::to_json(w);
  j["report"] = cat0::io::to_json(rep);
  emit(rc, j);
  return rep.pass ? kPass : kViolated;
}

int cmd_complex_dist(const RunConfig& rc, const std::string& file) {
  const auto c = cat0::io::complex_from_json(cat0::io::parse_file(file), rc.tol);
  std::vector<std::string> names;
  for (const auto& m : c.marks()) names.push_back(m.name);
  const auto oracle = cat0::distance_oracle_all(c, rc.mesh);
  json exact = json::array(), mesh = json::array();
  for (std::size_t i = 0; i < names.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < names.size(); ++j) row.push_back(i == j ? 0.0 : cat0::distance(c, i, j));
    exact.push_back(row);
    mesh.push_back(oracle[i]);
  }
  emit(rc, {{"marks", names}, {"distances", exact}, {"oracle", {{"mesh", rc.mesh}, {"distances", mesh}}}});
  return kPass;
}

int cmd_qmi(const RunConfig& rc, const std::string& qfile, const std::string& file) {
  const auto q = cat0::io::qmi_from_json(cat0::io::parse_file(qfile));
  const auto x = cat0::io::metric_from_json(cat0::io::parse_file(file), rc.tol);
  const auto m = cat0::min_over_tuples(q, x);
  const bool holds = m.value >= -rc.tol * x.scale() * x.scale();
  emit(rc, {{"holds", holds}, {"min", m.value}, {"tuple", m.tuple}});
  return holds ? kPass : kViolated;
}

int cmd_gen(const RunConfig& rc, const std::string& kind, int dim, double eps, std::size_t n) {
  const auto g = cat0::generate_detail(gen_kind(kind, dim, eps), n, rc.seed, rc.tol);
  auto j = cat0::io::to_json(g.space);
  j["boxtimes_holds"] = g.boxtimes_holds;
  j["attempts"] = g.attempts;
  emit(rc, j);
  return kPass;
}

int cmd_selftest(const RunConfig& rc, std::size_t spaces) {
  cat0::selftest::Config cfg;
  cfg.witness_spaces = spaces;
  const auto results = cat0::selftest::run_all(cfg, [](const cat0::selftest::Result& r) {
    std::cerr << cat0::selftest::line(r) << std::endl;
  });
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    arr.push_back({{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}});
    all = all && r.pass;
  }
  emit(rc, {{"pass", all}, {"criteria", arr}});
  return all ? kPass : kViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CAT(0) embeddability and witness tools"};
  app.require_subcommand(1);
  RunConfig rc;
  app.add_option("--tol", rc.tol, "Relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", rc.seed, "Seed for all randomness");
  app.add_option("--mesh", rc.mesh, "Oracle mesh intervals")->check(CLI::Range(2, 1 << 16));
  app.add_option("--multistarts", rc.multistarts, "Cycle search starts")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", rc.output, "Write JSON here instead of stdout");

  std::string file, qfile, roles, pivot, graph, map, kind = "euclidean";
  int dim = 3;
  double eps = 0.1;
  std::size_t n = 5, spaces = 100;

  auto* validate = app.add_subcommand("validate", "Check a metric file");
  validate->add_option("file", file)->required();
  auto* decide = app.add_subcommand("decide", "CAT(0) embeddability for at most five points");
  decide->add_option("file", file)->required();
  auto* check = app.add_subcommand("check-boxtimes", "Box inequalities on every quadruple");
  check->add_option("file", file)->required();
  auto* quad = app.add_subcommand("classify-quad", "Classify a quadruple against R3");
  quad->add_option("file", file)->required();
  quad->add_option("--roles", roles, "x,y,z,w")->required();
  quad->add_option("--pivot", pivot, "Free diagonal, default y,w");
  auto* witness = app.add_subcommand("witness", "Build and verify a G(0) witness");
  witness->add_option("file", file);
  witness->add_option("--metric", file);
  witness->add_option("--graph", graph, "Name or 1-based edges")->required();
  witness->add_option("--map", map, "Points for the graph vertices, default the first ones");
  auto* cdist = app.add_subcommand("complex-dist", "Distances between marked points");
  cdist->add_option("file", file)->required();
  auto* qmi = app.add_subcommand("qmi-eval", "Minimum of a quadratic metric inequality");
  qmi->add_option("q", qfile)->required();
  qmi->add_option("file", file)->required();
  auto* gen = app.add_subcommand("gen", "Sample a metric space");
  gen->add_option("--kind", kind)->check(CLI::IsMember({"euclidean", "tree", "perturbed", "complex"}));
  gen->add_option("--n", n)->check(CLI::PositiveNumber);
  gen->add_option("--dim", dim)->check(CLI::Range(1, 3));
  gen->add_option("--eps", eps)->check(CLI::NonNegativeNumber);
  auto* self = app.add_subcommand("selftest", "Run the acceptance suites");
  self->add_option("--spaces", spaces, "Spaces in the witness corpus")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*validate) return cmd_validate(rc, file);
    if (*decide) return cmd_decide(rc, file, true);
    if (*check) return cmd_decide(rc, file, false);
    if (*quad) return cmd_classify(rc, file, roles, pivot);
    if (*witness) {
      if (file.empty()) throw cat0::Error(cat0::ErrorKind::ParseError, "witness needs a metric file");
      return cmd_witness(rc, file, graph, map);
    }
    if (*cdist) return cmd_complex_dist(rc, file);
    if (*qmi) return cmd_qmi(rc, qfile, file);
    if (*gen) return cmd_gen(rc, kind, dim, eps, n);
    if (*self) return cmd_selftest(rc, spaces);
  } catch (const cat0::Error& e) {
    std::cout << error_json(e).dump(2) << "\n";
    return exit_for(e.kind());
  }
  return kInputError;
}
