#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cat0/error.hpp"

namespace cat0 {

inline constexpr std::size_t kMaxGraphVertices = 5;

// Simple graph on vertices 0..n-1, adjacency as bit rows.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t n) : n_(n) {
    if (n > kMaxGraphVertices) throw Error(ErrorKind::BadParams, "graphs have at most five vertices");
  }
  SimpleGraph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) : SimpleGraph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  std::size_t size() const noexcept { return n_; }

  void add_edge(std::size_t u, std::size_t v) {
    if (u >= n_ || v >= n_) throw Error(ErrorKind::BadIndex, "edge endpoint");
    if (u == v) throw Error(ErrorKind::BadParams, "loop");
    adj_[u] |= 1u << v;
    adj_[v] |= 1u << u;
  }
  void remove_edge(std::size_t u, std::size_t v) {
    adj_[u] &= ~(1u << v);
    adj_[v] &= ~(1u << u);
  }
  bool has_edge(std::size_t u, std::size_t v) const noexcept { return (adj_[u] >> v) & 1u; }
  std::uint32_t row(std::size_t u) const noexcept { return adj_[u]; }
  std::size_t degree(std::size_t u) const noexcept { return static_cast<std::size_t>(__builtin_popcount(adj_[u])); }

  std::size_t edge_count() const noexcept {
    std::size_t e = 0;
    for (std::size_t u = 0; u < n_; ++u) e += degree(u);
    return e / 2;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (has_edge(u, v)) out.push_back({u, v});
    return out;
  }

  // Bit k of the code is the k-th pair (u<v) in lexicographic order.
  std::uint32_t code() const noexcept {
    std::uint32_t c = 0;
    int k = 0;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v, ++k)
        if (has_edge(u, v)) c |= 1u << k;
    return c;
  }

  static SimpleGraph from_code(std::size_t n, std::uint32_t c) {
    SimpleGraph g(n);
    int k = 0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v, ++k)
        if ((c >> k) & 1u) g.add_edge(u, v);
    return g;
  }

  // Image under the vertex map perm (vertex u goes to perm[u]).
  SimpleGraph relabeled(const std::vector<std::size_t>& perm) const {
    SimpleGraph g(n_);
    for (auto [u, v] : edges()) g.add_edge(perm[u], perm[v]);
    return g;
  }

  // Vertices reachable from s inside the allowed set.
  std::vector<std::size_t> component_of(std::size_t s, std::uint32_t allowed) const {
    std::uint32_t seen = 1u << s, frontier = seen;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::size_t u = 0; u < n_; ++u)
        if ((frontier >> u) & 1u) next |= adj_[u] & allowed;
      frontier = next & ~seen;
      seen |= next;
    }
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < n_; ++u)
      if ((seen >> u) & 1u) out.push_back(u);
    return out;
  }

  std::uint32_t all() const noexcept { return n_ == 0 ? 0u : (1u << n_) - 1u; }

  std::vector<std::vector<std::size_t>> components() const {
    std::vector<std::vector<std::size_t>> out;
    std::uint32_t left = all();
    while (left) {
      const auto s = static_cast<std::size_t>(__builtin_ctz(left));
      auto c = component_of(s, all());
      for (auto v : c) left &= ~(1u << v);
      out.push_back(std::move(c));
    }
    return out;
  }

  bool connected() const { return n_ <= 1 || components().size() == 1; }
  bool is_tree() const { return connected() && edge_count() + 1 == n_; }
  bool is_complete() const { return edge_count() == n_ * (n_ - 1) / 2; }

  bool is_cycle() const {
    if (n_ < 3 || !connected()) return false;
    for (std::size_t u = 0; u < n_; ++u)
      if (degree(u) != 2) return false;
    return true;
  }

  // Vertices whose removal disconnects the rest.
  std::vector<std::size_t> cut_vertices() const {
    std::vector<std::size_t> out;
    if (!connected()) return out;
    for (std::size_t v = 0; v < n_; ++v) {
      const std::uint32_t rest = all() & ~(1u << v);
      if (!rest) continue;
      const auto s = static_cast<std::size_t>(__builtin_ctz(rest));
      if (component_of(s, rest).size() + 1 < n_) out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) { return a.n_ == b.n_ && a.code() == b.code(); }

 private:
  std::size_t n_ = 0;
  std::array<std::uint32_t, kMaxGraphVertices> adj_{};
};

inline std::vector<std::vector<std::size_t>> permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Smallest code over all relabelings.
inline std::uint32_t canonical_code(const SimpleGraph& g) {
  std::uint32_t best = ~0u;
  for (const auto& p : permutations(g.size())) best = std::min(best, g.relabeled(p).code());
  return best;
}

// A vertex map sigma with g.relabeled(sigma) == h, if one exists.
inline std::optional<std::vector<std::size_t>> isomorphism(const SimpleGraph& g, const SimpleGraph& h) {
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return std::nullopt;
  for (const auto& p : permutations(g.size()))
    if (g.relabeled(p) == h) return p;
  return std::nullopt;
}

// Every vertex map sigma with g.relabeled(sigma) == h, in lexicographic order.
inline std::vector<std::vector<std::size_t>> isomorphisms(const SimpleGraph& g, const SimpleGraph& h) {
  std::vector<std::vector<std::size_t>> out;
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return out;
  for (const auto& p : permutations(g.size()))
    if (g.relabeled(p) == h) out.push_back(p);
  return out;
}

// One representative per isomorphism class, ordered by canonical code.
inline std::vector<SimpleGraph> isomorphism_classes(std::size_t n) {
  std::map<std::uint32_t, SimpleGraph> reps;
  const std::uint32_t pairs = static_cast<std::uint32_t>(n * (n - 1) / 2);
  for (std::uint32_t c = 0; c < (1u << pairs); ++c) {
    const auto g = SimpleGraph::from_code(n, c);
    const auto k = canonical_code(g);
    if (!reps.count(k)) reps.emplace(k, SimpleGraph::from_code(n, k));
  }
  std::vector<SimpleGraph> out;
  for (auto& [k, g] : reps) out.push_back(g);
  return out;
}

// Graph from 1-based vertex pairs such as {{1,2},{2,3}}.
inline SimpleGraph graph1(std::size_t n, std::initializer_list<std::pair<int, int>> edges) {
  SimpleGraph g(n);
  for (auto [u, v] : edges) g.add_edge(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
  return g;
}

inline SimpleGraph complete_graph(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline SimpleGraph cycle_graph(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

inline SimpleGraph path_graph(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

namespace catalogue {

// Four-vertex graphs, labeled as in the figure of all graphs on four vertices.
inline SimpleGraph g4(int k) {
  switch (k) {
    case 1: return SimpleGraph(4);
    case 2: return graph1(4, {{1, 2}});
    case 3: return graph1(4, {{1, 2}, {1, 3}});
    case 4: return graph1(4, {{1, 2}, {3, 4}});
    case 5: return graph1(4, {{1, 2}, {1, 3}, {1, 4}});
    case 6: return graph1(4, {{1, 2}, {2, 4}, {4, 3}});
    case 7: return graph1(4, {{1, 2}, {1, 3}, {2, 3}});
    case 8: return graph1(4, {{1, 2}, {2, 4}, {4, 3}, {3, 1}});
    case 9: return graph1(4, {{1, 2}, {1, 3}, {2, 3}, {3, 4}});
    case 10: return graph1(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}});
    case 11: return complete_graph(4);
    default: throw Error(ErrorKind::BadParams, "G4 index " + std::to_string(k));
  }
}

// Five-vertex graphs with minimum degree at least two, labeled so that the
// constructions' vertex roles read off directly.
inline SimpleGraph g5(int k) {
  switch (k) {
    case 1: return cycle_graph(5);
    case 2: return graph1(5, {{1, 2}, {2, 5}, {5, 1}, {3, 4}, {4, 5}, {5, 3}});
    case 3: return graph1(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {2, 5}});
    case 4: return graph1(5, {{1, 2}, {2, 3}, {4, 5}, {5, 1}, {2, 4}, {3, 5}});
    case 5: return graph1(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {2, 5}, {3, 5}});
    case 6: return graph1(5, {{1, 2}, {2, 3}, {4, 5}, {5, 1}, {2, 4}, {3, 5}, {2, 5}});
    case 7: return graph1(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {2, 4}, {3, 5}});
    case 8: {
      auto g = complete_graph(5);
      g.remove_edge(0, 1);
      g.remove_edge(0, 2);
      return g;
    }
    case 9: return graph1(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {3, 4}, {4, 5}, {5, 2}});
    case 10: {
      auto g = complete_graph(5);
      g.remove_edge(0, 1);
      return g;
    }
    case 11: return complete_graph(5);
    default: throw Error(ErrorKind::BadParams, "G5 index " + std::to_string(k));
  }
}

}  // namespace catalogue

// Names G4_1..G4_11, G5_1..G5_11, K4, K5, C4, C5, P4, P5, or 1-based edges
// "1-2,2-3" (vertex count from --n or the largest endpoint).
inline SimpleGraph parse_graph(const std::string& text, std::size_t n_hint = 0) {
  auto starts = [&](const char* p) { return text.rfind(p, 0) == 0; };
  try {
    if (starts("G4_")) return catalogue::g4(std::stoi(text.substr(3)));
    if (starts("G5_")) return catalogue::g5(std::stoi(text.substr(3)));
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::ParseError, text);
  }
  if (text.size() == 2 && std::isdigit(static_cast<unsigned char>(text[1]))) {
    const std::size_t n = static_cast<std::size_t>(text[1] - '0');
    if (n >= 2 && n <= kMaxGraphVertices) {
      if (text[0] == 'K') return complete_graph(n);
      if (text[0] == 'C' && n >= 3) return cycle_graph(n);
      if (text[0] == 'P') return path_graph(n);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t n = n_hint;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw Error(ErrorKind::ParseError, "edge '" + item + "'");
    int u = 0, v = 0;
    try {
      u = std::stoi(item.substr(0, dash));
      v = std::stoi(item.substr(dash + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "edge '" + item + "'");
    }
    if (u < 1 || v < 1) throw Error(ErrorKind::ParseError, "vertices are 1-based");
    edges.push_back({static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1)});
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(u, v)));
  }
  return SimpleGraph(n, edges);
}

inline std::string format_graph(const SimpleGraph& g) {
  std::string s;
  for (auto [u, v] : g.edges()) {
    if (!s.empty()) s += ',';
    s += std::to_string(u + 1) + "-" + std::to_string(v + 1);
  }
  return s;
}

}  // namespace cat0
