#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphpoly/errors.hpp"

namespace gp {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

// Bitmask over at most 64 vertices. Used by every exponential-time routine.
using Mask = std::uint64_t;

inline Mask bit(Vertex v) { return Mask{1} << static_cast<unsigned>(v); }
inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline Vertex lowest(Mask m) { return static_cast<Vertex>(__builtin_ctzll(m)); }

/// Sorted, duplicate-free set of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs) : items_(vs) { normalize(); }
  explicit VertexSet(std::vector<Vertex> vs) : items_(std::move(vs)) { normalize(); }

  static VertexSet from_mask(Mask m) {
    VertexSet s;
    for (; m; m &= m - 1) s.items_.push_back(lowest(m));
    return s;
  }

  static VertexSet range(Vertex n) {
    VertexSet s;
    s.items_.resize(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) s.items_[static_cast<std::size_t>(v)] = v;
    return s;
  }

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  Vertex operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Vertex>& items() const noexcept { return items_; }

  bool contains(Vertex v) const { return std::binary_search(items_.begin(), items_.end(), v); }

  Mask to_mask() const {
    Mask m = 0;
    for (Vertex v : items_) {
      if (v >= 64) throw InvalidArgument("vertex set does not fit a 64-bit mask");
      m |= bit(v);
    }
    return m;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    if (!items_.empty() && items_.front() < 0) throw InvalidArgument("negative vertex index");
  }

  std::vector<Vertex> items_;
};

/// Undirected simple graph on vertices 0..n-1 with sorted adjacency lists.
/// Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  /// Builds a graph from an edge list. Duplicate edges (in either orientation) are merged.
  /// Self-loops and out-of-range endpoints are rejected.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
        throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for n=" +
                              std::to_string(n));
      if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
      g.adj_[static_cast<std::size_t>(u)].push_back(v);
      g.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    std::size_t twice = 0;
    for (auto& nb : g.adj_) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
      twice += nb.size();
    }
    g.edge_count_ = twice / 2;
    return g;
  }

  static Graph from_edges(std::size_t n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  /// Builds from per-vertex neighbour masks (n <= 64). Masks must be symmetric and loop-free.
  static Graph from_masks(std::span<const Mask> rows) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < rows.size(); ++u)
      for (Mask m = rows[u]; m; m &= m - 1) {
        Vertex v = lowest(m);
        if (static_cast<std::size_t>(v) > u) edges.emplace_back(static_cast<Vertex>(u), v);
      }
    return from_edges(rows.size(), edges);
  }

  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::size_t degree(Vertex v) const { return adj_[static_cast<std::size_t>(v)].size(); }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& nb = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Edges as (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < adj_.size(); ++u)
      for (Vertex v : adj_[u])
        if (static_cast<std::size_t>(v) > u) out.emplace_back(static_cast<Vertex>(u), v);
    return out;
  }

  /// Neighbour masks; requires n <= 64.
  std::vector<Mask> masks() const {
    if (adj_.size() > 64) throw BudgetExceeded("mask_width", "graph has more than 64 vertices");
    std::vector<Mask> rows(adj_.size(), 0);
    for (std::size_t u = 0; u < adj_.size(); ++u)
      for (Vertex v : adj_[u]) rows[u] |= bit(v);
    return rows;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

inline std::size_t max_degree(const Graph& g) {
  std::size_t d = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) d = std::max(d, g.degree(v));
  return d;
}

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;  // original[i] = vertex of the parent graph that became i
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> local(g.vertex_count(), -1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (static_cast<std::size_t>(s[i]) >= g.vertex_count())
      throw InvalidArgument("vertex " + std::to_string(s[i]) + " out of range");
    local[static_cast<std::size_t>(s[i])] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (Vertex w : g.neighbors(s[i])) {
      Vertex j = local[static_cast<std::size_t>(w)];
      if (j > static_cast<Vertex>(i)) edges.emplace_back(static_cast<Vertex>(i), j);
    }
  return {Graph::from_edges(s.size(), edges), s.items()};
}

/// Connected components in order of their smallest vertex. The 0-vertex graph has none.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack, comp;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    comp.clear();
    stack.assign(1, static_cast<Vertex>(s));
    seen[s] = 1;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (Vertex w : g.neighbors(u))
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
    }
    out.emplace_back(comp);
  }
  return out;
}

/// False for the 0-vertex graph; true for K_1.
inline bool is_connected(const Graph& g) { return connected_components(g).size() == 1; }

/// Mask-based connectivity of the subgraph induced on `s` (n <= 64).
inline bool is_connected_mask(std::span<const Mask> rows, Mask s) {
  if (!s) return false;
  Mask reached = s & (~s + 1);
  Mask frontier = reached;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= rows[static_cast<std::size_t>(lowest(f))];
    next &= s & ~reached;
    reached |= next;
    frontier = next;
  }
  return reached == s;
}

/// Disjoint union; vertices of `b` are shifted by a.vertex_count().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  auto edges = a.edges();
  const auto shift = static_cast<Vertex>(a.vertex_count());
  for (auto [u, v] : b.edges()) edges.emplace_back(u + shift, v + shift);
  return Graph::from_edges(a.vertex_count() + b.vertex_count(), edges);
}

/// Relabels vertex v as perm[v].
inline Graph permute(const Graph& g, std::span<const Vertex> perm) {
  if (perm.size() != g.vertex_count()) throw InvalidArgument("permutation size mismatch");
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    edges.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  return Graph::from_edges(g.vertex_count(), edges);
}

/// Parses the edge-list format: lines "u v", an optional first directive "n <count>",
/// '#' comments and blank lines.
inline Graph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  long declared = -1;
  long max_index = -1;
  bool seen_content = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::string first;
    if (!(in >> first)) {
      if (eol == text.size()) break;
      continue;
    }
    auto read_index = [&](const std::string& tok) -> long {
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError(line_no, "expected a non-negative integer, got '" + tok + "'");
      if (tok.size() > 9) throw ParseError(line_no, "vertex index too large: " + tok);
      return std::stol(tok);
    };
    std::string second, extra;
    if (first == "n") {
      if (seen_content) throw ParseError(line_no, "'n' directive must come first");
      if (!(in >> second) || (in >> extra)) throw ParseError(line_no, "expected 'n <count>'");
      declared = read_index(second);
      seen_content = true;
      continue;
    }
    seen_content = true;
    if (!(in >> second) || (in >> extra)) throw ParseError(line_no, "expected 'u v'");
    long u = read_index(first), v = read_index(second);
    if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
    if (declared >= 0 && (u >= declared || v >= declared))
      throw ParseError(line_no, "vertex index exceeds declared n=" + std::to_string(declared));
    max_index = std::max({max_index, u, v});
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (eol == text.size()) break;
  }
  std::size_t n = declared >= 0 ? static_cast<std::size_t>(declared) : static_cast<std::size_t>(max_index + 1);
  return Graph::from_edges(n, edges);
}

/// {"n": int, "edges": [[u,v],...]}
inline nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

inline Graph graph_from_json(const nlohmann::json& j) {
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  return Graph::from_edges(j.at("n").get<std::size_t>(), edges);
}

}  // namespace gp
