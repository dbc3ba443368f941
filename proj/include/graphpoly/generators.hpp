#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "graphpoly/errors.hpp"
#include "graphpoly/graph.hpp"

namespace gp {

/// Platform-independent random source. std::*_distribution are implementation-defined,
/// so sampling is done by hand on top of mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("Rng::below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed (splitmix64 finaliser).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace gen {

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(static_cast<Vertex>(i - 1), static_cast<Vertex>(i));
  return Graph::from_edges(n, e);
}

inline Graph cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return Graph::from_edges(n, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return Graph::from_edges(n, e);
}

inline Graph empty(std::size_t n) { return Graph(n); }

/// Centre 0 joined to `leaves` further vertices.
inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, static_cast<Vertex>(i));
  return Graph::from_edges(leaves + 1, e);
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(a + j));
  return Graph::from_edges(a + b, e);
}

inline Graph grid(std::size_t rows, std::size_t cols) {
  std::vector<Edge> e;
  auto id = [&](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph::from_edges(rows * cols, e);
}

/// Uniformly-paired random d-regular simple graph (pairing with local rejection and restarts).
inline Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if ((n * d) % 2 != 0) throw InvalidArgument("random_regular: n*d must be even");
  if (d >= n && n > 0 && d > 0) throw InvalidArgument("random_regular: degree must be below n");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Vertex> points;
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t k = 0; k < d; ++k) points.push_back(static_cast<Vertex>(v));
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    std::vector<Edge> edges;
    bool stuck = false;
    while (!points.empty() && !stuck) {
      bool placed = false;
      for (int tries = 0; tries < 200 && !placed; ++tries) {
        std::size_t i = rng.below(points.size()), j = rng.below(points.size());
        Vertex u = points[i], v = points[j];
        if (i == j || u == v || adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) continue;
        adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
        edges.emplace_back(u, v);
        if (i < j) std::swap(i, j);
        points.erase(points.begin() + static_cast<std::ptrdiff_t>(i));
        points.erase(points.begin() + static_cast<std::ptrdiff_t>(j));
        placed = true;
      }
      stuck = !placed;
    }
    if (!stuck) return Graph::from_edges(n, edges);
  }
  throw Error("random_regular: failed to sample a simple graph");
}

/// Random recursive tree: vertex i attaches to a uniform earlier vertex whose degree is
/// below `max_deg` (0 = unbounded); labels are shuffled afterwards.
inline Graph random_tree(std::size_t n, std::uint64_t seed, std::size_t max_deg = 0) {
  if (max_deg == 1 && n > 2) throw InvalidArgument("random_tree: max degree 1 allows at most 2 vertices");
  Rng rng(seed);
  std::vector<std::size_t> deg(n, 0);
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<Vertex> open;
    for (std::size_t j = 0; j < i; ++j)
      if (max_deg == 0 || deg[j] < max_deg) open.push_back(static_cast<Vertex>(j));
    Vertex p = open[rng.below(open.size())];
    ++deg[static_cast<std::size_t>(p)];
    ++deg[i];
    edges.emplace_back(p, static_cast<Vertex>(i));
  }
  std::vector<Vertex> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Vertex>(i);
  rng.shuffle(perm);
  for (auto& [u, v] : edges) {
    u = perm[static_cast<std::size_t>(u)];
    v = perm[static_cast<std::size_t>(v)];
  }
  return Graph::from_edges(n, edges);
}

/// Random graph with maximum degree at most `max_deg`: n*max_deg random vertex pairs are
/// proposed and kept when both endpoints still have spare degree.
inline Graph random_bounded(std::size_t n, std::size_t max_deg, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> deg(n, 0);
  std::vector<Edge> edges;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  if (n < 2) return Graph(n);
  for (std::size_t t = 0; t < n * max_deg; ++t) {
    auto u = static_cast<std::size_t>(rng.below(n)), v = static_cast<std::size_t>(rng.below(n));
    if (u == v || adj[u][v] || deg[u] >= max_deg || deg[v] >= max_deg) continue;
    adj[u][v] = adj[v][u] = 1;
    ++deg[u];
    ++deg[v];
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_edges(n, edges);
}

}  // namespace gen

/// Parses a generator spec "gen:<kind>:<p1>[:<p2>][:seed<k>]" and builds the graph.
/// Kinds: path, cycle, complete, empty, star, complete_bipartite, grid, random_regular,
/// random_tree (n[:max_deg]), random_bounded (n:max_deg).
inline Graph generate(std::string_view spec) {
  std::vector<std::string> parts;
  {
    std::string s(spec);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
  }
  if (parts.size() < 2 || parts[0] != "gen") throw InvalidArgument("generator spec must look like gen:<kind>:...");
  const std::string kind = parts[1];
  std::uint64_t seed = 0;
  std::vector<std::size_t> params;
  for (std::size_t i = 2; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    try {
      if (p.rfind("seed", 0) == 0) {
        seed = std::stoull(p.substr(4));
      } else {
        std::size_t used = 0;
        params.push_back(std::stoull(p, &used));
        if (used != p.size()) throw InvalidArgument("bad parameter");
      }
    } catch (const std::exception&) {
      throw InvalidArgument("bad generator parameter '" + p + "' in " + std::string(spec));
    }
  }
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw InvalidArgument("generator '" + kind + "' expects " + std::to_string(k) + " parameter(s)");
  };
  if (kind == "path") return need(1), gen::path(params[0]);
  if (kind == "cycle") return need(1), gen::cycle(params[0]);
  if (kind == "complete") return need(1), gen::complete(params[0]);
  if (kind == "empty") return need(1), gen::empty(params[0]);
  if (kind == "star") return need(1), gen::star(params[0]);
  if (kind == "complete_bipartite") return need(2), gen::complete_bipartite(params[0], params[1]);
  if (kind == "grid") return need(2), gen::grid(params[0], params[1]);
  if (kind == "random_regular") return need(2), gen::random_regular(params[0], params[1], seed);
  if (kind == "random_bounded") return need(2), gen::random_bounded(params[0], params[1], seed);
  if (kind == "random_tree") {
    if (params.size() == 1) return gen::random_tree(params[0], seed);
    return need(2), gen::random_tree(params[0], seed, params[1]);
  }
  throw InvalidArgument("unknown generator kind '" + kind + "'");
}

/// A graph source is either a generator spec or a path to an edge-list / JSON file.
inline Graph load_graph(const std::string& source) {
  if (source.rfind("gen:", 0) == 0) return generate(source);
  std::ifstream in(source);
  if (!in) throw InvalidArgument("cannot open graph file '" + source + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return graph_from_json(nlohmann::json::parse(text));
  return parse_edge_list(text);
}

}  // namespace gp
