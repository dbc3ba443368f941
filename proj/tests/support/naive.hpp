#pragma once

// Deliberately simple reference implementations used only by the tests. None of them shares
// code with the library beyond the Graph type.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "graphpoly/graph.hpp"

namespace naive {

using gp::Graph;
using gp::Vertex;

inline bool is_independent(const Graph& g, std::uint64_t s) {
  for (auto [u, v] : g.edges())
    if ((s >> u & 1) && (s >> v & 1)) return false;
  return true;
}

/// alpha_k by scanning all 2^n subsets.
inline std::vector<std::int64_t> independence_coeffs(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<std::int64_t> a(n + 1, 0);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
    if (is_independent(g, s)) ++a[static_cast<std::size_t>(__builtin_popcountll(s))];
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  return a;
}

template <typename T>
T evaluate(const std::vector<std::int64_t>& a, const T& x) {
  T acc(0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + T(static_cast<double>(*it));
  return acc;
}

inline std::complex<double> Z(const Graph& g, std::complex<double> lambda) {
  return evaluate(independence_coeffs(g), lambda);
}

inline std::vector<std::vector<bool>> adjacency(const Graph& g) {
  std::vector<std::vector<bool>> m(g.vertex_count(), std::vector<bool>(g.vertex_count(), false));
  for (auto [u, v] : g.edges()) m[u][v] = m[v][u] = true;
  return m;
}

/// Isomorphism test over all vertex permutations.
inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  const auto n = a.vertex_count();
  auto ma = adjacency(a), mb = adjacency(b);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i)
      for (std::size_t j = i + 1; j < n && same; ++j) same = ma[i][j] == mb[p[i]][p[j]];
    if (same) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline Graph induced(const Graph& g, std::uint64_t s) {
  std::vector<int> idx(g.vertex_count(), -1);
  int k = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (s >> v & 1) idx[v] = k++;
  std::vector<gp::Edge> e;
  for (auto [u, v] : g.edges())
    if (idx[u] >= 0 && idx[v] >= 0) e.emplace_back(idx[u], idx[v]);
  return Graph::from_edges(static_cast<std::size_t>(k), e);
}

/// Number of vertex subsets of g inducing a copy of h.
inline std::int64_t induced_count(const Graph& h, const Graph& g) {
  std::int64_t c = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.vertex_count()); ++s)
    if (static_cast<std::size_t>(__builtin_popcountll(s)) == h.vertex_count() && isomorphic(induced(g, s), h)) ++c;
  return c;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

/// Spanning trees by testing every (n-1)-edge subset for acyclicity.
inline std::int64_t spanning_trees(const Graph& g) {
  const auto e = g.edges();
  const auto n = g.vertex_count();
  if (n == 0) return 0;
  std::int64_t c = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << e.size()); ++s) {
    if (static_cast<std::size_t>(__builtin_popcountll(s)) != n - 1) continue;
    Dsu d(n);
    bool ok = true;
    for (std::size_t i = 0; i < e.size() && ok; ++i)
      if (s >> i & 1) ok = d.unite(e[i].first, e[i].second);
    if (ok) ++c;
  }
  return c;
}

/// Proper colourings with q colours by exhaustive assignment.
inline std::int64_t colourings(const Graph& g, int q) {
  const auto n = g.vertex_count();
  if (n == 0) return 1;
  if (q == 0) return 0;
  std::vector<int> col(n, 0);
  const auto e = g.edges();
  std::int64_t c = 0;
  while (true) {
    bool ok = true;
    for (auto [u, v] : e)
      if (col[u] == col[v]) {
        ok = false;
        break;
      }
    if (ok) ++c;
    std::size_t i = 0;
    while (i < n && ++col[i] == q) col[i++] = 0;
    if (i == n) break;
  }
  return c;
}

/// Subtrees containing v, counted by edges, from all edge subsets.
inline std::vector<std::int64_t> subtrees(const Graph& g, Vertex v) {
  const auto e = g.edges();
  std::vector<std::int64_t> c(g.vertex_count(), 0);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << e.size()); ++s) {
    Dsu d(g.vertex_count());
    bool acyclic = true;
    std::uint64_t touched = std::uint64_t{1} << v;
    for (std::size_t i = 0; i < e.size() && acyclic; ++i)
      if (s >> i & 1) {
        acyclic = d.unite(e[i].first, e[i].second);
        touched |= (std::uint64_t{1} << e[i].first) | (std::uint64_t{1} << e[i].second);
      }
    if (!acyclic) continue;
    bool connected = true;
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
      if ((touched >> u & 1) && d.find(static_cast<int>(u)) != d.find(v)) connected = false;
    if (connected) ++c[static_cast<std::size_t>(__builtin_popcountll(s))];
  }
  return c;
}

/// Erdos-Renyi style graph for property tests.
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<gp::Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return Graph::from_edges(n, e);
}

/// Random graph with all degrees <= d.
inline Graph random_bounded(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::vector<gp::Edge> e;
  std::vector<std::size_t> deg(n, 0);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t t = 0; t < 3 * n * d && n > 1; ++t) {
    auto u = static_cast<std::size_t>(rng() % n), v = static_cast<std::size_t>(rng() % n);
    if (u == v || adj[u][v] || deg[u] >= d || deg[v] >= d) continue;
    adj[u][v] = adj[v][u] = true;
    ++deg[u];
    ++deg[v];
    e.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_edges(n, e);
}

/// All labelled graphs on n vertices (n <= 6), one per edge subset.
inline std::vector<Graph> all_labelled(std::size_t n) {
  std::vector<gp::Edge> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  std::vector<Graph> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << pairs.size()); ++s) {
    std::vector<gp::Edge> e;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (s >> i & 1) e.push_back(pairs[i]);
    out.push_back(Graph::from_edges(n, e));
  }
  return out;
}

}  // namespace naive
