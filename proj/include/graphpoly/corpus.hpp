#pragma once

#include <functional>
#include <string>
#include <vector>

#include "graphpoly/canonical.hpp"
#include "graphpoly/errors.hpp"
#include "graphpoly/generators.hpp"
#include "graphpoly/graph.hpp"

namespace gp {

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// Complete tree of the given depth in which every vertex has at most max_deg neighbours
/// (the root gets max_deg children, the others max_deg - 1), filled breadth first up to n.
inline Graph balanced_tree(std::size_t n, std::size_t max_deg) {
  if (n <= 1 || max_deg == 0) return Graph(n);
  std::vector<Edge> edges;
  std::size_t next = 1;
  for (std::size_t parent = 0; next < n; ++parent) {
    const std::size_t kids = parent == 0 ? max_deg : max_deg - 1;
    if (kids == 0) break;
    for (std::size_t k = 0; k < kids && next < n; ++k, ++next)
      edges.emplace_back(static_cast<Vertex>(parent), static_cast<Vertex>(next));
  }
  if (next < n) throw InvalidArgument("balanced_tree: max_deg too small to connect n vertices");
  return Graph::from_edges(n, edges);
}

/// Complete binary tree of depth h (2^{h+1} - 1 vertices, maximum degree 3 for h >= 2).
inline Graph complete_binary_tree(std::size_t depth) {
  const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(static_cast<Vertex>((v - 1) / 2), static_cast<Vertex>(v));
  return Graph::from_edges(n, edges);
}

/// Fixed, seed-stable mix of structured and random graphs used by the experiments.
/// Small connected graphs (n <= 5) are included exhaustively.
inline std::vector<NamedGraph> standard_corpus() {
  std::vector<NamedGraph> out;
  auto add = [&](std::string name, Graph g) { out.push_back({std::move(name), std::move(g)}); };
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& k : all_graphs(n))
      if (k.connected()) add("conn_" + k.to_string(), k.to_graph());
  for (std::size_t n = 6; n <= 20; n += 2) add("path_" + std::to_string(n), gen::path(n));
  for (std::size_t n = 6; n <= 20; n += 2) add("cycle_" + std::to_string(n), gen::cycle(n));
  for (std::size_t k = 3; k <= 4; ++k) add("star_" + std::to_string(k), gen::star(k));
  add("complete_5", gen::complete(5));
  add("bipartite_3_3", gen::complete_bipartite(3, 3));
  add("bipartite_4_4", gen::complete_bipartite(4, 4));
  add("grid_2_4", gen::grid(2, 4));
  add("grid_3_3", gen::grid(3, 3));
  add("grid_3_4", gen::grid(3, 4));
  add("grid_4_4", gen::grid(4, 4));
  for (std::size_t depth = 2; depth <= 3; ++depth)
    add("binary_tree_" + std::to_string(depth), complete_binary_tree(depth));
  for (std::size_t d = 3; d <= 4; ++d)
    for (std::size_t n = 8; n <= 20; n += 2)
      for (std::uint64_t seed = 1; seed <= 2; ++seed)
        add("random_regular_" + std::to_string(n) + "_" + std::to_string(d) + "_seed" + std::to_string(seed),
            gen::random_regular(n, d, seed));
  for (std::size_t d = 3; d <= 4; ++d)
    for (std::size_t n = 6; n <= 20; n += 2)
      add("random_tree_" + std::to_string(n) + "_" + std::to_string(d), gen::random_tree(n, 100 + n, d));
  for (std::size_t d = 3; d <= 4; ++d)
    for (std::size_t n = 6; n <= 20; n += 2)
      add("random_bounded_" + std::to_string(n) + "_" + std::to_string(d), gen::random_bounded(n, d, 200 + n));
  return out;
}

/// Corpus members with at most max_n vertices and maximum degree in [min_delta, max_delta].
inline std::vector<NamedGraph> corpus_filter(std::size_t max_n, std::size_t min_delta, std::size_t max_delta) {
  std::vector<NamedGraph> out;
  for (auto& ng : standard_corpus()) {
    const auto d = max_degree(ng.graph);
    if (ng.graph.vertex_count() <= max_n && d >= min_delta && d <= max_delta) out.push_back(std::move(ng));
  }
  return out;
}

/// Graph families for the root surveys.
///   trees: paths, breadth-first balanced trees and seeded random trees of max degree delta
///   binary_trees: complete binary trees of increasing depth while they fit max_n
///   regular: random delta-regular graphs
///   corpus: the standard corpus filtered by n and delta
inline std::vector<NamedGraph> family(const std::string& name, std::size_t delta, std::size_t max_n, std::uint64_t seed) {
  std::vector<NamedGraph> out;
  if (name == "trees") {
    if (delta < 2) throw InvalidArgument("trees family needs delta >= 2");
    for (std::size_t n = 2; n <= max_n; ++n) {
      out.push_back({"path_" + std::to_string(n), gen::path(n)});
      if (n > delta) out.push_back({"balanced_" + std::to_string(n), balanced_tree(n, delta)});
      if (n > 3)
        out.push_back({"random_tree_" + std::to_string(n) + "_seed" + std::to_string(seed),
                       gen::random_tree(n, derive_seed(seed, n), delta)});
    }
  } else if (name == "binary_trees") {
    for (std::size_t depth = 1; (std::size_t{1} << (depth + 1)) - 1 <= max_n; ++depth)
      out.push_back({"binary_tree_" + std::to_string(depth), complete_binary_tree(depth)});
  } else if (name == "regular") {
    for (std::size_t n = delta + 1; n <= max_n; ++n)
      if ((n * delta) % 2 == 0)
        out.push_back({"random_regular_" + std::to_string(n) + "_" + std::to_string(delta) + "_seed" + std::to_string(seed),
                       gen::random_regular(n, delta, derive_seed(seed, n))});
  } else if (name == "corpus") {
    out = corpus_filter(max_n, 0, delta);
  } else {
    throw InvalidArgument("unknown family '" + name + "' (trees, binary_trees, regular, corpus)");
  }
  return out;
}

}  // namespace gp
