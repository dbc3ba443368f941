#pragma once

#include <span>
#include <vector>

#include "graphpoly/errors.hpp"
#include "graphpoly/graph.hpp"

namespace gp {

/// Visits every connected vertex set S with 1 <= |S| <= k whose minimum is `root`, each
/// exactly once. A set is grown only by vertices larger than the root that are not already
/// in the set or adjacent to it at the time the extension list was formed (extension-set
/// growth), which makes every set reachable along a single path.
/// The visitor receives the members in insertion order (root first).
class ConnectedSetWalker {
 public:
  explicit ConnectedSetWalker(const Graph& g) : g_(g), touch_(g.vertex_count(), 0), in_set_(g.vertex_count(), 0) {}

  template <typename Visitor>
  void walk_root(Vertex root, std::size_t k, Visitor&& visit) {
    if (k == 0) return;
    members_.clear();
    std::vector<Vertex> ext;
    for (Vertex u : g_.neighbors(root))
      if (u > root) ext.push_back(u);
    push(root);
    extend(root, k, ext, visit);
    pop();
  }

 private:
  void push(Vertex v) {
    members_.push_back(v);
    in_set_[static_cast<std::size_t>(v)] = 1;
    for (Vertex u : g_.neighbors(v)) ++touch_[static_cast<std::size_t>(u)];
  }

  void pop() {
    Vertex v = members_.back();
    members_.pop_back();
    in_set_[static_cast<std::size_t>(v)] = 0;
    for (Vertex u : g_.neighbors(v)) --touch_[static_cast<std::size_t>(u)];
  }

  template <typename Visitor>
  void extend(Vertex root, std::size_t k, std::vector<Vertex> ext, Visitor& visit) {
    visit(std::span<const Vertex>(members_));
    if (members_.size() == k) return;
    while (!ext.empty()) {
      Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      for (Vertex u : g_.neighbors(w))
        if (u > root && !in_set_[static_cast<std::size_t>(u)] && touch_[static_cast<std::size_t>(u)] == 0)
          next.push_back(u);
      push(w);
      extend(root, k, std::move(next), visit);
      pop();
    }
  }

  const Graph& g_;
  std::vector<int> touch_;     // number of current members adjacent to each vertex
  std::vector<char> in_set_;
  std::vector<Vertex> members_;
};

/// Visits all connected sets of size 1..k, each once.
template <typename Visitor>
void enumerate_connected_sets(const Graph& g, std::size_t k, Visitor&& visit) {
  ConnectedSetWalker walker(g);
  for (Vertex r = 0; r < static_cast<Vertex>(g.vertex_count()); ++r) walker.walk_root(r, k, visit);
}

inline std::vector<VertexSet> connected_sets(const Graph& g, std::size_t k) {
  std::vector<VertexSet> out;
  enumerate_connected_sets(g, k, [&](std::span<const Vertex> s) { out.emplace_back(std::vector<Vertex>(s.begin(), s.end())); });
  return out;
}

}  // namespace gp
