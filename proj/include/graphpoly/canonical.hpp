#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphpoly/errors.hpp"
#include "graphpoly/graph.hpp"

namespace gp {

/// Largest vertex count a canonical key can encode (55 edge bits + 8 bits for n).
inline constexpr std::size_t kMaxCanonicalVertices = 11;
inline constexpr std::size_t kDefaultCanonicalCap = 10;

/// Index of the pair (i, j), i < j, in the upper-triangular edge encoding.
constexpr unsigned pair_index(unsigned i, unsigned j) { return j * (j - 1) / 2 + i; }

/// Isomorphism-invariant key of a small graph: vertex count plus the edge mask of the
/// canonically relabelled adjacency matrix (bit pair_index(i, j) set iff ij is an edge).
struct CanonicalKey {
  std::uint8_t n = 0;
  std::uint64_t edges = 0;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey& a, const CanonicalKey& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    return a.edges <=> b.edges;
  }

  std::size_t vertex_count() const { return n; }
  std::size_t edge_count() const { return static_cast<std::size_t>(__builtin_popcountll(edges)); }

  /// Per-vertex neighbour rows of the canonical representative.
  std::vector<std::uint16_t> rows() const {
    std::vector<std::uint16_t> r(n, 0);
    for (unsigned j = 1; j < n; ++j)
      for (unsigned i = 0; i < j; ++i)
        if (edges >> pair_index(i, j) & 1) {
          r[i] |= static_cast<std::uint16_t>(1u << j);
          r[j] |= static_cast<std::uint16_t>(1u << i);
        }
    return r;
  }

  Graph to_graph() const {
    std::vector<Edge> es;
    for (unsigned j = 1; j < n; ++j)
      for (unsigned i = 0; i < j; ++i)
        if (edges >> pair_index(i, j) & 1) es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return Graph::from_edges(n, es);
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (auto r : rows()) d = std::max<std::size_t>(d, static_cast<std::size_t>(__builtin_popcount(r)));
    return d;
  }

  bool connected() const {
    if (n == 0) return false;
    auto r = rows();
    std::uint32_t reached = 1, frontier = 1;
    while (frontier) {
      std::uint32_t next = 0;
      for (unsigned v = 0; v < n; ++v)
        if (frontier >> v & 1) next |= r[v];
      next &= ~reached;
      reached |= next;
      frontier = next;
    }
    return reached == (1u << n) - 1;
  }

  std::string to_string() const { return std::to_string(n) + ":" + std::to_string(edges); }
};

}  // namespace gp

template <>
struct std::hash<gp::CanonicalKey> {
  std::size_t operator()(const gp::CanonicalKey& k) const noexcept {
    std::uint64_t x = k.edges * 0x9E3779B97F4A7C15ull ^ (static_cast<std::uint64_t>(k.n) << 58);
    x ^= x >> 31;
    return static_cast<std::size_t>(x);
  }
};

namespace gp {

struct CanonicalForm {
  CanonicalKey key;
  std::uint64_t automorphisms = 0;
  std::vector<Vertex> labeling;  // labeling[pos] = original vertex placed at position pos
};

namespace detail {

// Stable colour refinement. Colours are ordered canonically: by degree first, then by
// the sorted multiset of neighbour colours, so isomorphic graphs receive matching colour
// classes.
inline std::vector<int> refine_colours(std::span<const std::uint16_t> rows) {
  const std::size_t n = rows.size();
  std::vector<int> colour(n);
  for (std::size_t v = 0; v < n; ++v) colour[v] = __builtin_popcount(rows[v]);
  std::size_t classes = 0;
  std::vector<std::vector<int>> sig(n);
  while (true) {
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].assign(1, colour[v]);
      std::vector<int> nb;
      for (std::size_t w = 0; w < n; ++w)
        if (rows[v] >> w & 1) nb.push_back(colour[w]);
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<int>> distinct(sig.begin(), sig.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t v = 0; v < n; ++v)
      colour[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    if (distinct.size() == classes) break;
    classes = distinct.size();
  }
  return colour;
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(std::span<const std::uint16_t> rows) : rows_(rows), n_(static_cast<unsigned>(rows.size())) {
    auto colour = refine_colours(rows);
    std::vector<unsigned> order(n_);
    for (unsigned v = 0; v < n_; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](unsigned a, unsigned b) { return colour[a] < colour[b]; });
    int max_colour = 0;
    for (int c : colour) max_colour = std::max(max_colour, c);
    members_.assign(static_cast<std::size_t>(max_colour) + 1, 0);
    for (unsigned v = 0; v < n_; ++v) members_[static_cast<std::size_t>(colour[v])] |= static_cast<std::uint16_t>(1u << v);
    slot_class_.resize(n_);
    for (unsigned pos = 0; pos < n_; ++pos) slot_class_[pos] = colour[order[pos]];
    total_bits_ = n_ * (n_ - (n_ ? 1 : 0)) / 2;
    perm_.resize(n_);
  }

  CanonicalForm run() {
    dfs(0, 0, 0);
    CanonicalForm out;
    out.key.n = static_cast<std::uint8_t>(n_);
    out.automorphisms = count_;
    out.labeling.assign(best_perm_.begin(), best_perm_.end());
    // best_code_ is MSB-first in pair order; convert to the pair-indexed mask.
    for (unsigned idx = 0; idx < total_bits_; ++idx)
      if (best_code_ >> (total_bits_ - 1 - idx) & 1) out.key.edges |= std::uint64_t{1} << idx;
    if (n_ <= 1) out.automorphisms = 1;
    return out;
  }

 private:
  void dfs(unsigned pos, std::uint64_t code, std::uint16_t used) {
    if (pos == n_) {
      if (!have_best_ || code < best_code_) {
        best_code_ = code;
        best_perm_ = perm_;
        have_best_ = true;
        count_ = 1;
      } else if (code == best_code_) {
        ++count_;
      }
      return;
    }
    const unsigned bits_after = total_bits_ - pos * (pos + 1) / 2;
    std::uint16_t cand = members_[static_cast<std::size_t>(slot_class_[pos])] & static_cast<std::uint16_t>(~used);
    for (; cand; cand &= static_cast<std::uint16_t>(cand - 1)) {
      unsigned v = static_cast<unsigned>(__builtin_ctz(cand));
      std::uint64_t col = 0;
      for (unsigned j = 0; j < pos; ++j) col = (col << 1) | ((rows_[perm_[j]] >> v) & 1u);
      std::uint64_t next = (code << pos) | col;
      if (have_best_ && next > (best_code_ >> bits_after)) continue;
      perm_[pos] = static_cast<Vertex>(v);
      dfs(pos + 1, next, static_cast<std::uint16_t>(used | (1u << v)));
    }
  }

  std::span<const std::uint16_t> rows_;
  unsigned n_;
  unsigned total_bits_ = 0;
  std::vector<std::uint16_t> members_;
  std::vector<int> slot_class_;
  std::vector<Vertex> perm_, best_perm_;
  std::uint64_t best_code_ = 0;
  bool have_best_ = false;
  std::uint64_t count_ = 0;
};

}  // namespace detail

/// Canonical form of a small graph given by neighbour rows. The key is the minimal
/// upper-triangular code over all labelings that respect the stable colour refinement
/// (degree-based), which is a complete isomorphism invariant. Also reports |Aut|.
inline CanonicalForm canonical_form(std::span<const std::uint16_t> rows) {
  if (rows.size() > kMaxCanonicalVertices)
    throw BudgetExceeded("canonical_cap", "canonical form requested for " + std::to_string(rows.size()) + " vertices");
  return detail::CanonicalSearch(rows).run();
}

inline std::vector<std::uint16_t> small_rows(const Graph& g) {
  if (g.vertex_count() > kMaxCanonicalVertices)
    throw BudgetExceeded("canonical_cap", "graph too large for canonical key");
  std::vector<std::uint16_t> rows(g.vertex_count(), 0);
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
    for (Vertex w : g.neighbors(v)) rows[static_cast<std::size_t>(v)] |= static_cast<std::uint16_t>(1u << w);
  return rows;
}

inline CanonicalKey canonical_key(const Graph& g, std::size_t cap = kDefaultCanonicalCap) {
  if (g.vertex_count() > std::min(cap, kMaxCanonicalVertices))
    throw BudgetExceeded("canonical_cap", "canonical_key: " + std::to_string(g.vertex_count()) +
                                              " vertices exceeds cap " + std::to_string(cap));
  auto rows = small_rows(g);
  return canonical_form(rows).key;
}

inline std::uint64_t automorphism_count(const CanonicalKey& k) {
  auto rows = k.rows();
  return canonical_form(rows).automorphisms;
}

/// Memo from labelled small graphs to canonical keys. Not thread-safe; use one per worker.
class CanonicalCache {
 public:
  CanonicalKey key(std::span<const std::uint16_t> rows) {
    const auto n = static_cast<unsigned>(rows.size());
    std::uint64_t code = static_cast<std::uint64_t>(n) << 56;
    for (unsigned j = 1; j < n; ++j)
      for (unsigned i = 0; i < j; ++i)
        if (rows[j] >> i & 1) code |= std::uint64_t{1} << pair_index(i, j);
    auto it = memo_.find(code);
    if (it != memo_.end()) return it->second;
    auto k = canonical_form(rows).key;
    memo_.emplace(code, k);
    return k;
  }

  std::size_t size() const { return memo_.size(); }

 private:
  std::unordered_map<std::uint64_t, CanonicalKey> memo_;
};

/// All graphs on n vertices up to isomorphism (n <= 8 is practical), sorted by key.
/// Built by one-vertex augmentation of the (n-1)-vertex classes.
inline std::vector<CanonicalKey> all_graphs(std::size_t n) {
  std::vector<CanonicalKey> level{CanonicalKey{}};
  for (std::size_t k = 1; k <= n; ++k) {
    std::set<CanonicalKey> next;
    for (const auto& base : level) {
      auto rows = base.rows();
      rows.push_back(0);
      const auto fresh = static_cast<unsigned>(k - 1);
      for (std::uint32_t nb = 0; nb < (1u << fresh); ++nb) {
        for (unsigned v = 0; v < fresh; ++v) {
          rows[v] = static_cast<std::uint16_t>(rows[v] & ~(1u << fresh));
          if (nb >> v & 1) rows[v] = static_cast<std::uint16_t>(rows[v] | (1u << fresh));
        }
        rows[fresh] = static_cast<std::uint16_t>(nb);
        next.insert(canonical_form(rows).key);
      }
    }
    level.assign(next.begin(), next.end());
  }
  return level;
}

}  // namespace gp
