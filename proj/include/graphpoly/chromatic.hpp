#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphpoly/canonical.hpp"
#include "graphpoly/connected_sets.hpp"
#include "graphpoly/errors.hpp"
#include "graphpoly/graph.hpp"
#include "graphpoly/interpolation.hpp"
#include "graphpoly/numeric.hpp"
#include "graphpoly/polynomial.hpp"
#include "graphpoly/roots.hpp"
#include "graphpoly/spanning_trees.hpp"

namespace gp {

inline constexpr std::size_t kDefaultChromaticBudget = 5'000'000;
inline constexpr std::size_t kMaxClusterEdges = 22;
inline constexpr std::size_t kDefaultPolymerStateCap = 5'000'000;
inline constexpr std::size_t kDefaultConnectedSetCap = 5'000'000;
inline constexpr std::uint64_t kDefaultSubtreeBudget = 200'000'000;
inline constexpr double kChromaticConstant = 6.91;

namespace detail {

inline std::vector<Mask> remove_vertex(const std::vector<Mask>& rows, std::size_t v) {
  const Mask low = bit(static_cast<Vertex>(v)) - 1;
  auto squeeze = [&](Mask m) { return (m & low) | ((m >> 1) & ~low); };
  std::vector<Mask> out;
  out.reserve(rows.size() - 1);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (i != v) out.push_back(squeeze(rows[i] & ~bit(static_cast<Vertex>(v))));
  return out;
}

class DeletionContraction {
 public:
  explicit DeletionContraction(std::size_t budget) : budget_(budget) {}

  IntPolynomial run(std::vector<Mask> rows) {
    if (++calls_ > budget_)
      throw BudgetExceeded("chromatic_budget", "deletion-contraction exceeded " + std::to_string(budget_) +
                                                   " calls; random_cluster_eval is an alternative for tiny graphs");
    const std::size_t n = rows.size();
    if (n == 0) return IntPolynomial{1};
    std::size_t edges2 = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const int d = popcount(rows[v]);
      edges2 += static_cast<std::size_t>(d);
      if (d == 0) return IntPolynomial{0, 1} * run(remove_vertex(rows, v));
      if (d == 1) return IntPolynomial{-1, 1} * run(remove_vertex(rows, v));
    }
    if (edges2 == n * (n - 1)) return falling_factorial(n);

    std::optional<CanonicalKey> ckey;
    std::vector<Mask> raw;
    if (n <= kDefaultCanonicalCap) {
      std::vector<std::uint16_t> small(rows.begin(), rows.end());
      ckey = canon_.key(small);
      if (auto it = canonical_memo_.find(*ckey); it != canonical_memo_.end()) return it->second;
    } else {
      raw = rows;
      if (auto it = raw_memo_.find(raw); it != raw_memo_.end()) return it->second;
    }

    std::size_t u = 0;
    for (std::size_t v = 1; v < n; ++v)
      if (popcount(rows[v]) > popcount(rows[u])) u = v;
    const auto w = static_cast<std::size_t>(lowest(rows[u]));

    auto deleted = rows;
    deleted[u] &= ~bit(static_cast<Vertex>(w));
    deleted[w] &= ~bit(static_cast<Vertex>(u));

    auto contracted = rows;
    contracted[u] |= contracted[w];
    contracted[u] &= ~(bit(static_cast<Vertex>(u)) | bit(static_cast<Vertex>(w)));
    for (Mask nb = rows[w]; nb; nb &= nb - 1) {
      auto x = static_cast<std::size_t>(lowest(nb));
      if (x != u) contracted[x] |= bit(static_cast<Vertex>(u));
    }
    contracted = remove_vertex(contracted, w);

    IntPolynomial result = run(std::move(deleted)) - run(std::move(contracted));
    if (ckey) canonical_memo_.emplace(*ckey, result);
    else raw_memo_.emplace(std::move(raw), result);
    return result;
  }

 private:
  std::size_t budget_;
  std::size_t calls_ = 0;
  CanonicalCache canon_;
  std::unordered_map<CanonicalKey, IntPolynomial> canonical_memo_;
  std::map<std::vector<Mask>, IntPolynomial> raw_memo_;
};

/// c_k = sum over edge subsets F with k(F) = k of (-1)^|F|, by include/exclude recursion
/// over the edges with a rollback union-find.
class SignedClusterCounter {
 public:
  SignedClusterCounter(std::size_t n, std::vector<Edge> edges)
      : n_(n), edges_(std::move(edges)), parent_(n), size_(n, 1), counts_(n + 1, 0) {
    if (edges_.size() > kMaxClusterEdges)
      throw BudgetExceeded("cluster_edge_cap", std::to_string(edges_.size()) + " edges exceeds the 2^22 enumeration cap");
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::vector<std::int64_t> run() {
    walk(0, n_, 1);
    return counts_;
  }

 private:
  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  void walk(std::size_t i, std::size_t components, int sign) {
    if (i == edges_.size()) {
      counts_[components] += sign;
      return;
    }
    walk(i + 1, components, sign);
    auto a = find(static_cast<std::size_t>(edges_[i].first));
    auto b = find(static_cast<std::size_t>(edges_[i].second));
    if (a == b) {
      walk(i + 1, components, -sign);
      return;
    }
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    walk(i + 1, components - 1, -sign);
    size_[a] -= size_[b];
    parent_[b] = b;
  }

  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::int64_t> counts_;
};

inline std::vector<std::int64_t> signed_cluster_counts(const Graph& g) {
  return SignedClusterCounter(g.vertex_count(), g.edges()).run();
}

}  // namespace detail

/// Exact chromatic polynomial by deletion-contraction on simple graphs, with pendant and
/// isolated vertices peeled off and minors memoised by canonical key (raw adjacency above
/// 10 vertices).
inline IntPolynomial chromatic_poly(const Graph& g, std::size_t budget = kDefaultChromaticBudget) {
  if (g.vertex_count() > 64) throw BudgetExceeded("chromatic_budget", "chromatic_poly supports at most 64 vertices");
  return detail::DeletionContraction(budget).run(g.masks());
}

/// The random cluster sum sum_{F subset E} q^k(F) (-1)^|F| as an integer polynomial in q.
inline IntPolynomial random_cluster_poly(const Graph& g) {
  auto counts = detail::signed_cluster_counts(g);
  std::vector<BigInt> c(counts.begin(), counts.end());
  return IntPolynomial(std::move(c));
}

template <typename T>
T random_cluster_eval(const Graph& g, const T& q) {
  return random_cluster_poly(g).evaluate(q);
}

/// Signed count of edge sets F of g[s] with (s, F) connected.
inline BigInt spanning_connected_signed_count(const Graph& g, const VertexSet& s) {
  auto sub = induced_subgraph(g, s).graph;
  auto counts = detail::signed_cluster_counts(sub);
  return counts.size() > 1 ? BigInt(counts[1]) : BigInt(0);
}

/// lambda_S = q^{|S|-1} sum_{F subset E(S), (S,F) connected} (-1)^|F|.
template <typename T>
T polymer_weight(const Graph& g, const VertexSet& s, const T& q) {
  if (s.size() < 2) throw InvalidArgument("polymer_weight: polymers have at least 2 vertices");
  const BigInt c = spanning_connected_signed_count(g, s);
  T power(1);
  for (std::size_t i = 1; i < s.size(); ++i) power *= q;
  if constexpr (std::is_same_v<T, Rational>) return Rational(c) * power;
  else return T(to_double(c)) * power;
}

/// Z_Gamma = sum over families of pairwise disjoint polymers (|S| <= size_cap) of the
/// product of their weights, by recursion on the lowest uncovered vertex. Only connected S
/// carry nonzero weight, so only those are enumerated.
template <typename T>
T polymer_partition(const Graph& g, const T& q, std::size_t size_cap, std::size_t state_cap = kDefaultPolymerStateCap) {
  const std::size_t n = g.vertex_count();
  if (n > 64) throw BudgetExceeded("polymer_state_cap", "polymer_partition supports at most 64 vertices");
  std::vector<std::vector<std::pair<Mask, T>>> by_min(n);
  std::size_t polymers = 0;
  enumerate_connected_sets(g, std::min(size_cap, n), [&](std::span<const Vertex> members) {
    if (members.size() < 2) return;
    if (++polymers > state_cap)
      throw BudgetExceeded("polymer_state_cap", "more than " + std::to_string(state_cap) + " polymers");
    VertexSet s(std::vector<Vertex>(members.begin(), members.end()));
    T w = polymer_weight(g, s, q);
    if (w != T(0)) by_min[static_cast<std::size_t>(s[0])].emplace_back(s.to_mask(), w);
  });
  std::unordered_map<Mask, T> memo;
  std::function<T(Mask)> z = [&](Mask free) -> T {
    if (free == 0) return T(1);
    if (auto it = memo.find(free); it != memo.end()) return it->second;
    if (memo.size() >= state_cap)
      throw BudgetExceeded("polymer_state_cap", "polymer recursion exceeded " + std::to_string(state_cap) + " states");
    const Vertex v = lowest(free);
    T total = z(free & ~bit(v));
    for (const auto& [s, w] : by_min[static_cast<std::size_t>(v)])
      if ((s & free) == s) total += w * z(free & ~s);
    memo.emplace(free, total);
    return total;
  };
  return z(n == 64 ? ~Mask{0} : bit(static_cast<Vertex>(n)) - 1);
}

enum class GkMode { exact, tree_bound };

struct GkVertexRow {
  Vertex vertex = 0;
  double sum = 0;
  bool ok = true;
};

struct GkReport {
  GkMode mode = GkMode::exact;
  double a = 0;
  double bound = 0;  // a - 1
  std::vector<GkVertexRow> vertices;
  bool ok = true;
};

/// Per-vertex check of sum_{S ni v} |lambda_S| a^|S| <= a - 1. In tree_bound mode |lambda_S|
/// is replaced by tau(g[S]) |q|^{|S|-1}. A vertex in no polymer has an empty sum and passes.
inline GkReport gk_condition_check(const Graph& g, Complex q, double a, GkMode mode,
                                   std::size_t set_cap = kDefaultConnectedSetCap) {
  if (!(a > 1)) throw InvalidArgument("gk_condition_check: a must be > 1");
  const std::size_t n = g.vertex_count();
  GkReport rep{mode, a, a - 1, {}, true};
  std::vector<double> sums(n, 0.0);
  std::size_t seen = 0;
  const double qa = std::abs(q);
  enumerate_connected_sets(g, n, [&](std::span<const Vertex> members) {
    if (members.size() < 2) return;
    if (++seen > set_cap)
      throw BudgetExceeded("connected_set_cap", "more than " + std::to_string(set_cap) + " connected sets");
    VertexSet s(std::vector<Vertex>(members.begin(), members.end()));
    const BigInt weight = mode == GkMode::exact ? BigInt(abs(spanning_connected_signed_count(g, s)))
                                                : spanning_tree_count(induced_subgraph(g, s).graph);
    const double term = to_double(weight) * std::pow(qa, static_cast<double>(s.size() - 1)) *
                        std::pow(a, static_cast<double>(s.size()));
    for (Vertex v : s) sums[static_cast<std::size_t>(v)] += term;
  });
  for (std::size_t v = 0; v < n; ++v) {
    GkVertexRow row{static_cast<Vertex>(v), sums[v], sums[v] <= a - 1};
    rep.ok = rep.ok && row.ok;
    rep.vertices.push_back(row);
  }
  return rep;
}

inline nlohmann::json to_json(const GkReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& v : r.vertices) rows.push_back({{"vertex", v.vertex}, {"sum", v.sum}, {"ok", v.ok}});
  return {{"mode", r.mode == GkMode::exact ? "exact" : "tree_bound"},
          {"a", r.a},
          {"bound", r.bound},
          {"ok", r.ok},
          {"vertices", rows}};
}

/// Number of subtrees of g containing v, by edge count. Each frontier edge to a vertex
/// outside the current tree is either taken or discarded, so every subtree is produced once.
inline std::vector<std::uint64_t> subtree_counts(const Graph& g, Vertex v, std::uint64_t budget = kDefaultSubtreeBudget) {
  if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count()) throw InvalidArgument("subtree_counts: vertex out of range");
  const auto rows = g.masks();
  std::vector<std::uint64_t> counts(g.vertex_count(), 0);
  std::uint64_t produced = 0;
  std::vector<Edge> frontier;
  auto walk = [&](auto&& self, Mask tree, std::size_t edges, std::size_t pos) -> void {
    while (pos < frontier.size() && (tree >> frontier[pos].second & 1)) ++pos;
    if (pos == frontier.size()) {
      if (++produced > budget)
        throw BudgetExceeded("subtree_budget", "more than " + std::to_string(budget) + " subtrees");
      ++counts[edges];
      return;
    }
    const Edge e = frontier[pos];
    self(self, tree, edges, pos + 1);
    const std::size_t mark = frontier.size();
    const Mask grown = tree | bit(e.second);
    for (Mask nb = rows[static_cast<std::size_t>(e.second)] & ~grown; nb; nb &= nb - 1) frontier.push_back(Edge{e.second, lowest(nb)});
    self(self, grown, edges + 1, pos + 1);
    frontier.resize(mark);
  };
  for (Mask nb = rows[static_cast<std::size_t>(v)]; nb; nb &= nb - 1) frontier.push_back(Edge{v, lowest(nb)});
  walk(walk, bit(v), 0, 0);
  return counts;
}

/// T_{g,v}(x) = sum over subtrees containing v of x^{#edges}; the bare vertex contributes 1.
inline double tree_gen_fn(const Graph& g, Vertex v, double x, std::uint64_t budget = kDefaultSubtreeBudget) {
  auto counts = subtree_counts(g, v, budget);
  double total = 0;
  for (std::size_t k = counts.size(); k-- > 0;) total = total * x + static_cast<double>(counts[k]);
  return total;
}

struct RadiusConstant {
  double a_star;
  double value;
};

inline double chromatic_radius_objective(double a) { return (2 * a - 1) / std::log(2 - 1 / a); }

/// Golden-section minimisation of (2a-1)/ln(2-1/a) over (1, 10].
inline RadiusConstant chromatic_radius_constant() {
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double lo = 1 + 1e-9, hi = 10;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = chromatic_radius_objective(x1), f2 = chromatic_radius_objective(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = chromatic_radius_objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = chromatic_radius_objective(x2);
    }
  }
  const double a = (lo + hi) / 2;
  return {a, chromatic_radius_objective(a)};
}

struct ChromaticOptions {
  std::optional<double> radius_override;  // radius in the z = 1/q plane
  bool unsafe = false;
  std::size_t budget = kDefaultChromaticBudget;
};

/// chi_g(q) through q^n exp(T_m(1/q)) applied to the reversed polynomial q^n chi_g(1/q),
/// whose zeros avoid the disk of radius 1/(6.91 Delta).
inline ApproxCertificate chromatic_interpolate(const Graph& g, Complex q, double eps, const ChromaticOptions& opt = {}) {
  if (!(eps > 0)) throw InvalidArgument("eps must be > 0");
  if (q == Complex(0.0, 0.0)) throw InvalidArgument("chromatic_interpolate: q must be nonzero");
  const std::size_t n = g.vertex_count();
  const std::size_t delta = max_degree(g);
  const double natural = delta == 0 ? std::numeric_limits<double>::infinity()
                                    : 1.0 / (kChromaticConstant * static_cast<double>(delta));
  const Complex z = 1.0 / q;
  const auto radius = resolve_radius(std::abs(z), natural, RadiusSource::chromatic_691, opt.radius_override, opt.unsafe);
  const auto chi = chromatic_poly(g, opt.budget);
  auto cert = interpolate(z, eps, std::max<std::size_t>(n, 1), radius,
                          [&](std::size_t) { return chi.reversed(n).to_rational(); }, "exact");
  cert.value *= std::pow(q, static_cast<double>(n));
  require_finite(cert.value, "chromatic_interpolate");
  return cert;
}

struct ChromaticSurveyRow {
  std::string graph;
  std::size_t n = 0;
  std::size_t delta = 0;
  double max_root_modulus = 0;
  double ratio_to_691delta = 0;
};

inline ChromaticSurveyRow chromatic_survey_row(const std::string& name, const Graph& g) {
  ChromaticSurveyRow row{name, g.vertex_count(), max_degree(g), 0, 0};
  auto chi = chromatic_poly(g);
  if (chi.degree() >= 1)
    for (auto z : poly_roots(chi)) row.max_root_modulus = std::max(row.max_root_modulus, std::abs(z));
  if (row.delta > 0) row.ratio_to_691delta = row.max_root_modulus / (kChromaticConstant * static_cast<double>(row.delta));
  return row;
}

}  // namespace gp
