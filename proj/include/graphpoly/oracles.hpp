#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphpoly/canonical.hpp"
#include "graphpoly/errors.hpp"
#include "graphpoly/graph.hpp"
#include "graphpoly/numeric.hpp"
#include "graphpoly/polynomial.hpp"

// Exponential-time reference computations. Everything clever elsewhere is checked
// against these.
namespace gp {

inline constexpr std::size_t kDefaultOracleCap = 30;
inline constexpr std::size_t kDefaultInducedOracleCap = 16;

namespace detail {

inline std::vector<Mask> closed_neighbourhoods(const Graph& g) {
  auto rows = g.masks();
  for (std::size_t v = 0; v < rows.size(); ++v) rows[v] |= bit(static_cast<Vertex>(v));
  return rows;
}

inline void require_oracle_size(const Graph& g, std::size_t cap, const char* op, const char* advice) {
  if (g.vertex_count() > cap || g.vertex_count() > 64)
    throw BudgetExceeded("oracle_cap", std::string(op) + ": " + std::to_string(g.vertex_count()) +
                                           " vertices exceeds cap " + std::to_string(cap) + advice);
}

}  // namespace detail

/// Independence polynomial coefficients by exhaustive branching on the lowest free
/// vertex (exclude it / include it and delete its closed neighbourhood), memoised on the
/// set of free vertices.
inline IntPolynomial brute_force_independence_coeffs(const Graph& g, std::size_t cap = kDefaultOracleCap) {
  detail::require_oracle_size(g, cap, "brute_force_independence_coeffs", "; use compute_alpha for prefixes");
  const auto closed = detail::closed_neighbourhoods(g);
  using Counts = std::vector<std::uint64_t>;
  std::unordered_map<Mask, Counts> memo;
  auto rec = [&](auto&& self, Mask free) -> Counts {
    if (!free) return Counts{1};
    if (auto it = memo.find(free); it != memo.end()) return it->second;
    Vertex v = lowest(free);
    Counts out = self(self, free & ~bit(v));
    Counts with = self(self, free & ~closed[static_cast<std::size_t>(v)]);
    if (out.size() < with.size() + 1) out.resize(with.size() + 1, 0);
    for (std::size_t k = 0; k < with.size(); ++k) out[k + 1] += with[k];
    memo.emplace(free, out);
    return out;
  };
  const Mask all = g.vertex_count() == 64 ? ~Mask{0} : (bit(static_cast<Vertex>(g.vertex_count())) - 1);
  Counts c = rec(rec, all);
  return IntPolynomial(std::vector<BigInt>(c.begin(), c.end()));
}

/// Z_G(lambda) via Z_G = Z_{G-v} + lambda Z_{G - N[v]}, memoised on the surviving vertex set.
/// T is Complex for speed or Rational for exact identity checks.
template <typename T>
T exact_Z_eval(const Graph& g, const T& lambda, std::size_t cap = kDefaultOracleCap) {
  detail::require_oracle_size(g, cap, "exact_Z_eval", "");
  const auto closed = detail::closed_neighbourhoods(g);
  std::unordered_map<Mask, T> memo;
  auto rec = [&](auto&& self, Mask free) -> T {
    if (!free) return T(1);
    if (auto it = memo.find(free); it != memo.end()) return it->second;
    Vertex v = lowest(free);
    T z = self(self, free & ~bit(v)) + lambda * self(self, free & ~closed[static_cast<std::size_t>(v)]);
    memo.emplace(free, z);
    return z;
  };
  const Mask all = g.vertex_count() == 64 ? ~Mask{0} : (bit(static_cast<Vertex>(g.vertex_count())) - 1);
  T z = rec(rec, all);
  if constexpr (std::is_same_v<T, Complex>) require_finite(z, "exact_Z_eval");
  return z;
}

/// Number of vertex subsets S of g with g[S] isomorphic to h, by scanning all |h|-subsets.
inline BigInt brute_force_ind(const Graph& h, const Graph& g, std::size_t cap = kDefaultInducedOracleCap) {
  if (g.vertex_count() > cap)
    throw BudgetExceeded("induced_oracle_cap", "brute_force_ind: host has " + std::to_string(g.vertex_count()) +
                                                   " vertices, cap " + std::to_string(cap));
  const std::size_t k = h.vertex_count();
  if (k > g.vertex_count()) return 0;
  const auto target = canonical_key(h, kMaxCanonicalVertices);
  const auto rows = g.masks();
  const unsigned n = static_cast<unsigned>(g.vertex_count());
  BigInt count = 0;
  std::vector<std::uint16_t> sub(k);
  std::vector<Vertex> members(k);
  CanonicalCache cache;
  // Gosper's hack over k-subsets of n.
  if (k == 0) return 1;
  for (Mask s = (Mask{1} << k) - 1; s < (Mask{1} << n); ) {
    std::size_t i = 0;
    for (Mask m = s; m; m &= m - 1) members[i++] = lowest(m);
    for (std::size_t a = 0; a < k; ++a) {
      std::uint16_t r = 0;
      for (std::size_t b = 0; b < k; ++b)
        if (rows[static_cast<std::size_t>(members[a])] & bit(members[b])) r = static_cast<std::uint16_t>(r | (1u << b));
      sub[a] = r;
    }
    if (cache.key(sub) == target) ++count;
    Mask c = s & (~s + 1);
    Mask r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return count;
}

}  // namespace gp
