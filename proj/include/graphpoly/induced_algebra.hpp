#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "graphpoly/canonical.hpp"
#include "graphpoly/errors.hpp"
#include "graphpoly/numeric.hpp"

namespace gp {

inline constexpr std::size_t kDefaultAlgebraCap = 10;

/// Finite linear combination sum_H c_H ind(H, .) of induced-copy counting functions,
/// keyed by isomorphism class. The 0-vertex key stands for the constant function 1.
class FormalInducedCombination {
 public:
  using Terms = std::map<CanonicalKey, Rational>;

  FormalInducedCombination() = default;

  static FormalInducedCombination single(const CanonicalKey& k, Rational c = 1) {
    FormalInducedCombination f;
    f.add(k, std::move(c));
    return f;
  }

  void add(const CanonicalKey& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  FormalInducedCombination& operator+=(const FormalInducedCombination& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }

  FormalInducedCombination& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [k, c] : terms_) c *= s;
    }
    return *this;
  }

  friend FormalInducedCombination operator+(FormalInducedCombination a, const FormalInducedCombination& b) {
    a += b;
    return a;
  }

  friend FormalInducedCombination operator*(const Rational& s, FormalInducedCombination a) {
    a *= s;
    return a;
  }

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  Rational coefficient(const CanonicalKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool all_connected() const {
    for (const auto& [k, c] : terms_)
      if (!k.connected()) return false;
    return true;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k.max_degree());
    return d;
  }

  /// Drops every term whose graph has a vertex of degree above `cap`.
  void drop_above_degree(std::size_t cap) {
    std::erase_if(terms_, [cap](const auto& kv) { return kv.first.max_degree() > cap; });
  }

  /// sum_H c_H * count(H). `count` must return ind(H, G) for the target G.
  template <typename CountFn>
  Rational evaluate(CountFn&& count) const {
    Rational total = 0;
    for (const auto& [k, c] : terms_) total += c * Rational(count(k));
    return total;
  }

  friend bool operator==(const FormalInducedCombination&, const FormalInducedCombination&) = default;

 private:
  Terms terms_;
};

/// Key of the edgeless graph I_k.
inline CanonicalKey edgeless_key(std::size_t k) { return CanonicalKey{static_cast<std::uint8_t>(k), 0}; }

namespace detail {

// Enumerates every way to glue labelled copies of H1 and H2 into a graph whose vertex set
// is the union of the two copies: a partial injection of V(H2) into V(H1) that is an
// isomorphism on the overlap, plus a choice of edges between the two exclusive parts.
// Each glued graph is canonicalised and counted.
class GlueEnumerator {
 public:
  GlueEnumerator(const CanonicalKey& a, const CanonicalKey& b, std::size_t degree_cap)
      : rows1_(a.rows()), rows2_(b.rows()), n1_(a.n), n2_(b.n), cap_(degree_cap), image_(b.n, -1) {}

  std::map<CanonicalKey, std::uint64_t> run() {
    map_vertex(0, 0);
    return constructions_;
  }

 private:
  void map_vertex(unsigned v, std::uint32_t used) {
    if (v == n2_) {
      glue();
      return;
    }
    image_[v] = -1;
    map_vertex(v + 1, used);
    for (unsigned a = 0; a < n1_; ++a) {
      if (used >> a & 1) continue;
      bool ok = true;
      for (unsigned u = 0; u < v && ok; ++u) {
        if (image_[u] < 0) continue;
        bool e2 = rows2_[v] >> u & 1;
        bool e1 = rows1_[a] >> static_cast<unsigned>(image_[u]) & 1;
        ok = e1 == e2;
      }
      if (!ok) continue;
      image_[v] = static_cast<int>(a);
      map_vertex(v + 1, used | (1u << a));
      image_[v] = -1;
    }
  }

  void glue() {
    // Index of every H2 vertex in the glued graph.
    std::vector<unsigned> idx(n2_);
    unsigned h = n1_;
    std::uint32_t image_mask = 0;
    for (unsigned v = 0; v < n2_; ++v) {
      if (image_[v] >= 0) {
        idx[v] = static_cast<unsigned>(image_[v]);
        image_mask |= 1u << idx[v];
      } else {
        idx[v] = h++;
      }
    }
    if (h > kMaxCanonicalVertices) throw BudgetExceeded("algebra_cap", "glued graph too large");
    rows_.assign(h, 0);
    for (unsigned a = 0; a < n1_; ++a) rows_[a] = rows1_[a];
    for (unsigned v = 0; v < n2_; ++v)
      for (unsigned u = 0; u < n2_; ++u)
        if (rows2_[v] >> u & 1) rows_[idx[v]] = static_cast<std::uint16_t>(rows_[idx[v]] | (1u << idx[u]));
    for (unsigned x = 0; x < h; ++x)
      if (static_cast<std::size_t>(__builtin_popcount(rows_[x])) > cap_) return;
    free_.clear();
    for (unsigned a = 0; a < n1_; ++a)
      if (!(image_mask >> a & 1))
        for (unsigned b = n1_; b < h; ++b) free_.emplace_back(a, b);
    choose(0);
  }

  void choose(std::size_t i) {
    if (i == free_.size()) {
      ++constructions_[cache_.key(rows_)];
      return;
    }
    choose(i + 1);
    auto [a, b] = free_[i];
    if (static_cast<std::size_t>(__builtin_popcount(rows_[a])) >= cap_ ||
        static_cast<std::size_t>(__builtin_popcount(rows_[b])) >= cap_)
      return;
    rows_[a] = static_cast<std::uint16_t>(rows_[a] | (1u << b));
    rows_[b] = static_cast<std::uint16_t>(rows_[b] | (1u << a));
    choose(i + 1);
    rows_[a] = static_cast<std::uint16_t>(rows_[a] & ~(1u << b));
    rows_[b] = static_cast<std::uint16_t>(rows_[b] & ~(1u << a));
  }

  std::vector<std::uint16_t> rows1_, rows2_, rows_;
  unsigned n1_, n2_;
  std::size_t cap_;
  std::vector<int> image_;
  std::vector<std::pair<unsigned, unsigned>> free_;
  std::map<CanonicalKey, std::uint64_t> constructions_;
  CanonicalCache cache_;
};

}  // namespace detail

/// Structure constants of the induced-count ring:
///   ind(H1, G) * ind(H2, G) = sum_H N(H1, H2; H) ind(H, G)   for every G,
/// where N counts pairs (A, B) with A u B = V(H), H[A] ~ H1, H[B] ~ H2. Glued labelled
/// constructions of H number N |Aut H1| |Aut H2| / |Aut H|, which converts the raw counts.
/// Graphs with a vertex of degree above `degree_cap` are discarded as they are built.
inline FormalInducedCombination product_expand(const CanonicalKey& a, const CanonicalKey& b, std::size_t degree_cap,
                                               std::size_t size_cap = kDefaultAlgebraCap) {
  if (static_cast<std::size_t>(a.n) + b.n > size_cap)
    throw BudgetExceeded("algebra_cap", "product_expand: " + std::to_string(a.n) + "+" + std::to_string(b.n) +
                                            " vertices exceeds cap " + std::to_string(size_cap));
  const std::uint64_t aut_a = automorphism_count(a), aut_b = automorphism_count(b);
  FormalInducedCombination out;
  for (const auto& [key, raw] : detail::GlueEnumerator(a, b, degree_cap).run()) {
    const std::uint64_t num = raw * automorphism_count(key);
    if (num % (aut_a * aut_b) != 0)
      throw ConsistencyError("product_expand: non-integral structure constant for " + key.to_string());
    out.add(key, Rational(num / (aut_a * aut_b)));
  }
  return out;
}

/// Memoised products of combinations under a fixed degree cap. Thread-safe.
class InducedAlgebra {
 public:
  explicit InducedAlgebra(std::size_t degree_cap, std::size_t size_cap = kDefaultAlgebraCap)
      : degree_cap_(degree_cap), size_cap_(size_cap) {}

  std::size_t degree_cap() const noexcept { return degree_cap_; }
  std::size_t size_cap() const noexcept { return size_cap_; }

  const FormalInducedCombination& product(const CanonicalKey& a, const CanonicalKey& b) {
    auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    {
      std::lock_guard lock(mutex_);
      if (auto it = products_.find(key); it != products_.end()) return it->second;
    }
    auto value = product_expand(key.first, key.second, degree_cap_, size_cap_);
    std::lock_guard lock(mutex_);
    return products_.emplace(key, std::move(value)).first->second;
  }

  FormalInducedCombination product(const FormalInducedCombination& x, const FormalInducedCombination& y) {
    FormalInducedCombination out;
    for (const auto& [ka, ca] : x.terms())
      for (const auto& [kb, cb] : y.terms()) {
        const Rational c = ca * cb;
        for (const auto& [k, n] : product(ka, kb).terms()) out.add(k, c * n);
      }
    return out;
  }

 private:
  std::size_t degree_cap_, size_cap_;
  std::mutex mutex_;
  std::map<std::pair<CanonicalKey, CanonicalKey>, FormalInducedCombination> products_;
};

}  // namespace gp
