#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphpoly/canonical.hpp"
#include "graphpoly/connected_sets.hpp"
#include "graphpoly/errors.hpp"
#include "graphpoly/graph.hpp"
#include "graphpoly/induced_algebra.hpp"
#include "graphpoly/numeric.hpp"
#include "graphpoly/parallel.hpp"
#include "graphpoly/polynomial.hpp"

namespace gp {

// ---------------------------------------------------------------------------
// Induced counts of connected graphs

/// ind(H, G) for connected H, filled size by size. One walk over the connected vertex sets
/// of G of size <= k fills the counts of every connected H on <= k vertices at once.
class InducedCountCache {
 public:
  explicit InducedCountCache(const Graph& g, std::size_t threads = 1) : g_(g), threads_(threads) {}

  BigInt count(const CanonicalKey& h) {
    if (h.n == 0) return 1;
    if (!h.connected())
      throw InvalidArgument("count_induced_connected: pattern " + h.to_string() + " is disconnected");
    fill(h.n);
    auto it = counts_.find(h);
    return it == counts_.end() ? BigInt(0) : BigInt(it->second);
  }

  void fill(std::size_t k) {
    if (k <= filled_) return;
    if (k > kMaxCanonicalVertices) throw BudgetExceeded("canonical_cap", "induced count size too large");
    const std::size_t lo = filled_ + 1;
    const std::size_t n = g_.vertex_count();
    const std::size_t workers = std::max<std::size_t>(1, threads_ == 0 ? default_threads() : threads_);
    std::vector<std::unordered_map<CanonicalKey, std::uint64_t>> partial(workers);
    std::vector<CanonicalCache> caches(workers);
    std::vector<std::vector<int>> position(workers, std::vector<int>(n, -1));
    parallel_for(n, workers, [&](std::size_t w, std::size_t root) {
      ConnectedSetWalker walker(g_);
      std::uint16_t rows[kMaxCanonicalVertices];
      auto& pos = position[w];
      walker.walk_root(static_cast<Vertex>(root), k, [&](std::span<const Vertex> s) {
        if (s.size() < lo) return;
        for (std::size_t i = 0; i < s.size(); ++i) pos[static_cast<std::size_t>(s[i])] = static_cast<int>(i);
        for (std::size_t i = 0; i < s.size(); ++i) {
          std::uint16_t r = 0;
          for (Vertex u : g_.neighbors(s[i])) {
            int j = pos[static_cast<std::size_t>(u)];
            if (j >= 0) r = static_cast<std::uint16_t>(r | (1u << j));
          }
          rows[i] = r;
        }
        for (Vertex v : s) pos[static_cast<std::size_t>(v)] = -1;
        ++partial[w][caches[w].key(std::span<const std::uint16_t>(rows, s.size()))];
      });
    });
    for (const auto& p : partial)
      for (const auto& [key, c] : p) counts_[key] += c;
    filled_ = k;
  }

  /// Counts of all connected classes on <= filled() vertices (sorted).
  std::map<CanonicalKey, std::uint64_t> snapshot() const { return {counts_.begin(), counts_.end()}; }
  std::size_t filled() const noexcept { return filled_; }

 private:
  const Graph& g_;
  std::size_t threads_;
  std::size_t filled_ = 0;
  std::unordered_map<CanonicalKey, std::uint64_t> counts_;
};

inline BigInt count_induced_connected(const CanonicalKey& h, const Graph& g, InducedCountCache& cache) {
  (void)g;
  return cache.count(h);
}

// ---------------------------------------------------------------------------
// Newton identities with alpha_0 = 1:  -t alpha_t = sum_{i=0}^{t-1} alpha_i p_{t-i}

/// p_1..p_m; p(i) is the i-th power sum of the inverse roots.
struct PowerSums {
  std::vector<Rational> values;  // values[i - 1] = p_i

  std::size_t size() const noexcept { return values.size(); }
  const Rational& operator()(std::size_t i) const { return values.at(i - 1); }
};

/// alpha_0..alpha_m from p_1..p_m.
inline std::vector<Rational> newton_ps_to_alpha(const PowerSums& p, std::size_t m) {
  if (m > p.size()) throw InvalidArgument("newton_ps_to_alpha: not enough power sums");
  std::vector<Rational> alpha(m + 1, 0);
  alpha[0] = 1;
  for (std::size_t t = 1; t <= m; ++t) {
    Rational s = 0;
    for (std::size_t i = 0; i < t; ++i) s += alpha[i] * p(t - i);
    alpha[t] = -s / Rational(static_cast<long>(t));
  }
  return alpha;
}

/// p_1..p_m from alpha_0..alpha_m (alpha_0 must be 1).
inline PowerSums newton_alpha_to_ps(std::span<const Rational> alpha, std::size_t m) {
  if (alpha.empty() || alpha[0] != 1) throw InvalidArgument("newton_alpha_to_ps: alpha_0 must be 1");
  auto a = [&](std::size_t i) { return i < alpha.size() ? alpha[i] : Rational(0); };
  PowerSums p;
  p.values.reserve(m);
  for (std::size_t t = 1; t <= m; ++t) {
    Rational s = -Rational(static_cast<long>(t)) * a(t);
    for (std::size_t i = 1; i < t; ++i) s -= a(i) * p(t - i);
    p.values.push_back(s);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Power-sum expansions and their on-disk cache

/// Versioned binary store of power-sum expansions keyed by (t, degree cap).
///
/// Layout (all integers little-endian):
///   magic "GPXC" | u32 version (=1) | u32 record count
///   record: u32 t | u32 degree_cap | u64 term count | terms...
///   term:   u8 n | u64 edge mask | rational numerator | rational denominator
///   each rational part: u8 sign (0 = non-negative, 1 = negative) | u32 byte length |
///                       magnitude bytes, least significant first
class ExpansionStore {
 public:
  static constexpr std::uint32_t kVersion = 1;

  using Key = std::pair<std::uint32_t, std::uint32_t>;  // (t, degree cap)

  const FormalInducedCombination* find(std::size_t t, std::size_t cap) const {
    auto it = data_.find({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(cap)});
    return it == data_.end() ? nullptr : &it->second;
  }

  void put(std::size_t t, std::size_t cap, FormalInducedCombination f) {
    data_[{static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(cap)}] = std::move(f);
  }

  std::size_t size() const noexcept { return data_.size(); }
  const std::map<Key, FormalInducedCombination>& records() const noexcept { return data_; }

  void save(std::ostream& out) const {
    out.write("GPXC", 4);
    write_u32(out, kVersion);
    write_u32(out, static_cast<std::uint32_t>(data_.size()));
    for (const auto& [key, f] : data_) {
      write_u32(out, key.first);
      write_u32(out, key.second);
      write_u64(out, f.size());
      for (const auto& [k, c] : f.terms()) {
        out.put(static_cast<char>(k.n));
        write_u64(out, k.edges);
        write_int(out, boost::multiprecision::numerator(c));
        write_int(out, boost::multiprecision::denominator(c));
      }
    }
    if (!out) throw Error("ExpansionStore: write failed");
  }

  static ExpansionStore load(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "GPXC", 4) != 0) throw Error("ExpansionStore: bad magic");
    if (read_u32(in) != kVersion) throw Error("ExpansionStore: unsupported version");
    ExpansionStore store;
    const std::uint32_t records = read_u32(in);
    for (std::uint32_t r = 0; r < records; ++r) {
      std::uint32_t t = read_u32(in), cap = read_u32(in);
      std::uint64_t terms = read_u64(in);
      FormalInducedCombination f;
      for (std::uint64_t i = 0; i < terms; ++i) {
        CanonicalKey k;
        k.n = static_cast<std::uint8_t>(in.get());
        k.edges = read_u64(in);
        BigInt num = read_int(in), den = read_int(in);
        if (den == 0) throw Error("ExpansionStore: zero denominator");
        f.add(k, Rational(num, den));
      }
      store.put(t, cap, std::move(f));
    }
    if (!in) throw Error("ExpansionStore: truncated file");
    return store;
  }

  void save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("ExpansionStore: cannot open " + path);
    save(out);
  }

  static ExpansionStore load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("ExpansionStore: cannot open " + path);
    return load(in);
  }

 private:
  static void write_u32(std::ostream& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>(v >> (8 * i) & 0xFF));
  }
  static void write_u64(std::ostream& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>(v >> (8 * i) & 0xFF));
  }
  static std::uint32_t read_u32(std::istream& in) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in.get())) << (8 * i);
    return v;
  }
  static std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in.get())) << (8 * i);
    return v;
  }
  static void write_int(std::ostream& out, const BigInt& x) {
    out.put(x < 0 ? 1 : 0);
    BigInt mag = x < 0 ? BigInt(-x) : x;
    std::vector<unsigned char> bytes;
    if (mag != 0) boost::multiprecision::export_bits(mag, std::back_inserter(bytes), 8, false);
    write_u32(out, static_cast<std::uint32_t>(bytes.size()));
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  static BigInt read_int(std::istream& in) {
    const bool negative = in.get() == 1;
    const std::uint32_t len = read_u32(in);
    if (len > (1u << 20)) throw Error("ExpansionStore: implausible integer length");
    std::vector<unsigned char> bytes(len);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(len));
    BigInt mag = 0;
    if (len) boost::multiprecision::import_bits(mag, bytes.begin(), bytes.end(), 8, false);
    return negative ? BigInt(-mag) : mag;
  }

  std::map<Key, FormalInducedCombination> data_;
};

struct ExpansionStats {
  std::size_t t = 0;
  std::size_t degree_cap = 0;
  std::size_t terms = 0;
  std::size_t max_vertices = 0;
};

/// Builds and caches the expansions p_t = sum_H c_H ind(H, .) over connected H for graphs of
/// maximum degree <= degree cap, via the Newton recursion
///   p_t = -t ind(I_t, .) - sum_{i=1}^{t-1} ind(I_i, .) p_{t-i}
/// carried out in the induced-count algebra. Disconnected classes must cancel exactly;
/// a survivor is reported as a ConsistencyError.
class CoefficientEngine {
 public:
  explicit CoefficientEngine(std::size_t algebra_cap = kDefaultAlgebraCap) : algebra_cap_(algebra_cap) {}

  std::size_t algebra_cap() const noexcept { return algebra_cap_; }

  /// Power-sum expansion for t under the given degree cap. A cap >= t - 1 cannot remove
  /// anything from p_t, so such caps share one cache entry.
  FormalInducedCombination power_sum_expansion(std::size_t t, std::size_t degree_cap) {
    if (t == 0) throw InvalidArgument("power_sum_expansion: t must be >= 1");
    if (t > algebra_cap_)
      throw BudgetExceeded("algebra_cap", "power sum order " + std::to_string(t) + " exceeds algebra cap " +
                                              std::to_string(algebra_cap_));
    const std::size_t cap = effective_cap(t, degree_cap);
    std::lock_guard lock(mutex_);
    return build_locked(t, cap);
  }

  /// Term counts per t, reported instead of assuming a bound on expansion size.
  std::vector<ExpansionStats> stats(std::size_t m, std::size_t degree_cap) {
    std::vector<ExpansionStats> out;
    for (std::size_t t = 1; t <= m; ++t) {
      auto f = power_sum_expansion(t, degree_cap);
      ExpansionStats s{t, effective_cap(t, degree_cap), f.size(), 0};
      for (const auto& [k, c] : f.terms()) s.max_vertices = std::max<std::size_t>(s.max_vertices, k.n);
      out.push_back(s);
    }
    return out;
  }

  ExpansionStore& store() noexcept { return store_; }

  void load_cache(const std::string& path) {
    auto loaded = ExpansionStore::load_file(path);
    std::lock_guard lock(mutex_);
    for (const auto& [key, f] : loaded.records()) store_.put(key.first, key.second, f);
  }

  void save_cache(const std::string& path) {
    std::lock_guard lock(mutex_);
    store_.save_file(path);
  }

 private:
  static std::size_t effective_cap(std::size_t t, std::size_t degree_cap) {
    return std::min(degree_cap, t == 0 ? 0 : t - 1);
  }

  InducedAlgebra& algebra(std::size_t cap) {
    auto it = algebras_.find(cap);
    if (it == algebras_.end())
      it = algebras_.emplace(cap, std::make_unique<InducedAlgebra>(cap, algebra_cap_)).first;
    return *it->second;
  }

  FormalInducedCombination build_locked(std::size_t t, std::size_t cap) {
    if (const auto* hit = store_.find(t, cap)) return *hit;
    FormalInducedCombination p = FormalInducedCombination::single(edgeless_key(t), -Rational(static_cast<long>(t)));
    auto& alg = algebra(cap);
    for (std::size_t i = 1; i < t; ++i) {
      auto lower = build_locked(t - i, effective_cap(t - i, cap));
      // Re-filter: the lower expansion may have been built under a looser shared cap.
      lower.drop_above_degree(cap);
      auto prod = alg.product(FormalInducedCombination::single(edgeless_key(i)), lower);
      p += Rational(-1) * prod;
    }
    p.drop_above_degree(cap);
    for (const auto& [k, c] : p.terms())
      if (!k.connected())
        throw ConsistencyError("power_sum_expansion(t=" + std::to_string(t) + "): disconnected class " +
                               k.to_string() + " kept coefficient " + c.str());
    store_.put(t, cap, p);
    return p;
  }

  std::size_t algebra_cap_;
  std::mutex mutex_;
  ExpansionStore store_;
  std::map<std::size_t, std::unique_ptr<InducedAlgebra>> algebras_;
};

/// Process-wide engine shared by the convenience overloads.
inline CoefficientEngine& default_engine() {
  static CoefficientEngine engine;
  return engine;
}

inline FormalInducedCombination power_sum_expansion(std::size_t t, std::size_t degree_cap) {
  return default_engine().power_sum_expansion(t, degree_cap);
}

/// Evaluates p_1..p_m on g through the connected induced counts.
inline PowerSums power_sums(const Graph& g, std::size_t m, CoefficientEngine& engine, std::size_t threads = 1) {
  const std::size_t cap = max_degree(g);
  InducedCountCache counts(g, threads);
  counts.fill(m);
  PowerSums p;
  for (std::size_t t = 1; t <= m; ++t)
    p.values.push_back(engine.power_sum_expansion(t, cap).evaluate([&](const CanonicalKey& k) { return counts.count(k); }));
  return p;
}

/// alpha_0..alpha_m of the independence polynomial of g in time poly(n) * Delta^O(m):
/// connected induced counts -> power sums -> Newton identities.
inline IntPolynomial compute_alpha(const Graph& g, std::size_t m, CoefficientEngine& engine, std::size_t threads = 1) {
  if (m > engine.algebra_cap())
    throw BudgetExceeded("algebra_cap", "compute_alpha: m=" + std::to_string(m) + " exceeds algebra cap " +
                                            std::to_string(engine.algebra_cap()));
  auto alpha = newton_ps_to_alpha(power_sums(g, m, engine, threads), m);
  std::vector<BigInt> out;
  out.reserve(m + 1);
  for (std::size_t t = 0; t <= m; ++t) {
    if (!is_integer(alpha[t]))
      throw ConsistencyError("compute_alpha: alpha_" + std::to_string(t) + " = " + alpha[t].str() + " is not integral");
    out.push_back(boost::multiprecision::numerator(alpha[t]));
  }
  return IntPolynomial(std::move(out));
}

inline IntPolynomial compute_alpha(const Graph& g, std::size_t m) { return compute_alpha(g, m, default_engine()); }

}  // namespace gp
