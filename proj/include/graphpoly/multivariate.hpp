#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "graphpoly/errors.hpp"
#include "graphpoly/generators.hpp"
#include "graphpoly/graph.hpp"
#include "graphpoly/numeric.hpp"
#include "graphpoly/parallel.hpp"

namespace gp {

inline constexpr std::size_t kMaxMultivariateVars = 20;

/// Multi-affine polynomial: coefficients keyed by variable subsets (bit masks), so every
/// variable appears with degree at most one. Zero coefficients are not stored.
template <typename T>
class MultiAffinePoly {
 public:
  MultiAffinePoly() = default;
  explicit MultiAffinePoly(std::size_t n_vars) : n_(n_vars) {
    if (n_vars > kMaxMultivariateVars) throw BudgetExceeded("multivariate_cap", "more than 20 variables");
  }

  /// All 2^n coefficients equal to one; the identity for the Schur product.
  static MultiAffinePoly ones(std::size_t n_vars) {
    MultiAffinePoly p(n_vars);
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << n_vars); ++s) p.c_.emplace(s, T(1));
    return p;
  }

  std::size_t n_vars() const noexcept { return n_; }
  std::size_t size() const noexcept { return c_.size(); }
  const std::map<std::uint32_t, T>& terms() const noexcept { return c_; }

  T coefficient(std::uint32_t s) const {
    auto it = c_.find(s);
    return it == c_.end() ? T(0) : it->second;
  }
  T coefficient(const VertexSet& s) const { return coefficient(static_cast<std::uint32_t>(s.to_mask())); }

  void set(std::uint32_t s, const T& v) {
    if (n_ < 32 && (s >> n_) != 0) throw InvalidArgument("MultiAffinePoly: variable index out of range");
    if (v == T(0)) c_.erase(s);
    else c_[s] = v;
  }

  template <typename X>
  X eval(std::span<const X> x) const {
    if (x.size() != n_) throw InvalidArgument("eval: expected " + std::to_string(n_) + " values");
    X total(0);
    for (const auto& [s, v] : c_) {
      X term = convert<X>(v);
      for (std::uint32_t r = s; r; r &= r - 1) term *= x[static_cast<std::size_t>(__builtin_ctz(r))];
      total += term;
    }
    return total;
  }
  template <typename X>
  X eval(const std::vector<X>& x) const { return eval(std::span<const X>(x)); }

  friend bool operator==(const MultiAffinePoly& a, const MultiAffinePoly& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

  friend MultiAffinePoly operator*(const MultiAffinePoly& a, const MultiAffinePoly& b) {
    MultiAffinePoly out(a.n_);
    for (const auto& [s, va] : a.c_)
      for (const auto& [t, vb] : b.c_)
        if ((s & t) == 0) {
          T v = out.coefficient(s | t) + va * vb;
          out.set(s | t, v);
        }
    return out;
  }

  /// Terms ordered by degree, then by the sorted variable indices; variables print as x1, x2, ...
  std::string to_string() const {
    std::vector<std::uint32_t> keys;
    for (const auto& [s, v] : c_) keys.push_back(s);
    auto indices = [](std::uint32_t s) {
      std::vector<int> out;
      for (; s; s &= s - 1) out.push_back(__builtin_ctz(s));
      return out;
    };
    std::sort(keys.begin(), keys.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (__builtin_popcount(a) != __builtin_popcount(b)) return __builtin_popcount(a) < __builtin_popcount(b);
      return indices(a) < indices(b);
    });
    if (keys.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto s : keys) {
      const T& v = c_.at(s);
      if (!first) os << " + ";
      first = false;
      std::string mono;
      for (int i : indices(s)) mono += "x" + std::to_string(i + 1);
      if (mono.empty()) os << format(v);
      else if (v == T(1)) os << mono;
      else os << "(" << format(v) << ")" << mono;
    }
    return os.str();
  }

 private:
  template <typename X>
  static X convert(const T& v) {
    if constexpr (std::is_same_v<X, T>) return v;
    else if constexpr (std::is_same_v<T, Rational>) return X(to_double(v));
    else return X(v);
  }
  static std::string format(const T& v) {
    if constexpr (std::is_same_v<T, Rational>) return v.str();
    else {
      std::ostringstream os;
      os << v;
      return os.str();
    }
  }

  std::size_t n_ = 0;
  std::map<std::uint32_t, T> c_;
};

/// Z_G(x) = sum over independent S of prod_{v in S} x_v.
template <typename T = Rational>
MultiAffinePoly<T> multivariate_Z(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxMultivariateVars)
    throw BudgetExceeded("multivariate_cap", "multivariate_Z: n=" + std::to_string(n) + " exceeds 20");
  MultiAffinePoly<T> p(n);
  const auto rows = g.masks();
  // Grow independent sets by adding vertices above the current maximum.
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    std::uint32_t s = stack.back();
    stack.pop_back();
    p.set(s, T(1));
    const int start = s ? 32 - __builtin_clz(s) : 0;
    for (int v = start; v < static_cast<int>(n); ++v)
      if ((rows[static_cast<std::size_t>(v)] & s) == 0) stack.push_back(s | (std::uint32_t{1} << v));
  }
  return p;
}

/// Coefficientwise product P * Q.
template <typename T>
MultiAffinePoly<T> schur_product(const MultiAffinePoly<T>& p, const MultiAffinePoly<T>& q) {
  if (p.n_vars() != q.n_vars()) throw InvalidArgument("schur_product: variable counts differ");
  MultiAffinePoly<T> out(p.n_vars());
  for (const auto& [s, v] : p.terms()) out.set(s, v * q.coefficient(s));
  return out;
}

/// Checks Z_G = Z_H1 * Z_H2 for E(G) = E(H1) u E(H2) on a shared vertex set.
inline bool union_factorization_check(const Graph& g, const Graph& h1, const Graph& h2) {
  if (g.vertex_count() != h1.vertex_count() || g.vertex_count() != h2.vertex_count())
    throw InvalidArgument("union_factorization_check: vertex sets differ");
  auto e = g.edges();
  auto u = h1.edges();
  auto e2 = h2.edges();
  u.insert(u.end(), e2.begin(), e2.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  std::sort(e.begin(), e.end());
  if (u != e) throw InvalidArgument("union_factorization_check: E(g) is not E(h1) u E(h2)");
  return schur_product(multivariate_Z(h1), multivariate_Z(h2)) == multivariate_Z(g);
}

struct ProbeReport {
  double radius = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double min_abs = 0;
  std::vector<Complex> argmin;
  std::string label = "empirical";
};

struct ProbeOptions {
  std::size_t threads = 1;
  std::optional<std::vector<Complex>> center;  // sample near this point instead of the whole polydisk
  double spread = 0.05;
};

/// Samples activity vectors with every |x_v| < radius and reports the smallest |Z_G| seen.
/// Trial i draws from its own stream derived from (seed, i), so the result does not depend
/// on the thread count. This is a sampler, not a proof of stability.
inline ProbeReport stability_probe(const Graph& g, double radius, std::size_t trials, std::uint64_t seed,
                                   const ProbeOptions& opt = {}) {
  const std::size_t n = g.vertex_count();
  if (!(radius >= 0)) throw InvalidArgument("stability_probe: radius must be >= 0");
  if (opt.center && opt.center->size() != n) throw InvalidArgument("stability_probe: center has wrong length");
  const auto z = multivariate_Z<Rational>(g);
  std::vector<std::pair<std::uint32_t, Complex>> terms;
  for (const auto& [s, v] : z.terms()) terms.emplace_back(s, Complex(to_double(v), 0));

  auto sample = [&](Rng& rng) {
    std::vector<Complex> x(n);
    for (std::size_t v = 0; v < n; ++v) {
      for (int attempt = 0;; ++attempt) {
        const double r = std::sqrt(rng.uniform());
        const double theta = 2 * std::numbers::pi * rng.uniform();
        Complex pt = opt.center ? (*opt.center)[v] + opt.spread * r * std::polar(1.0, theta)
                                : radius * r * std::polar(1.0, theta);
        if (std::abs(pt) < radius || radius == 0 || attempt > 1000) {
          if (!(std::abs(pt) < radius)) pt = radius == 0 ? Complex(0) : pt * (radius / std::abs(pt)) * (1 - 1e-12);
          x[v] = pt;
          break;
        }
      }
    }
    return x;
  };
  auto value = [&](const std::vector<Complex>& x) {
    Complex total = 0;
    for (const auto& [s, c] : terms) {
      Complex t = c;
      for (std::uint32_t r = s; r; r &= r - 1) t *= x[static_cast<std::size_t>(__builtin_ctz(r))];
      total += t;
    }
    return std::abs(total);
  };

  std::vector<double> best(trials);
  parallel_for(trials, opt.threads, [&](std::size_t, std::size_t i) {
    Rng rng(derive_seed(seed, i));
    best[i] = value(sample(rng));
  });
  ProbeReport rep{radius, trials, seed, 1.0, std::vector<Complex>(n, 0.0), "empirical"};
  if (trials == 0) return rep;
  std::size_t arg = 0;
  for (std::size_t i = 1; i < trials; ++i)
    if (best[i] < best[arg]) arg = i;
  Rng rng(derive_seed(seed, arg));
  rep.argmin = sample(rng);
  rep.min_abs = best[arg];
  return rep;
}

}  // namespace gp
