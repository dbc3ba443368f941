#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphpoly/coefficient_engine.hpp"
#include "graphpoly/errors.hpp"
#include "graphpoly/graph.hpp"
#include "graphpoly/numeric.hpp"
#include "graphpoly/oracles.hpp"
#include "graphpoly/polynomial.hpp"
#include "graphpoly/zero_certifier.hpp"

namespace gp {

/// Taylor coefficients c_0..c_m of g(z) = ln P(z) at 0, c_k = g^(k)(0)/k!.
struct LogTaylor {
  std::vector<Complex> c;
  std::size_t m() const noexcept { return c.empty() ? 0 : c.size() - 1; }
};

/// c_1..c_m of ln(P/a_0) from the triangular system obtained by matching coefficients in
/// z P'(z) = P(z) z g'(z):
///   r a_r = sum_{k=1}^{r} k c_k a_{r-k},  r >= 1.
/// Entry 0 of the result is left as zero. Missing a_r (r > M) count as 0. Cost O(m^2).
template <typename T>
std::vector<T> log_series(std::span<const T> a, std::size_t m) {
  if (a.empty() || a[0] == T(0)) throw InvalidArgument("log undefined at 0");
  auto coeff = [&](std::size_t r) { return r < a.size() ? a[r] : T(0); };
  std::vector<T> c(m + 1, T(0));
  for (std::size_t r = 1; r <= m; ++r) {
    T acc = T(static_cast<long>(r)) * coeff(r);
    for (std::size_t k = 1; k < r; ++k) acc -= T(static_cast<long>(k)) * c[k] * coeff(r - k);
    c[r] = acc / (T(static_cast<long>(r)) * a[0]);
  }
  return c;
}

/// Formal exponential a_0 exp(sum_{k>=1} c_k z^k) truncated at degree m.
template <typename T>
std::vector<T> exp_series(std::span<const T> c, const T& a0, std::size_t m) {
  auto coeff = [&](std::size_t k) { return k < c.size() ? c[k] : T(0); };
  std::vector<T> a(m + 1, T(0));
  a[0] = a0;
  for (std::size_t r = 1; r <= m; ++r) {
    T acc(0);
    for (std::size_t k = 1; k <= r; ++k) acc += T(static_cast<long>(k)) * coeff(k) * a[r - k];
    a[r] = acc / T(static_cast<long>(r));
  }
  return a;
}

inline LogTaylor log_taylor(std::span<const Complex> a, std::size_t m) {
  LogTaylor t{log_series<Complex>(a, m)};
  t.c[0] = std::log(a[0]);
  return t;
}

/// Exact path: the series is computed in rational arithmetic and converted once at the end.
inline LogTaylor log_taylor(std::span<const Rational> a, std::size_t m) {
  auto exact = log_series<Rational>(a, m);
  LogTaylor t;
  t.c.reserve(m + 1);
  t.c.push_back(std::log(Complex(to_double(a[0]), 0.0)));
  for (std::size_t k = 1; k <= m; ++k) t.c.emplace_back(to_double(exact[k]), 0.0);
  return t;
}

inline LogTaylor log_taylor(const IntPolynomial& p, std::size_t m) {
  auto a = p.to_rational();
  if (a.empty()) a.push_back(Rational(0));
  return log_taylor(std::span<const Rational>(a), m);
}

inline double truncation_bound(std::size_t d, double delta, std::size_t m) {
  return static_cast<double>(d) * std::pow(delta, static_cast<double>(m)) / (1.0 - delta);
}

/// Smallest m >= 1 with d delta^m / (1 - delta) <= eps.
inline std::size_t truncation_order(std::size_t d, double eps, double delta) {
  if (d < 1) throw InvalidArgument("truncation_order: d must be >= 1");
  if (!(eps > 0)) throw InvalidArgument("truncation_order: eps must be > 0");
  if (!(delta > 0) || delta >= 1) throw InvalidArgument("truncation_order: delta must lie in (0,1)");
  const double raw = std::log(static_cast<double>(d) / (eps * (1.0 - delta))) / std::log(1.0 / delta);
  std::size_t m = raw <= 1.0 ? 1 : static_cast<std::size_t>(std::ceil(raw));
  // Settle rounding at the boundary by direct substitution.
  while (m > 1 && truncation_bound(d, delta, m - 1) <= eps) --m;
  while (truncation_bound(d, delta, m) > eps) ++m;
  return m;
}

/// exp(T_m(z)) with T_m evaluated by Horner.
inline Complex evaluate_truncated(const LogTaylor& t, Complex z) {
  Complex s = horner(t.c, z);
  if (!is_finite(s) || s.real() > 709.0)
    throw NumericError("evaluate_truncated: exponent " + std::to_string(s.real()) + " overflows double");
  Complex v = std::exp(s);
  require_finite(v, "evaluate_truncated");
  return v;
}

namespace detail {

// x = mantissa * 2^exponent with |mantissa| in [0.5, 2); exact inputs of any size.
inline std::pair<double, long> split_power_of_two(const BigInt& num, const BigInt& den) {
  if (num == 0) return {0.0, 0};
  const BigInt an = abs(num);
  const long bn = static_cast<long>(boost::multiprecision::msb(an));
  const long bd = static_cast<long>(boost::multiprecision::msb(den));
  auto top = [](const BigInt& x, long bits) {
    return (bits > 60 ? BigInt(x >> (bits - 60)) : BigInt(x << (60 - bits))).convert_to<double>();
  };
  const double mant = top(an, bn) / top(den, bd);
  return {num < 0 ? -mant : mant, bn - bd};
}

}  // namespace detail

/// exp(T_m(z)) from exact coefficients a_0..a_M. When a_0 = 1 and every a_k is an integer,
/// p_r = r c_r is an integer obeying p_r = r a_r - sum_{k} p_k a_{r-k}; only M terms of that
/// sum are nonzero, so the exact series costs O(mM) integer operations. Each term c_k z^k is
/// assembled from a mantissa and a log-magnitude, so it cannot overflow while |z| is inside
/// the radius of convergence even when c_k itself exceeds the double range.
inline Complex evaluate_log_series(std::span<const Rational> a, Complex z, std::size_t m) {
  if (a.empty() || a[0] == 0) throw InvalidArgument("log undefined at 0");
  const std::size_t top = a.size() - 1;
  const bool integral = a[0] == 1 && std::all_of(a.begin(), a.end(), [](const Rational& x) { return is_integer(x); });
  std::vector<std::pair<double, long>> terms(m + 1, {0.0, 0});  // c_k as mantissa * 2^exp
  if (integral) {
    std::vector<BigInt> ai(a.size()), p(m + 1, 0);
    for (std::size_t k = 0; k <= top; ++k) ai[k] = boost::multiprecision::numerator(a[k]);
    for (std::size_t r = 1; r <= m; ++r) {
      BigInt acc = r <= top ? BigInt(ai[r] * static_cast<long>(r)) : BigInt(0);
      for (std::size_t k = r > top ? r - top : 1; k < r; ++k)
        if (ai[r - k] != 0) acc -= p[k] * ai[r - k];
      p[r] = std::move(acc);
      terms[r] = detail::split_power_of_two(p[r], BigInt(static_cast<long>(r)));
    }
  } else {
    const auto c = log_series<Rational>(a, m);
    for (std::size_t r = 1; r <= m; ++r)
      terms[r] = detail::split_power_of_two(boost::multiprecision::numerator(c[r]), boost::multiprecision::denominator(c[r]));
  }
  Complex s = std::log(Complex(to_double(a[0]), 0.0));
  if (z != Complex(0.0, 0.0)) {
    const double log_abs = std::log(std::abs(z));
    const Complex unit = z / std::abs(z);
    Complex uk = 1.0;
    for (std::size_t k = 1; k <= m; ++k) {
      uk *= unit;
      const auto [mant, e] = terms[k];
      if (mant == 0) continue;
      const double mag = static_cast<double>(e) * std::numbers::ln2 + static_cast<double>(k) * log_abs;
      s += mant * std::exp(mag) * uk;
    }
  }
  if (!is_finite(s) || s.real() > 709.0)
    throw NumericError("evaluate_log_series: exponent " + std::to_string(s.real()) + " overflows double");
  Complex v = std::exp(s);
  require_finite(v, "evaluate_log_series");
  return v;
}

enum class RadiusSource { shearer, chromatic_691, user_supplied, none };

inline std::string to_string(RadiusSource s) {
  switch (s) {
    case RadiusSource::shearer: return "shearer";
    case RadiusSource::chromatic_691: return "chromatic_691";
    case RadiusSource::user_supplied: return "user_supplied";
    case RadiusSource::none: return "none";
  }
  return "none";
}

struct ApproxCertificate {
  Complex value;
  std::optional<double> epsilon_guaranteed;
  std::size_t m_used = 0;
  double delta = 0;
  double radius_assumed = 0;
  RadiusSource radius_source = RadiusSource::none;
  std::size_t degree_bound = 0;
  std::string coefficient_source;  // engine, oracle, exact or trivial
};

inline nlohmann::json to_json(const ApproxCertificate& c) {
  nlohmann::json j{{"value", {{"re", c.value.real()}, {"im", c.value.imag()}}},
                   {"m_used", c.m_used},
                   {"delta", c.delta},
                   {"radius_source", to_string(c.radius_source)},
                   {"degree_bound", c.degree_bound},
                   {"coefficient_source", c.coefficient_source}};
  j["epsilon_guaranteed"] = c.epsilon_guaranteed ? nlohmann::json(*c.epsilon_guaranteed) : nlohmann::json(nullptr);
  j["radius_assumed"] = std::isfinite(c.radius_assumed) ? nlohmann::json(c.radius_assumed) : nlohmann::json("inf");
  return j;
}

inline constexpr double kDeltaFloor = 0.05;
inline constexpr double kUnsafeShrink = 0.99;

struct RadiusChoice {
  double radius;
  RadiusSource source;
  bool guaranteed;
};

/// Resolves the disk used for a point z. Outside the disk the call is refused unless
/// `unsafe`, in which case the radius is stretched to |z|/0.99 and the guarantee dropped.
inline RadiusChoice resolve_radius(double abs_z, double natural, RadiusSource natural_source,
                                   std::optional<double> override_radius, bool unsafe) {
  RadiusChoice r{natural, natural_source, true};
  if (override_radius) {
    if (!(*override_radius > 0)) throw InvalidArgument("radius override must be > 0");
    r = {*override_radius, RadiusSource::user_supplied, true};
  }
  if (abs_z >= r.radius) {
    if (!unsafe)
      throw OutsideRegion("outside certified zero-free disk: |z| = " + std::to_string(abs_z) +
                          " >= R = " + std::to_string(r.radius));
    r = {abs_z / kUnsafeShrink, RadiusSource::user_supplied, false};
  }
  return r;
}

/// Shared interpolation step: given a zero-free disk, pick delta and m, fetch exact
/// a_0..a_m and return exp(T_m(z)) with its certificate.
inline ApproxCertificate interpolate(Complex z, double eps, std::size_t degree_bound, const RadiusChoice& radius,
                                     const std::function<std::vector<Rational>(std::size_t)>& coefficients,
                                     const std::string& coefficient_source) {
  if (!(eps > 0)) throw InvalidArgument("eps must be > 0");
  ApproxCertificate cert;
  cert.radius_assumed = radius.radius;
  cert.radius_source = radius.source;
  cert.degree_bound = degree_bound;
  cert.coefficient_source = coefficient_source;
  const double delta_raw = std::isfinite(radius.radius) ? std::abs(z) / radius.radius : 0.0;
  cert.delta = std::max(delta_raw, kDeltaFloor);
  cert.m_used = truncation_order(std::max<std::size_t>(degree_bound, 1), eps, cert.delta);
  auto a = coefficients(cert.m_used);
  cert.value = evaluate_log_series(a, z, cert.m_used);
  if (radius.guaranteed && radius.source != RadiusSource::none) cert.epsilon_guaranteed = eps;
  return cert;
}

/// Deterministic grid of `points` complex values with modulus <= radius: four concentric
/// rings at radius/4, radius/2, 3radius/4 and radius, equally spaced angles starting at 0.
inline std::vector<Complex> disk_grid(double radius, std::size_t points) {
  std::vector<Complex> out;
  const std::size_t rings = points < 4 ? 1 : 4;
  for (std::size_t i = 0; i < points; ++i) {
    const std::size_t ring = i % rings;
    const std::size_t slot = i / rings;
    const std::size_t per_ring = (points + rings - 1 - ring) / rings;
    const double r = radius * static_cast<double>(ring + 1) / static_cast<double>(rings);
    out.push_back(std::polar(r, 2 * std::numbers::pi * static_cast<double>(slot) / static_cast<double>(per_ring)));
  }
  return out;
}

struct ApproxOptions {
  std::optional<double> radius_override;
  bool unsafe = false;
  std::size_t threads = 1;
  std::size_t engine_max_m = 8;
  std::size_t oracle_cap = kDefaultOracleCap;
  CoefficientEngine* engine = nullptr;  // default_engine() when null
};

/// Multiplicative eps-approximation of Z_G(lambda) inside the Shearer disk.
/// Coefficients come from the induced-count engine while the needed order is at most
/// engine_max_m; beyond that the exact brute-force coefficients are used within the oracle cap.
inline ApproxCertificate approx_independence(const Graph& g, Complex lambda, double eps, const ApproxOptions& opt = {}) {
  if (!(eps > 0)) throw InvalidArgument("eps must be > 0");
  const std::size_t n = g.vertex_count();
  const auto radius = resolve_radius(std::abs(lambda), shearer_radius_for(g), RadiusSource::shearer,
                                     opt.radius_override, opt.unsafe);
  if (lambda == Complex(0.0, 0.0) || n == 0) {
    ApproxCertificate cert;
    cert.value = 1.0;
    cert.delta = kDeltaFloor;
    cert.radius_assumed = radius.radius;
    cert.radius_source = radius.source;
    cert.degree_bound = n;
    cert.coefficient_source = "trivial";
    if (radius.guaranteed) cert.epsilon_guaranteed = eps;
    return cert;
  }
  const double delta = std::max(std::abs(lambda) / radius.radius, kDeltaFloor);
  const std::size_t m = truncation_order(n, eps, delta);
  const std::size_t need = std::min(m, n);  // alpha_k = 0 for k > n
  std::string source;
  std::function<std::vector<Rational>(std::size_t)> fetch;
  if (need <= opt.engine_max_m) {
    source = "engine";
    fetch = [&](std::size_t) {
      auto& engine = opt.engine ? *opt.engine : default_engine();
      return compute_alpha(g, need, engine, opt.threads).to_rational();
    };
  } else if (n <= opt.oracle_cap) {
    source = "oracle";
    fetch = [&](std::size_t) { return brute_force_independence_coeffs(g, opt.oracle_cap).to_rational(); };
  } else {
    throw BudgetExceeded("engine_max_m", "approx_independence: m=" + std::to_string(m) + " exceeds engine limit " +
                                             std::to_string(opt.engine_max_m) + " and n=" + std::to_string(n) +
                                             " exceeds oracle cap " + std::to_string(opt.oracle_cap));
  }
  return interpolate(lambda, eps, n, radius, fetch, source);
}

}  // namespace gp
