#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphpoly/errors.hpp"
#include "graphpoly/graph.hpp"
#include "graphpoly/numeric.hpp"
#include "graphpoly/oracles.hpp"
#include "graphpoly/roots.hpp"

namespace gp {

/// (Delta-1)^(Delta-1) / Delta^Delta: radius of the zero-free disk of Z_G for max degree Delta.
inline Rational shearer_radius(std::size_t delta) {
  if (delta < 2) throw InvalidArgument("shearer_radius: Delta must be >= 2");
  const auto d = static_cast<unsigned>(delta);
  return Rational(ipow(BigInt(d - 1), d - 1), ipow(BigInt(d), d));
}

/// (Delta-1)^(Delta-1) / (Delta-2)^Delta, reported only.
inline Rational lambda_c(std::size_t delta) {
  if (delta < 3) throw InvalidArgument("lambda_c: Delta must be >= 3");
  const auto d = static_cast<unsigned>(delta);
  return Rational(ipow(BigInt(d - 1), d - 1), ipow(BigInt(d - 2), d));
}

/// Shearer radius for a concrete graph. Graphs of maximum degree 0 or 1 also lie in the
/// degree-2 class, so the degree-2 radius applies to them.
inline double shearer_radius_for(const Graph& g) {
  return to_double(shearer_radius(std::max<std::size_t>(2, max_degree(g))));
}

inline constexpr std::size_t kDefaultRatioStateCap = 20'000'000;

struct RatioWitness {
  VertexSet subset;  // vertex set U of the failing subgraph G[U]
  Vertex vertex = -1;
  Complex ratio;
};

struct RatioCertificate {
  bool ok = false;
  Complex lambda;
  double delta_cap = 0;  // 1 / Delta
  double max_ratio_modulus_nonroot = 0;
  Complex root_ratio;
  std::size_t visited_states = 0;
  std::optional<RatioWitness> failure_witness;
  std::string note;  // "boundary" when |lambda| equals the Shearer radius
};

namespace detail {

// Evaluates R_{G[U],u} = lambda / prod_i (1 + R_{G_{i-1},u_i}) over the neighbours u_1 < u_2 < ...
// of u in U, with G_0 = G[U] - u and G_i = G_{i-1} - u_i. Every evaluated state is recorded.
class RatioRecursion {
 public:
  struct DivisionByZero {
    RatioWitness witness;
  };

  RatioRecursion(const Graph& g, Complex lambda, std::size_t state_cap)
      : rows_(g.masks()), lambda_(lambda), state_cap_(state_cap) {}

  Complex operator()(Mask u_set, Vertex u) {
    const auto key = std::make_pair(u_set, u);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= state_cap_)
      throw BudgetExceeded("ratio_state_cap", "ratio recursion visited more than " + std::to_string(state_cap_) + " states");
    Mask rest = u_set & ~bit(u);
    Complex prod = 1.0;
    for (Mask nb = rows_[static_cast<std::size_t>(u)] & u_set; nb; nb &= nb - 1) {
      Vertex w = lowest(nb);
      Complex r = (*this)(rest, w);
      Complex factor = 1.0 + r;
      if (std::abs(factor) <= 1e-14) throw DivisionByZero{RatioWitness{VertexSet::from_mask(rest), w, r}};
      prod *= factor;
      rest &= ~bit(w);
    }
    Complex value = lambda_ / prod;
    require_finite(value, "ratio");
    memo_.emplace(key, value);
    return value;
  }

  const std::map<std::pair<Mask, Vertex>, Complex>& states() const { return memo_; }

 private:
  std::vector<Mask> rows_;
  Complex lambda_;
  std::size_t state_cap_;
  std::map<std::pair<Mask, Vertex>, Complex> memo_;
};

}  // namespace detail

/// R_{G,v}(lambda) = lambda Z_{G - N[v]} / Z_{G - v}, via the telescoping ratio recursion.
/// Throws NumericError naming the witness state if some 1 + R factor vanishes.
inline Complex ratio(const Graph& g, Vertex v, Complex lambda, std::size_t state_cap = kDefaultRatioStateCap) {
  if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count()) throw InvalidArgument("ratio: vertex out of range");
  detail::RatioRecursion rec(g, lambda, state_cap);
  const Mask all = g.vertex_count() == 64 ? ~Mask{0} : bit(static_cast<Vertex>(g.vertex_count())) - 1;
  try {
    return rec(all, v);
  } catch (const detail::RatioRecursion::DivisionByZero& e) {
    std::ostringstream os;
    os << "ratio: 1 + R vanished at vertex " << e.witness.vertex << " of a " << e.witness.subset.size()
       << "-vertex subgraph";
    throw NumericError(os.str());
  }
}

/// Machine-checked zero-freeness of Z_G at one lambda. Each component is handled from its
/// smallest vertex: every sub-ratio met below the root must satisfy |R| < 1/Delta and the
/// root ratio must differ from -1.
inline RatioCertificate certify_zero_free(const Graph& g, Complex lambda, std::size_t state_cap = kDefaultRatioStateCap) {
  RatioCertificate cert;
  cert.lambda = lambda;
  const std::size_t delta = max_degree(g);
  cert.delta_cap = 1.0 / static_cast<double>(std::max<std::size_t>(delta, 1));
  cert.ok = true;
  double closest_to_minus_one = std::numeric_limits<double>::infinity();
  if (delta >= 2) {
    const double lstar = to_double(shearer_radius(delta));
    if (std::abs(std::abs(lambda) - lstar) <= 1e-15 * lstar) cert.note = "boundary";
  }
  for (const auto& comp : connected_components(g)) {
    detail::RatioRecursion rec(g, lambda, state_cap);
    const Mask u_set = comp.to_mask();
    const Vertex root = comp[0];
    Complex r;
    try {
      r = rec(u_set, root);
    } catch (const detail::RatioRecursion::DivisionByZero& e) {
      cert.ok = false;
      cert.failure_witness = e.witness;
      cert.visited_states += rec.states().size();
      return cert;
    }
    cert.visited_states += rec.states().size();
    for (const auto& [state, value] : rec.states()) {
      if (state == std::make_pair(u_set, root)) continue;
      const double mod = std::abs(value);
      if (mod > cert.max_ratio_modulus_nonroot) cert.max_ratio_modulus_nonroot = mod;
      if (!(mod < cert.delta_cap) && cert.ok) {
        cert.ok = false;
        cert.failure_witness = RatioWitness{VertexSet::from_mask(state.first), state.second, value};
      }
    }
    const double gap = std::abs(1.0 + r);
    if (gap < closest_to_minus_one) {
      closest_to_minus_one = gap;
      cert.root_ratio = r;
    }
    if (gap <= 1e-12) {
      cert.ok = false;
      if (!cert.failure_witness) cert.failure_witness = RatioWitness{comp, root, r};
    }
  }
  return cert;
}

inline nlohmann::json to_json(const RatioCertificate& c) {
  nlohmann::json j{{"ok", c.ok},
                   {"lambda", {{"re", c.lambda.real()}, {"im", c.lambda.imag()}}},
                   {"delta_cap", c.delta_cap},
                   {"max_ratio_modulus_nonroot", c.max_ratio_modulus_nonroot},
                   {"root_ratio", {{"re", c.root_ratio.real()}, {"im", c.root_ratio.imag()}}},
                   {"visited_states", c.visited_states},
                   {"note", c.note}};
  if (c.failure_witness) {
    const auto& w = *c.failure_witness;
    j["failure_witness"] = {{"subset", w.subset.items()},
                            {"vertex", w.vertex},
                            {"ratio", {{"re", w.ratio.real()}, {"im", w.ratio.imag()}}}};
  } else {
    j["failure_witness"] = nullptr;
  }
  return j;
}

/// Smallest modulus among the roots of Z_G (infinity when Z_G is constant).
inline double min_root_modulus(const Graph& g) {
  auto p = brute_force_independence_coeffs(g);
  if (p.degree() < 1) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (auto z : poly_roots(p)) best = std::min(best, std::abs(z));
  return best;
}

struct RootSurveyRow {
  std::string graph;
  std::size_t n = 0;
  std::size_t delta = 0;
  double min_modulus = 0;
  std::optional<double> min_neg_real_root;  // negative real root closest to 0
};

inline RootSurveyRow root_survey_row(const std::string& name, const Graph& g) {
  RootSurveyRow row{name, g.vertex_count(), max_degree(g), std::numeric_limits<double>::infinity(), std::nullopt};
  auto p = brute_force_independence_coeffs(g);
  if (p.degree() < 1) return row;
  for (auto z : poly_roots(p)) {
    row.min_modulus = std::min(row.min_modulus, std::abs(z));
    if (z.real() < 0 && std::abs(z.imag()) <= 1e-9 * std::abs(z))
      if (!row.min_neg_real_root || z.real() > *row.min_neg_real_root) row.min_neg_real_root = z.real();
  }
  return row;
}

}  // namespace gp
