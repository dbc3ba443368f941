#include <gtest/gtest.h>

#include <random>

#include "graphpoly/generators.hpp"
#include "graphpoly/oracles.hpp"
#include "graphpoly/roots.hpp"
#include "support/naive.hpp"

using namespace gp;

namespace {

IntPolynomial from_naive(const std::vector<std::int64_t>& a) {
  std::vector<BigInt> c(a.begin(), a.end());
  return IntPolynomial(std::move(c));
}

}  // namespace

TEST(BruteForceCoeffs, Examples) {
  for (std::size_t k = 1; k <= 6; ++k)
    EXPECT_EQ(brute_force_independence_coeffs(gen::complete(k)), (IntPolynomial{1, static_cast<long>(k)}));
  for (unsigned k = 0; k <= 8; ++k) {
    std::vector<BigInt> binom;
    for (unsigned i = 0; i <= k; ++i) binom.push_back(binomial(k, i));
    EXPECT_EQ(brute_force_independence_coeffs(gen::empty(k)), IntPolynomial(binom));
  }
  EXPECT_EQ(brute_force_independence_coeffs(gen::path(3)), (IntPolynomial{1, 3, 1}));
  EXPECT_EQ(brute_force_independence_coeffs(Graph(0)), (IntPolynomial{1}));
}

TEST(BruteForceCoeffs, OverCapAdvisesEngine) {
  try {
    brute_force_independence_coeffs(gen::path(31));
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("compute_alpha"), std::string::npos);
  }
}

TEST(BruteForceCoeffs, MatchesSubsetScan) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = naive::random_graph(4 + trial % 12, 0.25, rng);
    EXPECT_EQ(brute_force_independence_coeffs(g), from_naive(naive::independence_coeffs(g)));
  }
}

TEST(BruteForceCoeffs, FirstTwoCoefficients) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned n = 2 + trial % 20;
    auto g = naive::random_graph(n, 0.3, rng);
    auto a = brute_force_independence_coeffs(g);
    EXPECT_EQ(a.coefficient(1), n);
    EXPECT_EQ(a.coefficient(2), binomial(n, 2) - g.edge_count());
  }
}

TEST(BruteForceCoeffs, MultiplicativeOverDisjointUnion) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = naive::random_graph(6, 0.4, rng), b = naive::random_graph(7, 0.3, rng);
    EXPECT_EQ(brute_force_independence_coeffs(disjoint_union(a, b)),
              brute_force_independence_coeffs(a) * brute_force_independence_coeffs(b));
  }
}

TEST(ExactZ, Examples) {
  EXPECT_DOUBLE_EQ(exact_Z_eval(gen::complete(1), 0.5), 1.5);
  EXPECT_NEAR(exact_Z_eval(gen::complete(3), 0.1), 1.3, 1e-15);
  auto a = gen::cycle(5), b = gen::path(4);
  Complex l{0.3, -0.2};
  EXPECT_LT(std::abs(exact_Z_eval(disjoint_union(a, b), l) - exact_Z_eval(a, l) * exact_Z_eval(b, l)), 1e-13);
}

TEST(ExactZ, MatchesCoefficientEvaluation) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.4, 1.4);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = naive::random_graph(6 + trial % 13, 0.25, rng);
    Complex l{u(rng), u(rng)};
    const Complex ref = brute_force_independence_coeffs(g).evaluate(l);
    EXPECT_LE(std::abs(exact_Z_eval(g, l) - ref), 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST(ExactZ, VertexRecursionHoldsExactly) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = naive::random_graph(9, 0.35, rng);
    const Rational l(2, 7 + trial);
    // Z_G = Z_{G-v} + lambda Z_{G - N[v]} for v = 0.
    std::vector<Vertex> rest, far;
    for (Vertex w = 1; w < 9; ++w) {
      rest.push_back(w);
      if (!g.has_edge(0, w)) far.push_back(w);
    }
    auto lhs = exact_Z_eval(g, l);
    auto rhs = exact_Z_eval(induced_subgraph(g, VertexSet(rest)).graph, l) +
               l * exact_Z_eval(induced_subgraph(g, VertexSet(far)).graph, l);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(BruteForceInd, Examples) {
  EXPECT_EQ(brute_force_ind(gen::empty(2), gen::complete(3)), 0);
  EXPECT_EQ(brute_force_ind(gen::path(2), gen::complete(3)), 3);
  EXPECT_THROW(brute_force_ind(gen::path(2), gen::path(17)), BudgetExceeded);
}

TEST(BruteForceInd, EdgePlusVertexIdentity) {
  const auto e_plus_v = Graph::from_edges(3, {{0, 1}});
  const auto e = gen::path(2), p3 = gen::path(3), t = gen::complete(3);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 3 + trial % 8;
    auto g = naive::random_graph(n, 0.4, rng);
    BigInt lhs = brute_force_ind(e_plus_v, g);
    BigInt rhs = BigInt(n - 2) * brute_force_ind(e, g) - 2 * brute_force_ind(p3, g) - 3 * brute_force_ind(t, g);
    EXPECT_EQ(lhs, rhs);
    EXPECT_EQ(brute_force_ind(p3, g), naive::induced_count(p3, g));
  }
}

TEST(Roots, Examples) {
  auto r = poly_roots(IntPolynomial{1, 4});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(std::abs(r[0] - Complex(-0.25)), 0, 1e-14);

  auto d = poly_roots(IntPolynomial{1, 2, 1});
  ASSERT_EQ(d.size(), 2u);
  for (auto z : d) EXPECT_NEAR(std::abs(z + 1.0), 0, 1e-7);

  auto p = poly_roots(IntPolynomial{1, 3, 1});
  ASSERT_EQ(p.size(), 2u);
  std::vector<double> re{p[0].real(), p[1].real()};
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], (-3 - std::sqrt(5.0)) / 2, 1e-12);
  EXPECT_NEAR(re[1], (-3 + std::sqrt(5.0)) / 2, 1e-12);
}

TEST(Roots, RejectsConstant) { EXPECT_THROW(poly_roots(IntPolynomial{3}), InvalidArgument); }

TEST(Roots, VietaRelations) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = naive::random_graph(6 + trial % 12, 0.3, rng);
    auto a = brute_force_independence_coeffs(g);
    const auto d = static_cast<std::size_t>(a.degree());
    if (d < 1) continue;
    auto roots = poly_roots(a);
    ASSERT_EQ(roots.size(), d);
    Complex sum = 0, prod = 1;
    for (auto z : roots) {
      sum += z;
      prod *= z;
    }
    const double ad = to_double(a.coefficient(d));
    const Complex want_sum = -to_double(a.coefficient(d - 1)) / ad;
    const Complex want_prod = (d % 2 ? -1.0 : 1.0) / ad;
    EXPECT_LE(std::abs(sum - want_sum), 1e-8 * std::abs(want_sum));
    EXPECT_LE(std::abs(prod - want_prod), 1e-8 * std::abs(want_prod));
  }
}
