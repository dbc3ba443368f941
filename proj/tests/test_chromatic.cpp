#include <gtest/gtest.h>

#include <random>

#include "graphpoly/canonical.hpp"
#include "graphpoly/chromatic.hpp"
#include "graphpoly/corpus.hpp"
#include "graphpoly/generators.hpp"
#include "graphpoly/roots.hpp"
#include "support/naive.hpp"

using namespace gp;

namespace {

std::vector<Graph> unlabelled(std::size_t n) {
  std::vector<Graph> out;
  for (const auto& k : all_graphs(n)) out.push_back(k.to_graph());
  return out;
}

IntPolynomial linear(long root) { return IntPolynomial{-root, 1}; }

}  // namespace

TEST(ChromaticPoly, Examples) {
  EXPECT_EQ(chromatic_poly(gen::complete(3)), (IntPolynomial{0, 2, -3, 1}));
  EXPECT_EQ(chromatic_poly(gen::complete(4)), linear(0) * linear(1) * linear(2) * linear(3));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::size_t r = 3 + seed * 2;
    IntPolynomial want = linear(0);
    for (std::size_t i = 1; i < r; ++i) want = want * linear(1);
    EXPECT_EQ(chromatic_poly(gen::random_tree(r, seed)), want);
  }
  EXPECT_EQ(chromatic_poly(Graph(0)), (IntPolynomial{1}));
  EXPECT_EQ(chromatic_poly(gen::empty(3)), (IntPolynomial{0, 0, 0, 1}));
}

TEST(ChromaticPoly, CycleFormula) {
  for (std::size_t n = 3; n <= 12; ++n) {
    IntPolynomial qm1{-1, 1}, power{1};
    for (std::size_t i = 0; i < n; ++i) power = power * qm1;
    const IntPolynomial want = power + (n % 2 ? IntPolynomial{1, -1} : qm1);
    EXPECT_EQ(chromatic_poly(gen::cycle(n)), want) << n;
  }
}

TEST(ChromaticPoly, CountsProperColourings) {
  std::mt19937_64 rng(131);
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& g : unlabelled(n)) {
      auto chi = chromatic_poly(g);
      for (int q = 0; q <= 4; ++q) EXPECT_EQ(chi.evaluate(BigInt(q)), naive::colourings(g, q));
    }
  for (int trial = 0; trial < 25; ++trial) {
    auto g = naive::random_graph(6 + trial % 2, 0.45, rng);
    auto chi = chromatic_poly(g);
    for (int q = 0; q <= 4; ++q) EXPECT_EQ(chi.evaluate(BigInt(q)), naive::colourings(g, q));
  }
}

TEST(ChromaticPoly, BudgetIsEnforced) {
  EXPECT_THROW(chromatic_poly(gen::random_regular(16, 5, 1), 50), BudgetExceeded);
}

TEST(RandomCluster, Examples) {
  EXPECT_EQ(random_cluster_eval(gen::empty(4), Rational(3, 2)), Rational(81, 16));
  EXPECT_EQ(random_cluster_poly(gen::path(2)), (IntPolynomial{0, -1, 1}));
  EXPECT_THROW(random_cluster_poly(gen::complete(8)), BudgetExceeded);
}

TEST(RandomCluster, AgreesWithDeletionContraction) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& g : unlabelled(n)) {
      auto chi = chromatic_poly(g);
      if (g.edge_count() <= kMaxClusterEdges) EXPECT_EQ(random_cluster_poly(g), chi);
      for (int q = 0; q <= 5; ++q) EXPECT_EQ(random_cluster_eval(g, Rational(q)), Rational(chi.evaluate(BigInt(q))));
    }
  EXPECT_EQ(random_cluster_poly(gen::grid(3, 4)), chromatic_poly(gen::grid(3, 4)));
}

TEST(PolymerWeight, Examples) {
  const Complex q{0.3, 0.2};
  auto g = gen::complete(4);
  EXPECT_EQ(polymer_weight(gen::path(2), VertexSet{0, 1}, Rational(5)), Rational(-5));
  EXPECT_EQ(polymer_weight(g, VertexSet{0, 1, 2}, Rational(3)), Rational(18));
  EXPECT_EQ(polymer_weight(Graph::from_edges(4, {{0, 1}}), VertexSet{0, 2}, Rational(3)), Rational(0));
  EXPECT_NEAR(std::abs(polymer_weight(g, VertexSet{1, 3}, q) + q), 0, 1e-16);
  EXPECT_THROW(polymer_weight(g, VertexSet{1}, q), InvalidArgument);
}

TEST(PolymerPartition, SmallCases) {
  EXPECT_EQ(polymer_partition(gen::empty(5), Rational(7), 5), Rational(1));
  EXPECT_EQ(polymer_partition(gen::path(2), Rational(7), 2), Rational(-6));
}

TEST(PolymerPartition, ReversedChromaticIdentity) {
  std::mt19937_64 rng(137);
  std::uniform_real_distribution<double> mod(0.1, 3.0), arg(0, 2 * std::numbers::pi);
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& g : unlabelled(n)) {
      auto rev = chromatic_poly(g).reversed(n);
      for (int trial = 0; trial < 20; ++trial) {
        const Complex q = std::polar(mod(rng), arg(rng));
        const Complex want = rev.evaluate(q);
        EXPECT_LE(std::abs(polymer_partition(g, q, n) - want), 1e-8 * std::abs(want));
      }
      const Rational q(3, 5 + static_cast<long>(n));
      EXPECT_EQ(polymer_partition(g, q, n), rev.evaluate(q));
    }
}

TEST(GkCondition, TreeBoundIsTheTreeGeneratingFunction) {
  for (const auto& ng : corpus_filter(10, 0, 64)) {
    const double a = 1.3, q = 0.05;
    auto rep = gk_condition_check(ng.graph, q, a, GkMode::tree_bound);
    ASSERT_EQ(rep.vertices.size(), ng.graph.vertex_count());
    for (const auto& row : rep.vertices) {
      const double want = a * (tree_gen_fn(ng.graph, row.vertex, a * q) - 1);
      EXPECT_NEAR(row.sum, want, 1e-12 * std::max(1.0, want)) << ng.name;
    }
  }
}

TEST(GkCondition, ExactNeverExceedsTreeBound) {
  for (std::size_t n = 2; n <= 6; ++n)
    for (const auto& g : unlabelled(n)) {
      auto exact = gk_condition_check(g, Complex(0.2, 0.1), 1.5, GkMode::exact);
      auto bound = gk_condition_check(g, Complex(0.2, 0.1), 1.5, GkMode::tree_bound);
      for (std::size_t v = 0; v < n; ++v) EXPECT_LE(exact.vertices[v].sum, bound.vertices[v].sum * (1 + 1e-12));
      if (bound.ok) EXPECT_TRUE(exact.ok);
    }
}

TEST(GkCondition, PassesAtTheChromaticRadius) {
  const double a = 1.588;
  for (const auto& ng : corpus_filter(12, 1, 64)) {
    const double delta = static_cast<double>(max_degree(ng.graph));
    const double q = std::log(2 - 1 / a) / ((2 * a - 1) * delta);
    auto rep = gk_condition_check(ng.graph, std::polar(q, 0.7), a, GkMode::tree_bound);
    EXPECT_TRUE(rep.ok) << ng.name;
  }
}

TEST(GkCondition, PassingImpliesNonzeroPartition) {
  std::mt19937_64 rng(139);
  for (const auto& ng : corpus_filter(10, 1, 64)) {
    const double delta = static_cast<double>(max_degree(ng.graph));
    const Complex q = std::polar(0.1 / delta, 2 * std::numbers::pi * static_cast<double>(rng() % 1000) / 1000);
    auto rep = gk_condition_check(ng.graph, q, 1.5, GkMode::exact);
    if (!rep.ok) continue;
    const double scale = std::abs(chromatic_poly(ng.graph).reversed(ng.graph.vertex_count()).evaluate(Complex(std::abs(q))));
    EXPECT_GT(std::abs(polymer_partition(ng.graph, q, ng.graph.vertex_count())), 1e-12 * scale) << ng.name;
  }
}

TEST(GkCondition, IsolatedVertexPasses) {
  auto rep = gk_condition_check(gen::empty(3), 10.0, 1.1, GkMode::exact);
  EXPECT_TRUE(rep.ok);
  for (const auto& row : rep.vertices) EXPECT_EQ(row.sum, 0.0);
  EXPECT_THROW(gk_condition_check(gen::path(3), 0.1, 1.0, GkMode::exact), InvalidArgument);
}

TEST(TreeGenFn, Examples) {
  EXPECT_EQ(tree_gen_fn(gen::empty(1), 0, 0.7), 1.0);
  for (std::size_t d = 1; d <= 6; ++d)
    for (double x : {0.0, 0.1, 0.5, 1.0}) EXPECT_NEAR(tree_gen_fn(gen::star(d), 0, x), std::pow(1 + x, d), 1e-12);
}

TEST(TreeGenFn, SubtreeCountsMatchEnumeration) {
  std::mt19937_64 rng(149);
  for (int trial = 0; trial < 25; ++trial) {
    auto g = naive::random_graph(5 + trial % 5, 0.4, rng);
    const Vertex v = static_cast<Vertex>(rng() % g.vertex_count());
    auto got = subtree_counts(g, v);
    auto want = naive::subtrees(g, v);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_EQ(static_cast<std::int64_t>(got[k]), want[k]);
  }
  EXPECT_THROW(subtree_counts(gen::complete(8), 0, 10), BudgetExceeded);
}

TEST(TreeGenFn, MonotoneFromOne) {
  for (const auto& ng : corpus_filter(9, 1, 64)) {
    double last = tree_gen_fn(ng.graph, 0, 0.0);
    EXPECT_EQ(last, 1.0);
    for (double x = 0.05; x < 1.0; x += 0.05) {
      const double t = tree_gen_fn(ng.graph, 0, x);
      EXPECT_GE(t, last);
      last = t;
    }
  }
}

TEST(TreeGenFn, BoundedAtTheLemmaPoint) {
  for (const auto& ng : corpus_filter(12, 1, 64)) {
    const double delta = static_cast<double>(max_degree(ng.graph));
    for (double alpha : {1.5, 2.0, std::numbers::e})
      for (Vertex v = 0; v < static_cast<Vertex>(ng.graph.vertex_count()); ++v)
        EXPECT_LE(tree_gen_fn(ng.graph, v, std::log(alpha) / (alpha * delta)), alpha + 1e-12) << ng.name;
  }
}

TEST(RadiusConstant, MinimiserAndValue) {
  auto c = chromatic_radius_constant();
  EXPECT_LT(c.value, 6.91);
  EXPECT_NEAR(c.a_star, 1.588, 0.01);
  EXPECT_NEAR(chromatic_radius_objective(2.0), 3 / std::log(1.5), 1e-12);
  EXPECT_GT(chromatic_radius_objective(2.0), c.value);
  for (double a = 1.1; a < 10; a += 0.1) EXPECT_GE(chromatic_radius_objective(a), c.value - 1e-12);
}

TEST(ChromaticRoots, InsideTheDisk) {
  for (const auto& ng : corpus_filter(8, 1, 64)) {
    auto row = chromatic_survey_row(ng.name, ng.graph);
    EXPECT_LE(row.max_root_modulus, kChromaticConstant * static_cast<double>(row.delta)) << ng.name;
    EXPECT_LE(row.ratio_to_691delta, 1.0);
  }
  auto k4 = poly_roots(chromatic_poly(gen::complete(4)));
  std::vector<double> re;
  for (auto z : k4) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(re[static_cast<std::size_t>(i)], i, 1e-9);
  EXPECT_NEAR(chromatic_survey_row("K4", gen::complete(4)).max_root_modulus, 3.0, 1e-9);
}

TEST(ChromaticInterpolate, CycleAtForty) {
  auto cert = chromatic_interpolate(gen::cycle(5), 40.0, 0.01);
  const double want = std::pow(39.0, 5) - 39.0;
  EXPECT_LE(std::abs(cert.value - want), 0.01 * want);
  EXPECT_EQ(cert.radius_source, RadiusSource::chromatic_691);
  EXPECT_TRUE(cert.epsilon_guaranteed.has_value());
}

TEST(ChromaticInterpolate, DegreeThreeCorpusAtTwentyFive) {
  for (const auto& ng : corpus_filter(16, 3, 3)) {
    auto cert = chromatic_interpolate(ng.graph, 25.0, 0.01);
    const double want = to_double(chromatic_poly(ng.graph).evaluate(BigInt(25)));
    EXPECT_LE(std::abs(cert.value - want), 0.02 * want) << ng.name;
  }
}

TEST(ChromaticInterpolate, RefusalAndUnsafe) {
  auto g = gen::cycle(6);
  EXPECT_THROW(chromatic_interpolate(g, 10.0, 0.01), OutsideRegion);
  EXPECT_THROW(chromatic_interpolate(g, 0.0, 0.01), InvalidArgument);
  ChromaticOptions opt;
  opt.unsafe = true;
  auto cert = chromatic_interpolate(g, 10.0, 0.01, opt);
  EXPECT_FALSE(cert.epsilon_guaranteed.has_value());
  EXPECT_EQ(cert.radius_source, RadiusSource::user_supplied);
  auto edgeless = chromatic_interpolate(gen::empty(4), 0.5, 0.01);
  EXPECT_NEAR(std::abs(edgeless.value - 0.0625), 0, 1e-12);
}
