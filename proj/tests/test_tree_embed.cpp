#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "instances.hpp"
#include "oracles.hpp"
#include "nagata/tree_embed.hpp"

using namespace nagata;
using testing_support::Rng;
using testing_support::random_children;


TEST(Precedes, NestedChain) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 2});
  HierarchicalCovering h;
  h.r = 11.0;
  h.c_prime = 1.0;
  h.c = 9.0;
  h.j_min = 0;
  h.j_max = 2;
  h.colors = 1;
  h.families = {{{PointSet{0}, PointSet{2}}}, {{PointSet{0, 1}}}, {{PointSet{0, 1, 2}}}};
  const auto rel = precedes(h);
  ASSERT_EQ(rel.size(), 1u);
  const auto& r = rel[0];
  ASSERT_EQ(r.nodes.size(), 4u);
  const auto a = r.find({0, 0}), b = r.find({1, 0}), c = r.find({2, 0}), d = r.find({0, 1});
  EXPECT_EQ(r.parent[a], b);
  EXPECT_EQ(r.parent[b], c);
  EXPECT_EQ(r.parent[d], c);  // {2} skips level 1
  EXPECT_EQ(r.parent[c], kNoIndex);
  EXPECT_EQ(r.children[c].size(), 2u);
}

TEST(ChainMetric, TwoClustersExample) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 10, 11});
  const ChainMetric m(x, PointSet::all(4), {PointSet{0, 1}, PointSet{2, 3}}, 0.5);
  EXPECT_DOUBLE_EQ(m(0, 3), 3.0);
  EXPECT_DOUBLE_EQ(m(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(m(1, 2), 3.0);
  EXPECT_EQ(m.to_complement(0), kInfinity);
  EXPECT_THROW(ChainMetric(x, PointSet{0}, {}, 0.5)(0, 1), ParameterError);
  EXPECT_THROW(ChainMetric(x, PointSet{0}, {}, 1.5), ParameterError);
}

TEST(ChainMetric, MatchesExhaustiveOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = testing_support::random_euclidean(rng, static_cast<std::size_t>(rng.integer(4, 12)), 2, 20.0);
    const auto kids = random_children(rng, x.size(), static_cast<std::size_t>(rng.integer(0, 6)));
    const double p = rng.uniform(0.2, 1.0);
    const ChainMetric m(x, PointSet::all(x.size()), kids, p);
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = 0; b < x.size(); ++b) {
        const double want = testing_support::chain_oracle(x, kids, p, a, b);
        EXPECT_NEAR(m(a, b), want, 1e-12 * std::max(1.0, want));
      }
  }
}

TEST(Tau, WholeSpaceClipsAtTop) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 2});
  const ChainMetric m(x, PointSet::all(3), {}, 0.5);
  EXPECT_DOUBLE_EQ(tau(m, 2, 16.0, 0), 16.0 - 4.0);
  EXPECT_DOUBLE_EQ(clipped_height(1.0, 16.0, 0.5, 1), 0.0);
  EXPECT_DOUBLE_EQ(clipped_height(2.5, 16.0, 0.5, 1), 1.5);
  const ChainMetric part(x, PointSet{0}, {}, 0.5);
  EXPECT_THROW(tau(part, 0, 16.0, 1), ParameterError);
}

TEST(LowerBound, HoldsAtGuardOnBuiltHierarchies) {
  Rng rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const auto x = testing_support::doubling_instance(rng, static_cast<std::size_t>(trial), 25);
    const auto h = build_hierarchy(x, 2.0, hierarchy_min_base(2.0));
    const double p = exponent_guard(h.c);
    const auto rels = precedes(h);
    std::size_t pairs = 0;
    for (int k = 0; k < h.colors; ++k) {
      const auto& rel = rels[static_cast<std::size_t>(k)];
      for (std::size_t u = 0; u < rel.nodes.size(); ++u) {
        std::vector<PointSet> kids;
        for (std::size_t v : rel.children[u]) kids.push_back(h.family(rel.nodes[v].level, k)[rel.nodes[v].index]);
        const ChainMetric m(x, h.family(rel.nodes[u].level, k)[rel.nodes[u].index], kids, p);
        const auto rep = lower_bound_check(x, m, rel.nodes[u].level, h.r, h.c);
        EXPECT_TRUE(rep.violations.empty());
        pairs += rep.pairs_checked;
      }
    }
    EXPECT_GT(pairs, 0u);
  }
  const auto x = FiniteMetricSpace::from_line({0, 1});
  const ChainMetric m(x, PointSet::all(2), {}, 0.9);
  EXPECT_THROW(lower_bound_check(x, m, 0, 11.0, 9.0), ParameterError);
}

TEST(Constants, ClosedForms) {
  EXPECT_DOUBLE_EQ(coordinate_upper_constant(16.0, 0.5), 1.0 + 4.0 / 3.0 * 5.0);
  EXPECT_DOUBLE_EQ(embedding_lower_constant(31.0, 1.0, 9.0), (22.0 / 10.0 - 1.0) / (9.0 * 31.0 * 31.0));
  EXPECT_DOUBLE_EQ(embedding_min_base(1.0), 20.0);
  EXPECT_DOUBLE_EQ(embedding_min_base(2.0), 30.0);
  EXPECT_DOUBLE_EQ(norm_factor(ProductNorm::kEuclidean, 4), 2.0);
  EXPECT_DOUBLE_EQ(norm_factor(ProductNorm::kSum, 4), 4.0);
  EXPECT_DOUBLE_EQ(default_exponent(1.0), 0.5);
  EXPECT_NEAR(default_exponent(14.0), 0.99 * 0.25, 1e-15);
}

TEST(Embed, TwoPoints) {
  const auto x = FiniteMetricSpace::from_line({0, 1});
  const auto res = embed(x, 1.0, embedding_min_base(1.0));
  EXPECT_TRUE(res.report.passed());
  for (const auto& t : res.embedding.trees) EXPECT_TRUE(t.check_invariants().empty());
  EXPECT_GT(res.product_distances[1], 0.0);
  EXPECT_EQ(res.product_distances[0], 0.0);
}

TEST(Embed, CollinearAllNorms) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 2, 3, 4});
  for (auto norm : {ProductNorm::kMax, ProductNorm::kEuclidean, ProductNorm::kSum}) {
    EmbedOptions opts;
    opts.norm = norm;
    const auto res = embed(x, 2.0, embedding_min_base(2.0), opts);
    const auto& rep = res.report;
    EXPECT_TRUE(rep.passed());
    EXPECT_LE(rep.max_ratio, rep.upper_constant * (1.0 + 1e-9));
    EXPECT_GE(rep.min_ratio, rep.lower_constant * (1.0 - 1e-9));
    EXPECT_LE(rep.measured_distortion(), rep.distortion * (1.0 + 1e-9));
    EXPECT_EQ(rep.pairs, 10u);
  }
}

TEST(Embed, RandomInstancesCertify) {
  Rng rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    const auto x = testing_support::doubling_instance(rng, static_cast<std::size_t>(trial), 25);
    const auto res = embed(x, 2.0, embedding_min_base(2.0));
    EXPECT_TRUE(res.report.passed());
    EXPECT_EQ(res.embedding.trees.size(), static_cast<std::size_t>(res.hierarchy.colors));
    for (const auto& t : res.embedding.trees) EXPECT_TRUE(t.check_invariants().empty());
  }
}

TEST(Embed, ParameterErrors) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 2});
  EXPECT_THROW(embed(x, 2.0, 16.0), ParameterError);  // r <= 2c + 1
  EmbedOptions opts;
  opts.p = 0.9;
  EXPECT_THROW(embed(x, 2.0, 30.0, opts), ParameterError);
  opts.p = 0.0;
  EXPECT_THROW(embed(x, 2.0, 30.0, opts), ParameterError);
}
