#include <gtest/gtest.h>

#include "instances.hpp"
#include "nagata/hierarchy.hpp"

using namespace nagata;
using testing_support::Rng;

namespace {

HierarchicalCovering manual(double r, int j_min, int j_max, int colors) {
  HierarchicalCovering h;
  h.r = r;
  h.c_prime = 1.0;
  h.c = 9.0;
  h.j_min = j_min;
  h.j_max = j_max;
  h.colors = colors;
  h.families.assign(static_cast<std::size_t>(j_max - j_min + 1),
                    std::vector<std::vector<PointSet>>(static_cast<std::size_t>(colors)));
  return h;
}

}  // namespace

TEST(Hierarchy, RejectsSmallBase) {
  const auto x = FiniteMetricSpace::from_line({0, 1});
  EXPECT_THROW(build_hierarchy(x, 1.0, 10.9), ParameterError);
  EXPECT_NO_THROW(build_hierarchy(x, 1.0, 11.0));
  EXPECT_THROW(build_hierarchy(FiniteMetricSpace(), 1.0, 11.0), ParameterError);
}

TEST(Hierarchy, SinglePoint) {
  const auto x = FiniteMetricSpace::from_line({0.0});
  const auto h = build_hierarchy(x, 1.0, 11.0);
  EXPECT_EQ(h.j_min, 0);
  EXPECT_EQ(h.j_max, 0);
  ASSERT_GE(h.colors, 1);
  for (int k = 0; k < h.colors; ++k) {
    ASSERT_EQ(h.family(0, k).size(), 1u);
    EXPECT_EQ(h.family(0, k)[0], PointSet{0});
  }
  EXPECT_TRUE(check_hierarchy(x, h).ok());
}

TEST(Hierarchy, TwoPointsHandTrace) {
  // r = 11, c' = 1, levels -1..1. Level -1: raw balls of radius 5/11 are singletons, inflated by
  // 1/11 they stay singletons. Level 0: one raw ball holds both points.
  const auto x = FiniteMetricSpace::from_line({0, 1});
  HierarchyOptions opts;
  opts.levels = std::make_pair(-1, 1);
  const auto h = build_hierarchy(x, 1.0, 11.0, opts);
  EXPECT_DOUBLE_EQ(h.c, 9.0);
  EXPECT_EQ(h.colors, 2);
  // Level -1: the basepoint gets color (-1 mod 2) = 1.
  ASSERT_EQ(h.family(-1, 1).size(), 1u);
  EXPECT_EQ(h.family(-1, 1)[0], PointSet{0});
  ASSERT_EQ(h.family(-1, 0).size(), 1u);
  EXPECT_EQ(h.family(-1, 0)[0], PointSet{1});
  // Level 0: basepoint color 0.
  ASSERT_EQ(h.family(0, 0).size(), 1u);
  EXPECT_EQ(h.family(0, 0)[0], (PointSet{0, 1}));
  EXPECT_TRUE(h.family(0, 1).empty());
  // Top level: the whole space in every color.
  for (int k = 0; k < 2; ++k) EXPECT_EQ(h.family(1, k)[0], (PointSet{0, 1}));
  const auto rep = check_hierarchy(x, h);
  EXPECT_TRUE(rep.ok());
  EXPECT_LE(rep.measured_c, h.c);
}

TEST(Hierarchy, AutoLevelsEndWithWholeSpace) {
  Rng rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    const auto x = testing_support::random_euclidean(rng, 20, 2, 50.0);
    const auto [lo, hi] = auto_levels(x, 2.0, 16.0);
    EXPECT_LT(lo, hi);
    EXPECT_EQ(greedy_net(x, 5.0 * std::pow(16.0, hi)).size(), 1u);
    EXPECT_GT(greedy_net(x, 5.0 * std::pow(16.0, hi - 1)).size(), 1u);
    // At j_min every raw ball is a singleton.
    EXPECT_LT(5.0 * std::pow(16.0, lo), x.min_positive_distance());
  }
}

TEST(Hierarchy, RandomInstancesPassAllChecks) {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = testing_support::doubling_instance(rng, static_cast<std::size_t>(trial), 30);
    const double cp = 2.0;
    const auto h = build_hierarchy(x, cp, hierarchy_min_base(cp));
    const auto rep = check_hierarchy(x, h);
    EXPECT_TRUE(rep.ok()) << (rep.witnesses.empty() ? "" : rep.witnesses.front());
    EXPECT_LE(rep.measured_c, 5.0 * cp + 4.0);
    // Chain edges go strictly downward.
    for (const auto& e : h.chains) EXPECT_LT(e.lower_level, e.upper_level);
  }
}

TEST(Hierarchy, BasepointNormalization) {
  Rng rng(12);
  const auto x = testing_support::random_euclidean(rng, 18, 2, 40.0);
  HierarchyOptions opts;
  opts.basepoint = 5;
  const auto h = build_hierarchy(x, 2.0, 16.0, opts);
  for (int j = h.j_min; j < h.j_max; ++j) {
    const int k = ((j % h.colors) + h.colors) % h.colors;
    bool found = false;
    for (const auto& m : h.family(j, k)) found = found || m.contains(5);
    EXPECT_TRUE(found) << "level " << j;
  }
}

TEST(HatClosure, MonotoneAndIdempotent) {
  Rng rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = testing_support::random_euclidean(rng, 20, 2, 60.0);
    const auto h = build_hierarchy(x, 2.0, 16.0);
    const auto again = hat_closure(h.families, h.j_min, h.chains);
    EXPECT_EQ(again, h.families);
  }
  // Monotone on a hand-built family: 0 <- 1 <- 2 along edges.
  std::vector<std::vector<std::vector<PointSet>>> fam{{{PointSet{0}}}, {{PointSet{1}}}, {{PointSet{2}}}};
  const std::vector<ChainEdge> edges{{0, 1, 0, 0, 0}, {0, 2, 0, 1, 0}};
  const auto closed = hat_closure(fam, 0, edges);
  EXPECT_EQ(closed[0][0][0], PointSet{0});
  EXPECT_EQ(closed[1][0][0], (PointSet{0, 1}));
  EXPECT_EQ(closed[2][0][0], (PointSet{0, 1, 2}));
  EXPECT_EQ(hat_closure(closed, 0, edges), closed);
}

TEST(CheckHierarchy, DetectsNestedOrFarViolation) {
  // Same color, levels 0 < 1, distance exactly r^0 = 1 and no containment.
  const auto x = FiniteMetricSpace::from_line({0, 1, 50});
  auto h = manual(11.0, 0, 1, 1);
  h.family(0, 0) = {PointSet{0}, PointSet{2}};
  h.family(1, 0) = {PointSet{1}};
  const auto rep = check_hierarchy(x, h);
  EXPECT_FALSE(rep.nested_or_far);
  ASSERT_FALSE(rep.witnesses.empty());
}

TEST(CheckHierarchy, DetectsEachFailure) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 50});
  auto h = manual(11.0, 0, 0, 1);
  h.family(0, 0) = {PointSet{0}, PointSet{1}, PointSet{2}};
  auto rep = check_hierarchy(x, h);
  EXPECT_FALSE(rep.bounded_separated);  // members {0} and {1} within r^0
  EXPECT_FALSE(rep.ball_containment);   // B(0, 1) = {0, 1} lies in no member
  EXPECT_FALSE(rep.absorbs_space);
  EXPECT_TRUE(rep.nested_or_far);

  auto whole = manual(11.0, 0, 0, 1);
  whole.family(0, 0) = {PointSet{0, 1, 2}};
  EXPECT_FALSE(check_hierarchy(x, whole).bounded_separated);  // diameter 50 > 9
  const auto y = FiniteMetricSpace::from_line({0, 1, 2});
  auto small = manual(11.0, 0, 0, 1);
  small.family(0, 0) = {PointSet{0, 1, 2}};
  EXPECT_TRUE(check_hierarchy(y, small).ok());
}
