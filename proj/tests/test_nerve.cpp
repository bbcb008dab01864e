#include <gtest/gtest.h>

#include "instances.hpp"
#include "nagata/nerve.hpp"

using namespace nagata;
using testing_support::Rng;

TEST(Bumps, HandValues) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 4});
  CoverFamily c;
  c.members = {PointSet{0, 1}, PointSet{2}};
  const auto pou = build_bumps(x, c, 2.0);
  EXPECT_DOUBLE_EQ(pou.floor, 1.0);
  EXPECT_DOUBLE_EQ(pou(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(pou(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(pou(0, 2), 0.0);
  EXPECT_DOUBLE_EQ(pou(1, 2), 1.0);
  EXPECT_EQ(pou.support_count(1), 1u);

  const auto wide = build_bumps(x, c, 8.0);
  // d(1, {4}) = 3, so sigma_1(1) = 4 - 3.
  EXPECT_DOUBLE_EQ(wide(1, 1), 1.0);
  const auto v = nerve_coordinates(wide, 1, 1.0);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_DOUBLE_EQ(v[0].second, 0.8);
  EXPECT_DOUBLE_EQ(v[1].second, 0.2);
}

TEST(Bumps, RejectsUncoveredPointsAndBadRadius) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 4});
  CoverFamily c;
  c.members = {PointSet{0, 1}};
  EXPECT_THROW(build_bumps(x, c, 2.0), ParameterError);
  c.members.push_back(PointSet{2});
  EXPECT_THROW(build_bumps(x, c, 0.0), ParameterError);
}

TEST(SparseDistance, MergesIndices) {
  const SparseVector a{{0, 3.0}, {2, 1.0}};
  const SparseVector b{{1, 4.0}, {2, 1.0}};
  EXPECT_DOUBLE_EQ(sparse_distance(a, b), 5.0);
  EXPECT_DOUBLE_EQ(sparse_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(sparse_distance({}, b), std::sqrt(17.0));
}

TEST(Nerve, RandomCoversSatisfyFloorMassAndScaledLipschitz) {
  Rng rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    const auto x = testing_support::random_euclidean(rng, 20, 2, 10.0);
    const double s = rng.uniform(0.5, 3.0);
    const auto dc = doubling_cover(x, s);
    const double r = rng.uniform(0.5, 4.0);
    const auto pou = build_bumps(x, dc.cover, r);
    const double mass = rng.uniform(0.5, 2.0);
    std::vector<SparseVector> coords;
    for (std::size_t p = 0; p < x.size(); ++p) {
      EXPECT_GE(pou.total(p), pou.floor);
      const auto v = nerve_coordinates(pou, p, mass);
      double sum = 0.0;
      for (const auto& [i, w] : v) {
        EXPECT_GT(w, 0.0);
        sum += w;
      }
      EXPECT_NEAR(sum, mass, 1e-12);
      EXPECT_LE(pou.support_count(p), ball_multiplicity(x, dc.cover.members, r / 2.0).value);
    }
    const double lambda = nerve_lambda(x, pou);
    ASSERT_GT(lambda, 0.0);
    for (std::size_t p = 0; p < x.size(); ++p) coords.push_back(nerve_coordinates(pou, p, lambda * r));
    for (std::size_t p = 0; p < x.size(); ++p)
      for (std::size_t q = p + 1; q < x.size(); ++q)
        EXPECT_LE(sparse_distance(coords[p], coords[q]), x(p, q) * (1.0 + 1e-12));
    const auto stars = star_preimage_diameters(x, pou);
    for (std::size_t i = 0; i < dc.cover.members.size(); ++i)
      EXPECT_LE(stars[i], set_diameter(x, dc.cover.members[i]) + r);
  }
}

TEST(Nerve, SingleMemberHasInfiniteLambda) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 2});
  CoverFamily c;
  c.members = {PointSet::all(3)};
  const auto pou = build_bumps(x, c, 1.0);
  EXPECT_DOUBLE_EQ(coordinate_lipschitz(x, pou), 0.0);
  EXPECT_EQ(nerve_lambda(x, pou), kInfinity);
}
