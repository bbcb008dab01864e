#include <gtest/gtest.h>

#include <cstdint>
#include <functional>

#include "instances.hpp"
#include "nagata/covering.hpp"

using namespace nagata;
using testing_support::Rng;

namespace {

// Every subset of diameter <= s, by enumeration of bitmasks.
std::size_t brute_multiplicity(const FiniteMetricSpace& x, const std::vector<PointSet>& members, double s) {
  const std::size_t n = x.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool small = true;
    for (std::size_t a = 0; a < n && small; ++a)
      for (std::size_t b = a + 1; b < n && small; ++b)
        if ((mask >> a & 1u) && (mask >> b & 1u) && x(a, b) > s) small = false;
    if (!small) continue;
    std::size_t met = 0;
    for (const auto& m : members) {
      bool hit = false;
      for (std::size_t p : m) hit = hit || (mask >> p & 1u);
      met += hit ? 1 : 0;
    }
    best = std::max(best, met);
  }
  return best;
}

std::vector<PointSet> random_members(Rng& rng, std::size_t n, std::size_t count) {
  std::vector<PointSet> out;
  for (std::size_t k = 0; k < count; ++k) out.emplace_back(testing_support::random_subset(rng, n, 0.25));
  return out;
}

}  // namespace

TEST(ExactMultiplicity, HandComputedLine) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 2, 3});
  const std::vector<PointSet> members{{0}, {1}, {2}, {3}};
  EXPECT_EQ(exact_multiplicity(x, members, 0.5).value, 1u);
  EXPECT_EQ(exact_multiplicity(x, members, 1.0).value, 2u);
  EXPECT_EQ(exact_multiplicity(x, members, 2.0).value, 3u);
  EXPECT_EQ(exact_multiplicity(x, members, 3.0).value, 4u);
  const auto m = exact_multiplicity(x, members, 1.0);
  EXPECT_LE(set_diameter(x, m.witness), 1.0);
}

TEST(ExactMultiplicity, MatchesBruteForce) {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(3, 11));
    const auto x = testing_support::random_euclidean(rng, n, 2, 10.0);
    const auto members = random_members(rng, n, static_cast<std::size_t>(rng.integer(1, 8)));
    const double s = rng.uniform(0.5, 8.0);
    const auto got = exact_multiplicity(x, members, s);
    EXPECT_EQ(got.value, brute_multiplicity(x, members, s)) << "trial " << trial;
    EXPECT_LE(set_diameter(x, got.witness), s);
    std::size_t met = 0;
    for (const auto& m : members) met += m.intersects(got.witness) ? 1 : 0;
    EXPECT_EQ(met, got.value);
  }
}

TEST(ExactMultiplicity, BudgetIsEnforced) {
  Rng rng(2);
  const auto x = testing_support::random_euclidean(rng, 70, 2, 10.0);
  EXPECT_THROW(exact_multiplicity(x, {PointSet{0}}, 1.0), CapacityError);
  EXPECT_THROW(exact_multiplicity(x, {PointSet{0}}, 1.0, 128), CapacityError);
  const auto small = testing_support::random_euclidean(rng, 10, 2, 10.0);
  EXPECT_THROW(exact_multiplicity(small, {PointSet{0}}, 1.0, 5), CapacityError);
}

TEST(Multiplicity, SeparationDecidesAtMostOne) {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = testing_support::random_euclidean(rng, 10, 2, 10.0);
    const auto members = random_members(rng, 10, 4);
    const double s = rng.uniform(0.2, 5.0);
    const bool separated = !separation_witness(x, members, s).has_value();
    EXPECT_EQ(separated, brute_multiplicity(x, members, s) <= 1);
  }
}

TEST(Multiplicity, BallSandwich) {
  Rng rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const auto x = testing_support::random_euclidean(rng, 14, 2, 10.0);
    const auto members = random_members(rng, 14, 6);
    const double s = rng.uniform(0.2, 5.0);
    const auto exact = exact_multiplicity(x, members, s).value;
    const auto ball = ball_multiplicity(x, members, s).value;
    EXPECT_LE(exact, ball);
    EXPECT_LE(ball, exact_multiplicity(x, members, 2.0 * s).value);
  }
}

TEST(CertifiedMultiplicity, MethodLabels) {
  Rng rng(4);
  const auto small = testing_support::random_euclidean(rng, 20, 2, 10.0);
  CoverFamily c;
  c.members = {PointSet{0, 1}, PointSet{2}};
  EXPECT_EQ(certified_multiplicity(small, c, 1.0).method, "exact");
  EXPECT_EQ(certified_multiplicity(small, c, 1.0, CheckMode::kBall).method, "ball");
  const auto big = testing_support::random_euclidean(rng, 80, 2, 50.0);
  const auto dc = doubling_cover(big, 4.0);
  const auto cm = certified_multiplicity(big, dc.cover, 4.0);
  EXPECT_TRUE(cm.method == "ball" || cm.method == "colors");
  EXPECT_LE(cm.value, static_cast<std::size_t>(dc.colors_used));
  EXPECT_THROW(certified_multiplicity(big, dc.cover, 4.0, CheckMode::kExact), CapacityError);
}

TEST(DoublingCover, CollinearExample) {
  // Five unit-spaced points, s = 1: net {0, 2, 4} and balls of radius 1. Centers 2 apart conflict,
  // centers 4 apart do not.
  const auto x = FiniteMetricSpace::from_line({0, 1, 2, 3, 4});
  const auto dc = doubling_cover(x, 1.0);
  EXPECT_EQ(dc.centers, (std::vector<std::size_t>{0, 2, 4}));
  ASSERT_EQ(dc.cover.members.size(), 3u);
  EXPECT_EQ(dc.cover.members[0], (PointSet{0, 1}));
  EXPECT_EQ(dc.cover.members[1], (PointSet{1, 2, 3}));
  EXPECT_EQ(dc.cover.members[2], (PointSet{3, 4}));
  EXPECT_EQ(dc.cover.colors, (std::vector<int>{0, 1, 0}));
  EXPECT_DOUBLE_EQ(dc.cover.bound, 2.0);
}

TEST(DoublingCover, ColorClassesSeparatedAndBounded) {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = testing_support::doubling_instance(rng, static_cast<std::size_t>(trial), 36);
    const double s = rng.uniform(x.min_positive_distance(), x.diameter());
    const auto dc = doubling_cover(x, s);
    EXPECT_FALSE(uncovered_point(x.size(), dc.cover.members).has_value());
    EXPECT_LE(max_member_diameter(x, dc.cover.members), 2.0 * s);
    for (int k = 0; k < dc.colors_used; ++k) EXPECT_LE(exact_multiplicity(x, dc.cover.color_class(k), s).value, 1u);
    EXPECT_LE(exact_multiplicity(x, dc.cover.members, s).value, static_cast<std::size_t>(dc.colors_used));
  }
}

TEST(IntervalCover, AlternatingColors) {
  const std::vector<double> coords{0.0, 0.5, 1.0, 2.5, 3.9, 4.0};
  const auto c = interval_cover(coords, 1.0, 0.5);
  ASSERT_EQ(c.members.size(), 5u);
  EXPECT_EQ(c.members[0], (PointSet{0, 1}));
  EXPECT_EQ(c.members[1], (PointSet{2}));
  EXPECT_EQ(c.members[2], (PointSet{3}));
  EXPECT_EQ(c.members[3], (PointSet{4}));
  EXPECT_EQ(c.members[4], (PointSet{5}));
  EXPECT_EQ(c.colors, (std::vector<int>{0, 1, 0, 1, 0}));
  const auto d = interval_cover(coords, 2.0, 1.0);
  EXPECT_EQ(d.members.back(), (PointSet{5}));
  EXPECT_THROW(interval_cover(coords, 0.0, 1.0), ParameterError);
}

TEST(ProductCover, ColorsAndIndices) {
  CoverFamily a, b;
  a.members = {PointSet{0}, PointSet{1}};
  a.colors = {0, 1};
  b.members = {PointSet{0, 1}};
  b.colors = {0};
  const auto p = product_cover(a, b, 2);
  ASSERT_EQ(p.members.size(), 2u);
  EXPECT_EQ(p.members[0], (PointSet{0, 1}));
  EXPECT_EQ(p.members[1], (PointSet{2, 3}));
  EXPECT_EQ(p.colors, (std::vector<int>{0, 1}));
}

TEST(ProductCover, MaxProductKeepsColorSeparation) {
  Rng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = testing_support::random_euclidean(rng, 5, 1, 10.0);
    const auto b = testing_support::random_euclidean(rng, 5, 1, 10.0);
    const double s = rng.uniform(0.5, 3.0);
    const auto ca = doubling_cover(a, s), cb = doubling_cover(b, s);
    const auto pc = product_cover(ca.cover, cb.cover, b.size());
    const auto x = product(a, b, ProductNorm::kMax);
    EXPECT_FALSE(uncovered_point(x.size(), pc.members).has_value());
    EXPECT_LE(max_member_diameter(x, pc.members), 2.0 * s);
    for (int k = 0; k < pc.color_count(); ++k)
      EXPECT_FALSE(separation_witness(x, pc.color_class(k), s).has_value());
  }
}

TEST(MergeUnion, HandExample) {
  // Y = {0, 1}, Z = {2, 10}; s = 1, c = 1, n = 0. {2} is within s of Y and joins its member;
  // {10} stays on its own.
  const auto x = FiniteMetricSpace::from_line({0, 1, 2, 10});
  CoverFamily y, z;
  y.members = {PointSet{0, 1}};
  z.members = {PointSet{2}, PointSet{3}};
  const auto res = merge_union_coverings(x, y, z, 1.0, 1.0, 0);
  EXPECT_EQ(res.attached_to, (std::vector<std::size_t>{0, kNoIndex}));
  EXPECT_EQ(res.isolated, (std::vector<std::size_t>{1}));
  ASSERT_EQ(res.cover.members.size(), 2u);
  EXPECT_EQ(res.cover.members[0], (PointSet{0, 1, 2}));
  EXPECT_EQ(res.cover.members[1], (PointSet{3}));
  EXPECT_DOUBLE_EQ(res.diameter_bound, 1.0 * 5.0 + 4.0);
  EXPECT_EQ(res.multiplicity.value, 1u);
}

TEST(MergeUnion, PreconditionsAreChecked) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 2, 10});
  CoverFamily y, z;
  y.members = {PointSet{0, 1}};
  z.members = {PointSet{2, 3}};  // diameter 8 > cs
  EXPECT_THROW(merge_union_coverings(x, y, z, 1.0, 1.0, 0), ContractError);
  z.members = {PointSet{2}, PointSet{2}};  // s-multiplicity 2 > n+1
  EXPECT_THROW(merge_union_coverings(x, y, z, 1.0, 1.0, 0), ContractError);
  EXPECT_THROW(merge_union_coverings(x, y, z, 0.0, 1.0, 0), ParameterError);
}

TEST(MergeUnion, RandomSplitsStayWithinBounds) {
  Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const auto x = testing_support::random_euclidean(rng, 24, 2, 20.0);
    const double s = rng.uniform(0.5, 2.0);
    std::vector<std::size_t> ys, zs;
    for (std::size_t p = 0; p < x.size(); ++p) (rng.coin() ? ys : zs).push_back(p);
    if (ys.empty() || zs.empty()) continue;
    const PointSet yset(ys), zset(zs);
    const double c = 2.0;
    const double wide = (3.0 + 2.0 * c) * s;
    auto lift = [&](const PointSet& part, double scale) {
      const auto sub = subspace(x, part);
      const auto dc = doubling_cover(sub, scale);
      CoverFamily out;
      for (const auto& m : dc.cover.members) {
        std::vector<std::size_t> g;
        for (std::size_t a : m) g.push_back(part[a]);
        out.members.emplace_back(std::move(g));
      }
      return std::make_pair(out, dc.colors_used);
    };
    auto [cy, ky] = lift(yset, wide);
    auto [cz, kz] = lift(zset, s);
    const int n = std::max({ky, kz, static_cast<int>(certified_multiplicity(x, cy, wide).value),
                            static_cast<int>(certified_multiplicity(x, cz, s).value)}) - 1;
    const auto res = merge_union_coverings(x, cy, cz, s, c, n);
    EXPECT_LE(res.measured_diameter, c * wide + 2.0 * (1.0 + c) * s);
    EXPECT_LE(res.multiplicity.value, static_cast<std::size_t>(n + 1));
    EXPECT_FALSE(uncovered_point(x.size(), res.cover.members).has_value());
  }
}

TEST(SingleColor, HarmonicSetConstantsMatchPartitionSearch) {
  // X_m = {0, 1, 1/2, ..., 1/m}. Oracle: enumerate every partition and keep the best one at each
  // scale.
  for (int m : {4, 6}) {
    std::vector<double> coords{0.0};
    for (int k = 1; k <= m; ++k) coords.push_back(1.0 / k);
    const auto x = FiniteMetricSpace::from_line(coords);
    const double s = 1.0 / (m * m);
    std::vector<int> block(x.size(), 0);
    double best = kInfinity;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
      if (i == x.size()) {
        double d = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a)
          for (std::size_t b = a + 1; b < x.size(); ++b) {
            if (block[a] == block[b]) d = std::max(d, x(a, b));
            else if (x(a, b) <= s) return;
          }
        best = std::min(best, d);
        return;
      }
      for (int k = 0; k <= used; ++k) {
        block[i] = k;
        rec(i + 1, std::max(used, k + 1));
      }
    };
    rec(0, 0);
    EXPECT_DOUBLE_EQ(single_color_min_bound(x, s), best) << "m = " << m;
  }
  std::vector<double> c4{0.0, 1.0, 0.5, 1.0 / 3, 0.25};
  EXPECT_DOUBLE_EQ(single_color_min_constant(FiniteMetricSpace::from_line(c4), 1.0 / 16), 2.0);
}

TEST(Profile, ReportsColorsAndConstants) {
  const auto x = FiniteMetricSpace::from_line({0, 1, 2, 3, 4});
  const std::vector<double> scales{1.0, 10.0};
  const auto prof = estimate_nagata_profile(x, scales);
  ASSERT_EQ(prof.size(), 2u);
  EXPECT_EQ(prof[0].colors, 2);
  EXPECT_EQ(prof[1].colors, 1);
  EXPECT_DOUBLE_EQ(prof[0].nominal_c, 2.0);
  const auto capped = estimate_nagata_profile(x, scales, 1);
  EXPECT_EQ(capped[0].colors, 1);
  EXPECT_DOUBLE_EQ(capped[0].measured_c, 4.0);
  const auto two = estimate_nagata_profile(x, scales, 2);
  EXPECT_TRUE(two[0].feasible);
  EXPECT_EQ(two[0].colors, 2);
  // Five points pairwise within 3s but more than s apart need five colors.
  const FiniteMetricSpace k5({{0, 2, 2, 2, 2}, {2, 0, 2, 2, 2}, {2, 2, 0, 2, 2}, {2, 2, 2, 0, 2}, {2, 2, 2, 2, 0}});
  const std::vector<double> one{1.0};
  EXPECT_EQ(estimate_nagata_profile(k5, one)[0].colors, 5);
  EXPECT_FALSE(estimate_nagata_profile(k5, one, 3)[0].feasible);
}
