#ifndef NAGATA_COVERING_HPP
#define NAGATA_COVERING_HPP

// Covering families, s-multiplicity checkers, the doubling (ball) covering, the union merge and
// an empirical profile of feasible (colors, c) pairs.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "metric.hpp"

namespace nagata {

/// A family of point subsets together with the scale s it was built for and the diameter bound D
/// it claims. `colors` is either empty or holds one color per member.
struct CoverFamily {
  std::vector<PointSet> members;
  double scale = 0.0;
  double bound = 0.0;
  std::vector<int> colors;

  bool colored() const noexcept { return !colors.empty(); }
  int color_count() const noexcept {
    int m = 0;
    for (int c : colors) m = std::max(m, c + 1);
    return m;
  }
  std::vector<PointSet> color_class(int k) const {
    std::vector<PointSet> out;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (colors.at(i) == k) out.push_back(members[i]);
    return out;
  }
};

/// First point of the space not contained in any member, if any.
inline std::optional<std::size_t> uncovered_point(std::size_t n, const std::vector<PointSet>& members) {
  std::vector<char> hit(n, 0);
  for (const auto& m : members)
    for (std::size_t i : m)
      if (i < n) hit[i] = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (!hit[i]) return i;
  return std::nullopt;
}

inline double max_member_diameter(const FiniteMetricSpace& space, const std::vector<PointSet>& members) {
  double best = 0.0;
  for (const auto& m : members) best = std::max(best, set_diameter(space, m));
  return best;
}

// ---------------------------------------------------------------------------
// Multiplicity

/// Multiplicity value together with a witnessing subset E.
struct Multiplicity {
  std::size_t value = 0;
  PointSet witness;
};

/// A family has s-multiplicity at most 1 iff no two distinct members come within distance s of
/// each other (the two-point set {x, y} has diameter d(x, y)). Returns the first offending pair of
/// member indices, exact at any size.
inline std::optional<std::pair<std::size_t, std::size_t>> separation_witness(
    const FiniteMetricSpace& space, const std::vector<PointSet>& members, double s) {
  for (std::size_t a = 0; a < members.size(); ++a) {
    if (members[a].empty()) continue;
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (members[b].empty()) continue;
      if (set_distance(space, members[a], members[b]) <= s) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

inline constexpr std::size_t kDefaultExactBudget = 64;

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline void bits_or(Bits& a, const Bits& b) {
  for (std::size_t w = 0; w < a.size(); ++w) a[w] |= b[w];
}
inline std::size_t bits_count(const Bits& a) {
  std::size_t c = 0;
  for (auto w : a) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

// Branch-and-bound over cliques of the graph {d <= s}; a clique is exactly a subset of diameter
// <= s. The objective (members met) is monotone, so only maximal cliques are enumerated
// (Bron-Kerbosch with pivoting) and subtrees whose optimistic union cannot beat the incumbent are
// cut.
class CliqueSearch {
 public:
  CliqueSearch(const FiniteMetricSpace& space, const std::vector<PointSet>& members, double s)
      : n_(space.size()), words_((members.size() + 63) / 64), adj_(n_, 0), hits_(n_, Bits(words_, 0)) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (i != j && space(i, j) <= s) adj_[i] |= (std::uint64_t{1} << j);
    for (std::size_t m = 0; m < members.size(); ++m)
      for (std::size_t x : members[m]) hits_[x][m / 64] |= (std::uint64_t{1} << (m % 64));
  }

  Multiplicity run() {
    const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
    Bits empty(words_, 0);
    expand(empty, 0, all, 0);
    Multiplicity out;
    out.value = best_;
    std::vector<std::size_t> w;
    for (std::size_t i = 0; i < n_; ++i)
      if (best_set_ >> i & 1) w.push_back(i);
    out.witness = PointSet(std::move(w));
    return out;
  }

 private:
  void expand(const Bits& met, std::uint64_t clique, std::uint64_t cand, std::uint64_t excl) {
    const std::size_t here = bits_count(met);
    if (here > best_) {
      best_ = here;
      best_set_ = clique;
    }
    if (cand == 0) return;
    Bits optimistic = met;
    for (std::uint64_t c = cand; c; c &= c - 1) bits_or(optimistic, hits_[std::countr_zero(c)]);
    if (bits_count(optimistic) <= best_) return;

    std::size_t pivot = 0;
    int pivot_deg = -1;
    for (std::uint64_t c = cand | excl; c; c &= c - 1) {
      const auto u = static_cast<std::size_t>(std::countr_zero(c));
      const int deg = std::popcount(cand & adj_[u]);
      if (deg > pivot_deg) {
        pivot_deg = deg;
        pivot = u;
      }
    }
    for (std::uint64_t c = cand & ~adj_[pivot]; c; c &= c - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(c));
      Bits next = met;
      bits_or(next, hits_[v]);
      expand(next, clique | (std::uint64_t{1} << v), cand & adj_[v], excl & adj_[v]);
      cand &= ~(std::uint64_t{1} << v);
      excl |= (std::uint64_t{1} << v);
    }
  }

  std::size_t n_, words_;
  std::vector<std::uint64_t> adj_;
  std::vector<Bits> hits_;
  std::size_t best_ = 0;
  std::uint64_t best_set_ = 0;
};

}  // namespace detail

/// Exact s-multiplicity: the largest number of members met by a subset of diameter <= s.
/// Refuses spaces larger than `budget` points (at most 64); use the ball surrogate there.
inline Multiplicity exact_multiplicity(const FiniteMetricSpace& space, const std::vector<PointSet>& members,
                                       double s, std::size_t budget = kDefaultExactBudget) {
  budget = std::min<std::size_t>(budget, 64);
  if (space.size() > budget) {
    std::ostringstream msg;
    msg << "exact multiplicity refused: " << space.size() << " points exceed the budget of " << budget
        << "; use the ball surrogate";
    throw CapacityError(msg.str());
  }
  if (space.empty() || members.empty()) return {};
  return detail::CliqueSearch(space, members, s).run();
}

inline std::size_t s_multiplicity_exact(const FiniteMetricSpace& space, const CoverFamily& cover, double s,
                                        std::size_t budget = kDefaultExactBudget) {
  return exact_multiplicity(space, cover.members, s, budget).value;
}

/// Ball surrogate: the largest number of members met by a closed ball B(x, s). Sandwiched as
/// exact(s) <= ball(s) <= exact(2s).
inline Multiplicity ball_multiplicity(const FiniteMetricSpace& space, const std::vector<PointSet>& members,
                                      double s) {
  Multiplicity out;
  for (std::size_t x = 0; x < space.size(); ++x) {
    std::size_t count = 0;
    for (const auto& m : members)
      if (!m.empty() && point_set_distance(space, x, m) <= s) ++count;
    if (count > out.value || out.witness.empty()) {
      out.value = std::max(out.value, count);
      out.witness = closed_ball(space, x, s);
    }
  }
  return out;
}

inline std::size_t s_multiplicity_ball(const FiniteMetricSpace& space, const CoverFamily& cover, double s) {
  return ball_multiplicity(space, cover.members, s).value;
}

enum class CheckMode { kExact, kBall, kAuto };

inline const char* check_mode_name(CheckMode m) {
  switch (m) {
    case CheckMode::kExact: return "exact";
    case CheckMode::kBall: return "ball";
    case CheckMode::kAuto: return "auto";
  }
  return "auto";
}

/// An upper bound on the s-multiplicity and the method that produced it. "exact" is the true value;
/// "ball" is the surrogate; "colors" means every color class passed the pairwise separation test.
struct CertifiedMultiplicity {
  std::size_t value = 0;
  std::string method;
  PointSet witness;
};

/// Picks the exact oracle within the point budget and the tightest available certified upper
/// bound above it.
inline CertifiedMultiplicity certified_multiplicity(const FiniteMetricSpace& space, const CoverFamily& cover,
                                                    double s, CheckMode mode = CheckMode::kAuto,
                                                    std::size_t budget = kDefaultExactBudget) {
  if (mode == CheckMode::kExact || (mode == CheckMode::kAuto && space.size() <= std::min<std::size_t>(budget, 64))) {
    auto m = exact_multiplicity(space, cover.members, s, budget);
    return {m.value, "exact", m.witness};
  }
  auto ball = ball_multiplicity(space, cover.members, s);
  CertifiedMultiplicity out{ball.value, "ball", ball.witness};
  if (mode == CheckMode::kAuto && cover.colored()) {
    bool classes_ok = true;
    for (int k = 0; k < cover.color_count() && classes_ok; ++k)
      classes_ok = !separation_witness(space, cover.color_class(k), s).has_value();
    if (classes_ok && static_cast<std::size_t>(cover.color_count()) < out.value)
      out = {static_cast<std::size_t>(cover.color_count()), "colors", {}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Doubling covering

struct DoublingCover {
  CoverFamily cover;
  std::vector<std::size_t> centers;  // net in admission order; member i is B(centers[i], s)
  int colors_used = 0;
};

/// Closed balls B(z, s) around a greedy s-separated net, greedily colored in net order so that
/// centers with 0 < d <= 3s differ. Each color class then has s-multiplicity at most 1.
inline DoublingCover doubling_cover(const FiniteMetricSpace& space, double s,
                                    std::span<const std::size_t> order = {}) {
  DoublingCover out;
  out.centers = greedy_net(space, s, order);
  out.cover.scale = s;
  out.cover.bound = 2.0 * s;
  const double conflict = 3.0 * s;
  for (std::size_t a = 0; a < out.centers.size(); ++a) {
    const std::size_t z = out.centers[a];
    out.cover.members.push_back(closed_ball(space, z, s));
    std::vector<char> used(out.centers.size() + 1, 0);
    for (std::size_t b = 0; b < a; ++b) {
      const double dz = space(z, out.centers[b]);
      if (dz > 0.0 && dz <= conflict) used[static_cast<std::size_t>(out.cover.colors[b])] = 1;
    }
    int color = 0;
    while (used[static_cast<std::size_t>(color)]) ++color;
    out.cover.colors.push_back(color);
    out.colors_used = std::max(out.colors_used, color + 1);
  }
  return out;
}

/// Max-norm product of two colored coverings: members A_i x B_j with color cA * nB + cB, where nB
/// is the color count of `b`. Indices follow nagata::product.
inline CoverFamily product_cover(const CoverFamily& a, const CoverFamily& b, std::size_t nb_points) {
  CoverFamily out;
  out.scale = std::min(a.scale, b.scale);
  out.bound = std::max(a.bound, b.bound);
  const int nb = std::max(1, b.color_count());
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    for (std::size_t j = 0; j < b.members.size(); ++j) {
      std::vector<std::size_t> idx;
      for (std::size_t x : a.members[i])
        for (std::size_t y : b.members[j]) idx.push_back(x * nb_points + y);
      out.members.emplace_back(std::move(idx));
      out.colors.push_back((a.colored() ? a.colors[i] : 0) * nb + (b.colored() ? b.colors[j] : 0));
    }
  }
  return out;
}

/// Consecutive half-open intervals [k w, (k+1) w) of the line, colored k mod 2, restricted to the
/// given coordinates. Members are returned in increasing k; empty intervals are dropped.
inline CoverFamily interval_cover(std::span<const double> coords, double width, double scale) {
  if (!(width > 0.0)) throw ParameterError("interval width must be positive");
  CoverFamily out;
  out.scale = scale;
  out.bound = width;
  std::vector<std::pair<long long, std::size_t>> keyed;
  for (std::size_t i = 0; i < coords.size(); ++i)
    keyed.emplace_back(static_cast<long long>(std::floor(coords[i] / width)), i);
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t a = 0; a < keyed.size();) {
    std::size_t b = a;
    std::vector<std::size_t> idx;
    while (b < keyed.size() && keyed[b].first == keyed[a].first) idx.push_back(keyed[b++].second);
    out.members.emplace_back(std::move(idx));
    out.colors.push_back(static_cast<int>(((keyed[a].first % 2) + 2) % 2));
    a = b;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Union merge

struct MergeResult {
  CoverFamily cover;
  std::vector<std::size_t> isolated;     // indices k of coverD kept as their own member (the set L)
  std::vector<std::size_t> attached_to;  // per k in coverD: j(k), or kNoIndex when k is in L
  double diameter_bound = 0.0;           // c(3+2c)s + 2(1+c)s
  double measured_diameter = 0.0;
  CertifiedMultiplicity multiplicity;
};

/// Merges a covering of Y with a covering of Z into a covering of X = Y u Z.
/// Requirements: `cover_z` is cs-bounded with s-multiplicity <= n+1 on Z, `cover_y` is
/// c(3+2c)s-bounded with (3+2c)s-multiplicity <= n+1 on Y. Members are point sets of `space`.
/// Each member of cover_z that comes within s of Y is absorbed into the lowest-indexed member of
/// cover_y it touches; the rest are kept. The output bounds are re-certified on every call.
inline MergeResult merge_union_coverings(const FiniteMetricSpace& space, const CoverFamily& cover_y,
                                         const CoverFamily& cover_z, double s, double c, int n,
                                         CheckMode mode = CheckMode::kAuto,
                                         std::size_t budget = kDefaultExactBudget) {
  if (!(s > 0.0) || !(c > 0.0) || n < 0) throw ParameterError("merge requires s > 0, c > 0, n >= 0");
  const double wide = (3.0 + 2.0 * c) * s;
  const auto limit = static_cast<std::size_t>(n) + 1;
  for (const auto& m : cover_y.members) m.check_range(space.size());
  for (const auto& m : cover_z.members) m.check_range(space.size());

  auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw ContractError("merge precondition violated: " + what);
  };
  {
    const double dz = max_member_diameter(space, cover_z.members);
    const double dy = max_member_diameter(space, cover_y.members);
    std::ostringstream a, b;
    a << "cover of Z has a member of diameter " << dz << " > cs = " << c * s;
    b << "cover of Y has a member of diameter " << dy << " > c(3+2c)s = " << c * wide;
    require(dz <= c * s, a.str());
    require(dy <= c * wide, b.str());
    if (!cover_z.members.empty()) {
      auto mz = certified_multiplicity(space, cover_z, s, mode, budget);
      std::ostringstream w;
      w << "cover of Z has s-multiplicity " << mz.value << " (" << mz.method << ") > n+1 = " << limit;
      require(mz.value <= limit, w.str());
    }
    if (!cover_y.members.empty()) {
      auto my = certified_multiplicity(space, cover_y, wide, mode, budget);
      std::ostringstream w;
      w << "cover of Y has (3+2c)s-multiplicity " << my.value << " (" << my.method << ") > n+1 = " << limit;
      require(my.value <= limit, w.str());
    }
  }

  MergeResult out;
  out.attached_to.assign(cover_z.members.size(), kNoIndex);
  std::vector<PointSet> merged = cover_y.members;
  for (std::size_t k = 0; k < cover_z.members.size(); ++k) {
    const auto& dk = cover_z.members[k];
    for (std::size_t j = 0; j < cover_y.members.size() && out.attached_to[k] == kNoIndex; ++j) {
      const auto& cj = cover_y.members[j];
      if (!dk.empty() && !cj.empty() && set_distance(space, cj, dk) <= s) out.attached_to[k] = j;
    }
    if (out.attached_to[k] == kNoIndex) {
      out.isolated.push_back(k);
    } else {
      auto& target = merged[out.attached_to[k]];
      target = target.united(dk);
    }
  }
  for (std::size_t k : out.isolated) merged.push_back(cover_z.members[k]);

  out.cover.members = std::move(merged);
  out.cover.scale = s;
  out.diameter_bound = c * wide + 2.0 * (1.0 + c) * s;
  out.cover.bound = out.diameter_bound;
  out.measured_diameter = max_member_diameter(space, out.cover.members);
  out.multiplicity = certified_multiplicity(space, out.cover, s, mode, budget);
  if (out.measured_diameter > out.diameter_bound || out.multiplicity.value > limit) {
    std::ostringstream msg;
    msg << "merged covering failed its bounds: diameter " << out.measured_diameter << " vs "
        << out.diameter_bound << ", multiplicity " << out.multiplicity.value << " vs " << limit;
    throw InvariantError(msg.str());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Single-color coverings and the profile estimator

/// Smallest D such that a D-bounded covering with s-multiplicity <= 1 exists. Such a covering is
/// a partition whose blocks are unions of connected components of the graph {d <= s}, so the
/// optimum is the largest component diameter.
inline double single_color_min_bound(const FiniteMetricSpace& space, double s) {
  const std::size_t n = space.size();
  std::vector<std::size_t> comp(n, kNoIndex);
  double best = 0.0;
  for (std::size_t root = 0; root < n; ++root) {
    if (comp[root] != kNoIndex) continue;
    std::vector<std::size_t> stack{root}, members;
    comp[root] = root;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (std::size_t v = 0; v < n; ++v) {
        if (comp[v] == kNoIndex && space(u, v) <= s) {
          comp[v] = root;
          stack.push_back(v);
        }
      }
    }
    best = std::max(best, set_diameter(space, PointSet(std::move(members))));
  }
  return best;
}

/// Smallest c such that a cs-bounded covering with s-multiplicity <= 1 exists at every scale
/// s >= s_floor. Between consecutive distance values the optimal D is constant, so the supremum
/// of D(s)/s is attained at s_floor or at a distance value.
inline double single_color_min_constant(const FiniteMetricSpace& space, double s_floor) {
  if (!(s_floor > 0.0)) throw ParameterError("scale floor must be positive");
  std::vector<double> scales{s_floor};
  for (double v : space.flat())
    if (v >= s_floor) scales.push_back(v);
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
  double best = 0.0;
  for (double s : scales) best = std::max(best, single_color_min_bound(space, s) / s);
  return best;
}

struct ProfileRecord {
  double scale = 0.0;
  int colors = 0;
  double nominal_c = 0.0;   // D / s with D the certified bound of the covering used
  double measured_c = 0.0;  // largest member diameter / s
  bool feasible = true;     // false when no covering within the color cap was found
};

/// For each scale, the fewest colors over the supplied orders (index order if none) of the
/// doubling covering, with its achieved constant. With `max_colors` set, scales needing more colors
/// fall back to the optimal single-color covering when the cap is 1 and are reported infeasible
/// otherwise. The result is an upper-bound certificate, not the Nagata dimension.
inline std::vector<ProfileRecord> estimate_nagata_profile(const FiniteMetricSpace& space,
                                                          std::span<const double> scales,
                                                          std::optional<int> max_colors = {},
                                                          const std::vector<std::vector<std::size_t>>& orders = {}) {
  std::vector<ProfileRecord> out;
  for (double s : scales) {
    if (!(s > 0.0)) throw ParameterError("profile scales must be positive");
    ProfileRecord rec;
    rec.scale = s;
    rec.colors = -1;
    auto consider = [&](std::span<const std::size_t> order) {
      auto dc = doubling_cover(space, s, order);
      if (rec.colors < 0 || dc.colors_used < rec.colors) {
        rec.colors = dc.colors_used;
        rec.nominal_c = dc.cover.bound / s;
        rec.measured_c = max_member_diameter(space, dc.cover.members) / s;
      }
    };
    if (orders.empty()) consider({});
    for (const auto& o : orders) consider(o);
    if (max_colors && rec.colors > *max_colors) {
      if (*max_colors == 1) {
        rec.colors = 1;
        rec.measured_c = rec.nominal_c = single_color_min_bound(space, s) / s;
      } else {
        rec.feasible = false;
      }
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace nagata

#endif  // NAGATA_COVERING_HPP
