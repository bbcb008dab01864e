#ifndef NAGATA_HIERARCHY_HPP
#define NAGATA_HIERARCHY_HPP

// Hierarchical colored coverings: per level j and color k a family B^j_k such that
//   (i)   B^j_k is c r^j-bounded with r^j-multiplicity <= 1,
//   (ii)  every closed ball B(x, r^j) lies in some member of level j,
//   (iii) every color has a member containing the whole space,
//   (iv)  for B in B^i_k, C in B^j_k, i < j: B is inside C or farther than r^i from it.
// Built from per-level doubling coverings by inflation and hat-closure.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "covering.hpp"

namespace nagata {

/// Edge C > B of the chain relation used in hat-closures: both in color `color`, C at `upper_level`
/// and B at `lower_level` < upper_level, and some pair of points within 3 r^lower_level.
struct ChainEdge {
  int color = 0;
  int upper_level = 0;
  std::size_t upper_index = 0;
  int lower_level = 0;
  std::size_t lower_index = 0;
};

struct HierarchicalCovering {
  double r = 0.0;
  double c_prime = 0.0;
  double c = 0.0;
  int j_min = 0;
  int j_max = 0;
  int colors = 0;
  std::size_t basepoint = 0;
  std::size_t points = 0;
  // families[j - j_min][k]
  std::vector<std::vector<std::vector<PointSet>>> families;
  std::vector<ChainEdge> chains;

  int level_count() const noexcept { return j_max - j_min + 1; }
  double scale(int j) const { return std::pow(r, j); }
  const std::vector<PointSet>& family(int j, int k) const {
    return families.at(static_cast<std::size_t>(j - j_min)).at(static_cast<std::size_t>(k));
  }
  std::vector<PointSet>& family(int j, int k) {
    return families.at(static_cast<std::size_t>(j - j_min)).at(static_cast<std::size_t>(k));
  }
};

struct HierarchyReport {
  bool bounded_separated = true;  // (i)
  bool ball_containment = true;   // (ii)
  bool absorbs_space = true;      // (iii)
  bool nested_or_far = true;      // (iv)
  double measured_c = 0.0;        // max over members of diam / r^j
  std::vector<std::string> witnesses;

  bool ok() const noexcept { return bounded_separated && ball_containment && absorbs_space && nested_or_far; }
};

/// Exhaustive verification of (i)-(iv). The multiplicity part of (i) is decided exactly by the
/// pairwise separation test, which is exact for the question "at most 1" at any size.
inline HierarchyReport check_hierarchy(const FiniteMetricSpace& space, const HierarchicalCovering& h) {
  HierarchyReport rep;
  const std::size_t n = space.size();
  auto note = [&](bool& flag, const std::string& w) {
    flag = false;
    if (rep.witnesses.size() < 32) rep.witnesses.push_back(w);
  };

  for (int j = h.j_min; j <= h.j_max; ++j) {
    const double rj = h.scale(j);
    for (int k = 0; k < h.colors; ++k) {
      const auto& fam = h.family(j, k);
      for (std::size_t a = 0; a < fam.size(); ++a) {
        const double diam = set_diameter(space, fam[a]);
        rep.measured_c = std::max(rep.measured_c, diam / rj);
        if (diam > h.c * rj) {
          std::ostringstream w;
          w << "(i) level " << j << " color " << k << " member " << a << " has diameter " << diam
            << " > c r^j = " << h.c * rj;
          note(rep.bounded_separated, w.str());
        }
      }
      if (auto pair = separation_witness(space, fam, rj)) {
        std::ostringstream w;
        w << "(i) level " << j << " color " << k << " members " << pair->first << " and " << pair->second
          << " are within r^j = " << rj;
        note(rep.bounded_separated, w.str());
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      const PointSet ball = closed_ball(space, x, rj);
      bool found = false;
      for (int k = 0; k < h.colors && !found; ++k)
        for (const auto& m : h.family(j, k))
          if (ball.is_subset_of(m)) {
            found = true;
            break;
          }
      if (!found) {
        std::ostringstream w;
        w << "(ii) level " << j << ": no member contains the ball of radius r^j around point " << x;
        note(rep.ball_containment, w.str());
      }
    }
  }

  for (int k = 0; k < h.colors; ++k) {
    bool found = false;
    for (int j = h.j_min; j <= h.j_max && !found; ++j)
      for (const auto& m : h.family(j, k))
        if (m.size() == n) {
          found = true;
          break;
        }
    if (!found) {
      std::ostringstream w;
      w << "(iii) color " << k << " has no member containing the whole space";
      note(rep.absorbs_space, w.str());
    }
  }

  for (int k = 0; k < h.colors; ++k) {
    for (int i = h.j_min; i <= h.j_max; ++i) {
      const double ri = h.scale(i);
      for (int j = i + 1; j <= h.j_max; ++j) {
        const auto& lower = h.family(i, k);
        const auto& upper = h.family(j, k);
        for (std::size_t a = 0; a < lower.size(); ++a) {
          for (std::size_t b = 0; b < upper.size(); ++b) {
            if (lower[a].is_subset_of(upper[b])) continue;
            const double gap = set_distance(space, lower[a], upper[b]);
            if (!(gap > ri)) {
              std::ostringstream w;
              w << "(iv) color " << k << ": member " << a << " of level " << i << " and member " << b
                << " of level " << j << " are neither nested nor farther than r^i = " << ri
                << " (distance " << gap << ")";
              note(rep.nested_or_far, w.str());
            }
          }
        }
      }
    }
  }
  return rep;
}

/// Smallest r accepted by build_hierarchy: 5c' + 6 keeps the geometric radius guard
/// (5c'+5) sum_q r^{j-q} <= r^{j+1}.
inline double hierarchy_min_base(double c_prime) { return 5.0 * c_prime + 6.0; }

/// Default level range: below j_min every member is a singleton and nothing changes; j_max is the
/// first level whose raw covering is a single set.
inline std::pair<int, int> auto_levels(const FiniteMetricSpace& space, double c_prime, double r) {
  if (space.size() < 2) return {0, 0};
  const double c = 5.0 * c_prime + 4.0;
  const int j_min = static_cast<int>(std::floor(std::log(space.min_positive_distance() / c) / std::log(r))) - 1;
  int j_max = j_min;
  while (greedy_net(space, 5.0 * std::pow(r, j_max)).size() > 1) ++j_max;
  return {j_min, j_max};
}

/// Union of each set with every set reachable from it along `edges` (per color, downward in
/// level). Returns the closed families; the input is not modified. Applying it twice with the same
/// edges yields the same result.
inline std::vector<std::vector<std::vector<PointSet>>> hat_closure(
    const std::vector<std::vector<std::vector<PointSet>>>& families, int j_min,
    const std::vector<ChainEdge>& edges) {
  auto closed = families;
  // Edges point strictly downward, so processing levels in increasing order sees every lower
  // set already closed.
  std::vector<const ChainEdge*> sorted;
  for (const auto& e : edges) sorted.push_back(&e);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ChainEdge* a, const ChainEdge* b) { return a->upper_level < b->upper_level; });
  for (const ChainEdge* e : sorted) {
    auto& upper = closed[static_cast<std::size_t>(e->upper_level - j_min)][static_cast<std::size_t>(e->color)]
                        [e->upper_index];
    const auto& lower = closed[static_cast<std::size_t>(e->lower_level - j_min)][static_cast<std::size_t>(e->color)]
                              [e->lower_index];
    upper = upper.united(lower);
  }
  return closed;
}

struct HierarchyOptions {
  std::optional<std::pair<int, int>> levels;
  std::size_t basepoint = 0;
};

/// Builds the hierarchy for constants c' (raw coverings are 5c' r^j-bounded with 5 r^j-multiplicity
/// at most 1 per color) and base r >= 5c' + 6. The result satisfies (i)-(iv) with c = 5c' + 4;
/// a failing self-check raises InvariantError.
inline HierarchicalCovering build_hierarchy(const FiniteMetricSpace& space, double c_prime, double r,
                                            const HierarchyOptions& opts = {}) {
  if (space.empty()) throw ParameterError("hierarchy requires a non-empty space");
  if (!(c_prime > 0.0)) throw ParameterError("c' must be positive");
  if (!(r >= hierarchy_min_base(c_prime))) {
    std::ostringstream msg;
    msg << "base r = " << r << " is below the threshold 5c'+6 = " << hierarchy_min_base(c_prime);
    throw ParameterError(msg.str());
  }
  if (opts.basepoint >= space.size()) throw ParameterError("basepoint out of range");

  HierarchicalCovering h;
  h.r = r;
  h.c_prime = c_prime;
  h.c = 5.0 * c_prime + 4.0;
  h.basepoint = opts.basepoint;
  h.points = space.size();
  std::tie(h.j_min, h.j_max) = opts.levels.value_or(auto_levels(space, c_prime, r));
  if (h.j_max < h.j_min) throw ParameterError("empty level range");
  const std::size_t n = space.size();

  // (a) raw colored coverings at scale 5 r^j.
  std::vector<DoublingCover> raw;
  for (int j = h.j_min; j <= h.j_max; ++j) {
    const double s = 5.0 * h.scale(j);
    raw.push_back(doubling_cover(space, s));
    const double diam = max_member_diameter(space, raw.back().cover.members);
    if (diam > c_prime * s) {
      std::ostringstream msg;
      msg << "c' = " << c_prime << " is too small: the raw covering at level " << j << " has diameter "
          << diam << " > 5c' r^j = " << c_prime * s;
      throw ParameterError(msg.str());
    }
    h.colors = std::max(h.colors, raw.back().colors_used);
  }
  const int n_colors = h.colors;
  const bool top_is_whole = raw.back().cover.members.size() == 1 && raw.back().cover.members[0].size() == n;

  h.families.assign(static_cast<std::size_t>(h.level_count()),
                    std::vector<std::vector<PointSet>>(static_cast<std::size_t>(n_colors)));
  for (int j = h.j_min; j <= h.j_max; ++j) {
    const auto& dc = raw[static_cast<std::size_t>(j - h.j_min)];
    if (j == h.j_max && top_is_whole) {
      for (int k = 0; k < n_colors; ++k) h.family(j, k).push_back(dc.cover.members[0]);
      continue;
    }
    // (b) basepoint normalization: at level j the basepoint lies in a member of color j mod (n+1).
    const int target = ((j % n_colors) + n_colors) % n_colors;
    int base_color = target;
    for (std::size_t m = 0; m < dc.cover.members.size(); ++m)
      if (dc.cover.members[m].contains(h.basepoint)) {
        base_color = dc.cover.colors[m];
        break;
      }
    for (std::size_t m = 0; m < dc.cover.members.size(); ++m) {
      int k = dc.cover.colors[m];
      if (k == base_color) k = target; else if (k == target) k = base_color;
      // (c) inflation by closed r^j-balls.
      h.family(j, k).push_back(closed_neighborhood(space, dc.cover.members[m], h.scale(j)));
    }
  }

  // (d) chain relation on the inflated sets.
  for (int k = 0; k < n_colors; ++k) {
    for (int j = h.j_min; j <= h.j_max; ++j) {
      for (int i = h.j_min; i < j; ++i) {
        const double reach = 3.0 * h.scale(i);
        const auto& upper = h.family(j, k);
        const auto& lower = h.family(i, k);
        for (std::size_t a = 0; a < upper.size(); ++a)
          for (std::size_t b = 0; b < lower.size(); ++b)
            if (set_distance(space, upper[a], lower[b]) <= reach) h.chains.push_back({k, j, a, i, b});
      }
    }
  }

  // (e) hat-closure.
  h.families = hat_closure(h.families, h.j_min, h.chains);

  auto rep = check_hierarchy(space, h);
  if (!rep.ok()) {
    std::ostringstream msg;
    msg << "hierarchy self-check failed";
    for (const auto& w : rep.witnesses) msg << "; " << w;
    throw InvariantError(msg.str());
  }
  return h;
}

}  // namespace nagata

#endif  // NAGATA_HIERARCHY_HPP
