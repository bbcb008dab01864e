#ifndef NAGATA_REDUCTION_HPP
#define NAGATA_REDUCTION_HPP

// Covering transfer along a 1-Lipschitz map f: X -> Y with a contraction h(x, t), and its
// instantiation on finite samples of metric trees with f = distance to a root.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "covering.hpp"
#include "tree.hpp"

namespace nagata {

struct TransferResult {
  CoverFamily cover;
  std::vector<std::size_t> anchors;  // y_j per member of the Y-covering (kNoIndex when X^j is empty)
  std::vector<std::size_t> source;   // member j of the Y-covering per output member
  double t = 0.0;                    // mu (2 lambda c + 1) s
  double c_tilde = 0.0;              // 2 (lambda c + mu (2 lambda c + 1))
  double measured_diameter = 0.0;
  CertifiedMultiplicity multiplicity;
};

namespace detail {

inline double transfer_constant(double lambda, double mu, double c) {
  return 2.0 * (lambda * c + mu * (2.0 * lambda * c + 1.0));
}

// Groups each X^j by key and appends the classes; members are sorted by smallest point.
template <class Key>
void append_classes(CoverFamily& out, std::vector<std::size_t>& source, std::size_t j,
                    const std::vector<std::pair<Key, std::size_t>>& keyed) {
  std::map<Key, std::vector<std::size_t>> classes;
  for (const auto& [key, x] : keyed) classes[key].push_back(x);
  std::vector<PointSet> found;
  for (auto& [key, pts] : classes) found.emplace_back(std::move(pts));
  std::sort(found.begin(), found.end(), [](const PointSet& a, const PointSet& b) { return a.front() < b.front(); });
  for (auto& m : found) {
    out.members.push_back(std::move(m));
    source.push_back(j);
  }
}

inline void certify_transfer(const FiniteMetricSpace& x_space, TransferResult& res, double s, int n,
                             CheckMode mode, std::size_t budget) {
  res.measured_diameter = max_member_diameter(x_space, res.cover.members);
  res.multiplicity = certified_multiplicity(x_space, res.cover, s, mode, budget);
  const double bound = res.c_tilde * s;
  if (res.measured_diameter > bound || res.multiplicity.value > static_cast<std::size_t>(n + 1)) {
    std::ostringstream msg;
    msg << "transferred covering fails its bounds: diameter " << res.measured_diameter << " (bound " << bound
        << "), " << res.multiplicity.method << " multiplicity " << res.multiplicity.value << " (bound " << n + 1
        << ")";
    throw InvariantError(msg.str());
  }
}

}  // namespace detail

/// Transfers `cover_y` (cs-bounded, s-multiplicity <= n+1 on Y) to X. `f[x]` is the index of f(x)
/// in Y and must be 1-Lipschitz; h(x, t) returns an equality-comparable, ordered key identifying the
/// point h(x, t). For member C_j the anchor y_j in C_j minimizes the largest distance from X^j to
/// the fiber f^{-1}{y}; pi^j(x) is the nearest fiber point (lowest index on ties) and must lie
/// within lambda c s. Classes of x ~ x' iff h(pi^j(x), t) = h(pi^j(x'), t) form the output.
template <class H>
TransferResult transfer_covering(const FiniteMetricSpace& x_space, const FiniteMetricSpace& y_space,
                                 const std::vector<std::size_t>& f, H&& h, double lambda, double mu,
                                 const CoverFamily& cover_y, double s, double c, int n,
                                 CheckMode mode = CheckMode::kAuto, std::size_t budget = kDefaultExactBudget) {
  using Key = std::decay_t<decltype(h(std::size_t{0}, 0.0))>;
  if (!(lambda > 0.0 && mu > 0.0 && s > 0.0 && c > 0.0) || n < 0)
    throw ParameterError("transfer requires lambda, mu, s, c > 0 and n >= 0");
  if (f.size() != x_space.size()) throw ParameterError("f must map every point of X");
  for (std::size_t y : f)
    if (y >= y_space.size()) throw ParameterError("f maps outside Y");
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = a + 1; b < f.size(); ++b)
      if (y_space(f[a], f[b]) > x_space(a, b) * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "f is not 1-Lipschitz on the pair (" << a << ", " << b << ")";
        throw ContractError(msg.str());
      }

  TransferResult res;
  res.t = mu * (2.0 * lambda * c + 1.0) * s;
  res.c_tilde = detail::transfer_constant(lambda, mu, c);
  res.cover.scale = s;
  res.cover.bound = res.c_tilde * s;

  std::vector<std::vector<std::size_t>> fiber(y_space.size());
  for (std::size_t x = 0; x < f.size(); ++x) fiber[f[x]].push_back(x);
  auto nearest = [&](std::size_t x, std::size_t y) {
    std::size_t best = kNoIndex;
    for (std::size_t v : fiber[y])
      if (best == kNoIndex || x_space(x, v) < x_space(x, best)) best = v;
    return best;
  };

  for (std::size_t j = 0; j < cover_y.members.size(); ++j) {
    const PointSet& cj = cover_y.members[j];
    std::vector<std::size_t> xj;
    for (std::size_t x = 0; x < f.size(); ++x)
      if (cj.contains(f[x])) xj.push_back(x);
    if (xj.empty()) {
      res.anchors.push_back(kNoIndex);
      continue;
    }
    std::size_t anchor = kNoIndex;
    double anchor_cost = kInfinity;
    for (std::size_t y : cj) {
      if (fiber[y].empty()) continue;
      double cost = 0.0;
      for (std::size_t x : xj) cost = std::max(cost, x_space(x, nearest(x, y)));
      if (cost < anchor_cost) {
        anchor_cost = cost;
        anchor = y;
      }
    }
    if (anchor == kNoIndex || anchor_cost > lambda * c * s) {
      std::ostringstream msg;
      msg << "member " << j << " of the Y-covering has no anchor within lambda c s = " << lambda * c * s;
      throw ContractError(msg.str());
    }
    res.anchors.push_back(anchor);
    std::vector<std::pair<Key, std::size_t>> keyed;
    for (std::size_t x : xj) keyed.emplace_back(h(nearest(x, anchor), res.t), x);
    detail::append_classes(res.cover, res.source, j, keyed);
  }
  detail::certify_transfer(x_space, res, s, n, mode, budget);
  return res;
}

// ---------------------------------------------------------------------------
// Trees

/// Exact location on a tree: offsets at 0 of non-root intervals are pushed to the parent, so
/// equal points have equal keys.
struct TreeKey {
  std::size_t node = 0;
  double offset = 0.0;

  friend auto operator<=>(const TreeKey&, const TreeKey&) = default;
};

inline TreeKey canonical(const MetricTree& tree, TreePoint p) {
  while (p.offset == 0.0 && tree.node(p.node).parent != kNoIndex) p = {tree.node(p.node).parent, tree.node(p.node).offset};
  return {p.node, p.offset};
}

/// The geodesic from `from` to `to` as pieces of single intervals.
struct TreeGeodesic {
  struct Piece {
    std::size_t node;
    double start, end;
  };
  std::vector<Piece> pieces;

  double length() const {
    double acc = 0.0;
    for (const auto& p : pieces) acc += std::fabs(p.end - p.start);
    return acc;
  }

  /// The point at distance `h` from the start (clamped to the end), taking the first piece that
  /// reaches h.
  TreePoint at(double h) const {
    double done = 0.0;
    for (const auto& p : pieces) {
      const double len = std::fabs(p.end - p.start);
      if (done + len >= h) {
        const double step = h - done;
        return {p.node, p.end >= p.start ? p.start + step : p.start - step};
      }
      done += len;
    }
    return {pieces.back().node, pieces.back().end};
  }
};

inline TreeGeodesic geodesic(const MetricTree& tree, TreePoint from, TreePoint to) {
  if (!tree.contains(from) || !tree.contains(to)) throw ParameterError("tree point outside its interval");
  std::vector<TreePoint> up_to;  // entry points of `to`'s chain, bottom to top
  for (TreePoint p = to;;) {
    up_to.push_back(p);
    const auto& n = tree.node(p.node);
    if (n.parent == kNoIndex) break;
    p = {n.parent, n.offset};
  }
  TreeGeodesic g;
  for (TreePoint p = from;;) {
    auto hit = std::find_if(up_to.begin(), up_to.end(), [&](const TreePoint& q) { return q.node == p.node; });
    if (hit != up_to.end()) {
      g.pieces.push_back({p.node, p.offset, hit->offset});
      for (auto it = std::make_reverse_iterator(hit); it != up_to.rend(); ++it) g.pieces.push_back({it->node, 0.0, it->offset});
      return g;
    }
    const auto& n = tree.node(p.node);
    if (n.parent == kNoIndex) break;
    g.pieces.push_back({p.node, p.offset, 0.0});
    p = {n.parent, n.offset};
  }
  throw ParameterError("tree points lie in different components");
}

/// h(x, t): the point at distance min(t, d(x, root)) from x toward the root, as a key.
inline TreeKey slide_toward(const MetricTree& tree, TreePoint root, TreePoint x, double t) {
  const auto g = geodesic(tree, root, x);
  return canonical(tree, g.at(std::max(g.length() - t, 0.0)));
}

struct TreeReductionResult {
  FiniteMetricSpace sample_space;
  std::vector<double> heights;       // f(x) = d(x, root)
  CoverFamily interval_cover;        // [k cs, (k+1) cs) on the heights
  TransferResult transfer;
  std::vector<TreeKey> keys;         // class key per sample point
};

/// Covers the sample with s-multiplicity <= 2 and diameter <= (4c + 1) s using lambda = 1 and
/// mu = 1/2: heights are cut into half-open intervals of length cs (c >= 1), and within interval
/// k the points are grouped by the point at height max(k cs - t, 0) on their root geodesic.
inline TreeReductionResult tree_reduction(const MetricTree& tree, const std::vector<TreePoint>& sample,
                                          TreePoint root, double s, double c,
                                          CheckMode mode = CheckMode::kAuto,
                                          std::size_t budget = kDefaultExactBudget) {
  if (!tree.contains(root)) throw ParameterError("root is not a point of the tree");
  if (!(s > 0.0)) throw ParameterError("scale must be positive");
  if (!(c >= 1.0)) throw ParameterError("tree reduction needs c >= 1 so that intervals of length cs have s-multiplicity <= 2");
  if (sample.empty()) throw ParameterError("sample must be non-empty");
  const std::size_t m = sample.size();
  std::vector<double> flat(m * m, 0.0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) flat[a * m + b] = flat[b * m + a] = tree.distance(sample[a], sample[b]);

  const double lambda = 1.0, mu = 0.5;
  TreeReductionResult out{FiniteMetricSpace(m, std::move(flat)), {}, {}, {}, {}};
  std::vector<TreeGeodesic> paths;
  for (const auto& x : sample) {
    paths.push_back(geodesic(tree, root, x));
    out.heights.push_back(paths.back().length());
  }
  out.interval_cover = interval_cover(out.heights, c * s, s);
  out.keys.assign(m, {});

  auto& res = out.transfer;
  res.t = mu * (2.0 * lambda * c + 1.0) * s;
  res.c_tilde = detail::transfer_constant(lambda, mu, c);
  res.cover.scale = s;
  res.cover.bound = res.c_tilde * s;
  for (std::size_t j = 0; j < out.interval_cover.members.size(); ++j) {
    const PointSet& xj = out.interval_cover.members[j];
    const double y = std::floor(out.heights[xj.front()] / (c * s)) * c * s;  // inf of the interval
    res.anchors.push_back(j);
    std::vector<std::pair<TreeKey, std::size_t>> keyed;
    for (std::size_t x : xj) {
      out.keys[x] = canonical(tree, paths[x].at(std::max(y - res.t, 0.0)));
      keyed.emplace_back(out.keys[x], x);
    }
    detail::append_classes(res.cover, res.source, j, keyed);
  }
  detail::certify_transfer(out.sample_space, res, s, 1, mode, budget);
  return out;
}

struct ConditionReport {
  std::size_t pairs_checked = 0;
  std::vector<std::string> violations;
};

/// Checks f(x) = f(x') and t >= mu d(x, x') => h(x, t) = h(x', t) with mu = 1/2 on all sample pairs
/// of equal height, for t in {mu d, (mu d + f) / 2, f}. Keys that differ are reported only when the
/// two points are more than `tol` (1 + f) apart in the tree.
inline ConditionReport check_condition_iii(const MetricTree& tree, const std::vector<TreePoint>& sample, TreePoint root,
                                           double tol = 1e-9) {
  ConditionReport rep;
  std::vector<double> height;
  for (const auto& x : sample) height.push_back(tree.distance(root, x));
  for (std::size_t a = 0; a < sample.size(); ++a) {
    for (std::size_t b = a + 1; b < sample.size(); ++b) {
      if (height[a] != height[b]) continue;
      const double d = tree.distance(sample[a], sample[b]);
      const double f = height[a];
      for (double t : {0.5 * d, 0.5 * (0.5 * d + f), f}) {
        ++rep.pairs_checked;
        const TreeKey ka = slide_toward(tree, root, sample[a], t);
        const TreeKey kb = slide_toward(tree, root, sample[b], t);
        if (ka == kb) continue;
        const double gap = tree.distance({ka.node, ka.offset}, {kb.node, kb.offset});
        if (gap > tol * (1.0 + f)) {
          std::ostringstream w;
          w << "sample points " << a << " and " << b << " at height " << f << " separate at t = " << t << " (gap "
            << gap << ")";
          rep.violations.push_back(w.str());
        }
      }
    }
  }
  return rep;
}

}  // namespace nagata

#endif  // NAGATA_REDUCTION_HPP
