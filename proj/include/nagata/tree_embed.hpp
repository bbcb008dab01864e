#ifndef NAGATA_TREE_EMBED_HPP
#define NAGATA_TREE_EMBED_HPP

// Embedding of the snowflake (X, d^p) into a product of metric trees, one per color of a
// hierarchical covering, with certification of the two-sided distance bounds.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hierarchy.hpp"
#include "tree.hpp"

namespace nagata {

/// Position of a set inside a hierarchy.
struct SetRef {
  int level = 0;
  std::size_t index = 0;

  friend bool operator==(const SetRef&, const SetRef&) = default;
};

/// The immediate-successor relation B < C of one color: B inside C at a strictly higher level with
/// no set of an intermediate level between them. parent[node] is kNoIndex for maximal sets.
struct PrecedesRelation {
  std::vector<SetRef> nodes;          // all sets of the color, ordered by level then index
  std::vector<std::size_t> parent;    // immediate successor per node
  std::vector<std::vector<std::size_t>> children;

  std::size_t find(SetRef ref) const {
    for (std::size_t u = 0; u < nodes.size(); ++u)
      if (nodes[u] == ref) return u;
    return kNoIndex;
  }
};

/// One relation per color. Two sets of the same color and level are disjoint, so the superset at
/// the lowest level above B is unique in a valid hierarchy; anything else raises InvariantError.
inline std::vector<PrecedesRelation> precedes(const HierarchicalCovering& h) {
  std::vector<PrecedesRelation> out(static_cast<std::size_t>(h.colors));
  for (int k = 0; k < h.colors; ++k) {
    auto& rel = out[static_cast<std::size_t>(k)];
    for (int j = h.j_min; j <= h.j_max; ++j)
      for (std::size_t a = 0; a < h.family(j, k).size(); ++a) rel.nodes.push_back({j, a});
    rel.parent.assign(rel.nodes.size(), kNoIndex);
    rel.children.assign(rel.nodes.size(), {});
    for (std::size_t u = 0; u < rel.nodes.size(); ++u) {
      const auto& ref = rel.nodes[u];
      const PointSet& b = h.family(ref.level, k)[ref.index];
      for (int j = ref.level + 1; j <= h.j_max && rel.parent[u] == kNoIndex; ++j) {
        std::size_t hits = 0;
        for (std::size_t a = 0; a < h.family(j, k).size(); ++a) {
          if (!b.is_subset_of(h.family(j, k)[a])) continue;
          ++hits;
          rel.parent[u] = rel.find({j, a});
        }
        if (hits > 1) {
          std::ostringstream msg;
          msg << "color " << k << ": set " << ref.index << " of level " << ref.level << " has " << hits
              << " immediate successors at level " << j;
          throw InvariantError(msg.str());
        }
      }
      if (rel.parent[u] != kNoIndex) rel.children[rel.parent[u]].push_back(u);
    }
  }
  return out;
}

/// The chain pseudometric d_{C,p}: the largest pseudometric below d^p that vanishes on each
/// child B < C. Evaluated as a shortest path whose interior vertices are the children, with edge
/// weights (set distance)^p.
class ChainMetric {
 public:
  ChainMetric(const FiniteMetricSpace& space, PointSet set, std::vector<PointSet> children, double p)
      : space_(&space), set_(std::move(set)), children_(std::move(children)), p_(p) {
    if (!(p > 0.0 && p <= 1.0)) throw ParameterError("exponent must lie in (0, 1]");
    const std::size_t m = children_.size(), n = space.size();
    point_to_child_.assign(n * m, 0.0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t b = 0; b < m; ++b)
        point_to_child_[x * m + b] = pw(point_set_distance(space, x, children_[b]));
    graph_.assign(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        graph_[a * m + b] = a == b ? 0.0 : pw(set_distance(space, children_[a], children_[b]));
    for (std::size_t via = 0; via < m; ++via)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          graph_[a * m + b] = std::min(graph_[a * m + b], graph_[a * m + via] + graph_[via * m + b]);

    // Distance from each child to the complement of the set.
    child_exit_.assign(m, kInfinity);
    std::vector<double> direct(m, kInfinity);
    for (std::size_t y = 0; y < n; ++y) {
      if (set_.contains(y)) continue;
      for (std::size_t b = 0; b < m; ++b) direct[b] = std::min(direct[b], point_to_child_[y * m + b]);
    }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) child_exit_[a] = std::min(child_exit_[a], graph_[a * m + b] + direct[b]);
  }

  const PointSet& set() const noexcept { return set_; }
  const std::vector<PointSet>& children() const noexcept { return children_; }
  double exponent() const noexcept { return p_; }

  /// d_{C,p}(x, y) for x, y in C.
  double operator()(std::size_t x, std::size_t y) const {
    if (!set_.contains(x) || !set_.contains(y)) throw ParameterError("chain metric arguments must lie in the set");
    return between(x, y);
  }

  /// d_{C,p}(x, y) for arbitrary points of the space.
  double between(std::size_t x, std::size_t y) const {
    const std::size_t m = children_.size();
    double best = pw((*space_)(x, y));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        best = std::min(best, point_to_child_[x * m + a] + graph_[a * m + b] + point_to_child_[y * m + b]);
    return best;
  }

  /// d_{C,p}(x, X \ C); +inf when C is the whole space.
  double to_complement(std::size_t x) const {
    const std::size_t m = children_.size();
    double best = kInfinity;
    for (std::size_t y = 0; y < space_->size(); ++y)
      if (!set_.contains(y)) best = std::min(best, pw((*space_)(x, y)));
    for (std::size_t b = 0; b < m; ++b) best = std::min(best, point_to_child_[x * m + b] + child_exit_[b]);
    return best;
  }

  /// d_{C,p}(B, X \ C) for the child with the given index.
  double child_to_complement(std::size_t b) const { return child_exit_.at(b); }

 private:
  double pw(double v) const { return p_ == 1.0 ? v : std::pow(v, p_); }

  const FiniteMetricSpace* space_;
  PointSet set_;
  std::vector<PointSet> children_;
  double p_;
  std::vector<double> point_to_child_;  // [x * m + b] = d(x, B_b)^p
  std::vector<double> graph_;           // all-pairs chain distances between children
  std::vector<double> child_exit_;
};

/// Largest exponent for which the chain lower bound holds: log 2 / log(2 + c).
inline double exponent_guard(double c) { return std::log(2.0) / std::log(2.0 + c); }

/// tau_C = max{0, min{t, r^{pj}} - r^{p(j-1)}} applied to t = d_{C,p}(., X \ C).
inline double clipped_height(double to_complement, double r, double p, int level) {
  const double top = std::pow(r, p * level);
  const double bottom = std::pow(r, p * (level - 1));
  return std::max(0.0, std::min(to_complement, top) - bottom);
}

/// tau_C(x) for x in C at the given level.
inline double tau(const ChainMetric& metric, int level, double r, std::size_t x) {
  if (!metric.set().contains(x)) throw ParameterError("tau is defined on the set only");
  return clipped_height(metric.to_complement(x), r, metric.exponent(), level);
}

struct LowerBoundViolation {
  std::size_t x = 0, y = 0;
  double chain = 0.0, bound = 0.0;
};

struct LowerBoundReport {
  std::size_t pairs_checked = 0;
  std::vector<LowerBoundViolation> violations;
};

/// Checks d_{C,p}(x, y) >= (c+1)^{-p} (d(x, y) - c r^{j-1})^p for x in C, y anywhere, whenever
/// d(x, y) >= c r^{j-1}. Relative tolerance `rel_tol`.
inline LowerBoundReport lower_bound_check(const FiniteMetricSpace& space, const ChainMetric& metric, int level,
                                          double r, double c, double rel_tol = 1e-9) {
  const double p = metric.exponent();
  if (p > exponent_guard(c)) {
    std::ostringstream msg;
    msg << "exponent " << p << " exceeds the guard log 2 / log(2 + c) = " << exponent_guard(c);
    throw ParameterError(msg.str());
  }
  LowerBoundReport rep;
  const double gap = c * std::pow(r, level - 1);
  for (std::size_t x : metric.set()) {
    for (std::size_t y = 0; y < space.size(); ++y) {
      if (space(x, y) < gap || x == y) continue;
      ++rep.pairs_checked;
      const double bound = std::pow(c + 1.0, -p) * std::pow(space(x, y) - gap, p);
      const double chain = metric.between(x, y);
      if (chain < bound * (1.0 - rel_tol)) rep.violations.push_back({x, y, chain, bound});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Trees

/// Trees, node bookkeeping and images f_k(x) for every color.
struct TreeEmbedding {
  double p = 0.0;
  double r = 0.0;
  std::vector<MetricTree> trees;
  std::vector<PrecedesRelation> relations;   // node u of trees[k] is relations[k].nodes[u]
  std::vector<std::vector<TreePoint>> images;  // [k][x]
  std::vector<std::vector<std::size_t>> home;  // [k][x]: minimal-level node containing x
  std::vector<std::size_t> virtual_root;       // per color, kNoIndex when the tree is connected
};

/// Assembles one tree per color. Node C is a copy of [0, max tau_C], each B < C is glued at
/// tau_C(B), and f_k(x) = tau_C(x) on the interval of the minimal-level set C containing x. Colors
/// whose sets have several maximal elements get a zero-length virtual root.
inline TreeEmbedding build_trees(const FiniteMetricSpace& space, const HierarchicalCovering& h, double p) {
  if (p > exponent_guard(h.c)) {
    std::ostringstream msg;
    msg << "exponent " << p << " exceeds the guard log 2 / log(2 + c) = " << exponent_guard(h.c);
    throw ParameterError(msg.str());
  }
  TreeEmbedding out;
  out.p = p;
  out.r = h.r;
  out.relations = precedes(h);
  const std::size_t n = space.size();
  for (int k = 0; k < h.colors; ++k) {
    const auto& rel = out.relations[static_cast<std::size_t>(k)];
    MetricTree tree;
    std::vector<double> attach_at(rel.nodes.size(), 0.0);
    std::vector<std::vector<double>> heights(rel.nodes.size());
    for (std::size_t u = 0; u < rel.nodes.size(); ++u) {
      const auto& ref = rel.nodes[u];
      const PointSet& set = h.family(ref.level, k)[ref.index];
      std::vector<PointSet> kids;
      for (std::size_t v : rel.children[u]) kids.push_back(h.family(rel.nodes[v].level, k)[rel.nodes[v].index]);
      ChainMetric metric(space, set, std::move(kids), p);
      double length = 0.0;
      for (std::size_t x : set) {
        heights[u].push_back(tau(metric, ref.level, h.r, x));
        length = std::max(length, heights[u].back());
      }
      for (std::size_t b = 0; b < rel.children[u].size(); ++b) {
        const double at = clipped_height(metric.child_to_complement(b), h.r, p, ref.level);
        attach_at[rel.children[u][b]] = at;
        length = std::max(length, at);
      }
      tree.add_node(length);
    }
    for (std::size_t u = 0; u < rel.nodes.size(); ++u)
      if (rel.parent[u] != kNoIndex) tree.attach(u, rel.parent[u], attach_at[u]);

    auto roots = tree.roots();
    std::size_t vroot = kNoIndex;
    if (roots.size() > 1) {
      vroot = tree.add_node(0.0);
      for (std::size_t u : roots) tree.attach(u, vroot, 0.0);
    }

    std::vector<TreePoint> img(n);
    std::vector<std::size_t> home(n, kNoIndex);
    for (std::size_t u = 0; u < rel.nodes.size(); ++u) {  // nodes are sorted by level
      const PointSet& set = h.family(rel.nodes[u].level, k)[rel.nodes[u].index];
      for (std::size_t a = 0; a < set.size(); ++a) {
        const std::size_t x = set[a];
        if (home[x] != kNoIndex) {
          if (rel.nodes[home[x]].level == rel.nodes[u].level)
            throw InvariantError("point lies in two sets of the same level and color");
          continue;
        }
        home[x] = u;
        img[x] = {u, heights[u][a]};
      }
    }
    for (std::size_t x = 0; x < n; ++x)
      if (home[x] == kNoIndex) throw InvariantError("color " + std::to_string(k) + " does not cover point " + std::to_string(x));

    out.trees.push_back(std::move(tree));
    out.images.push_back(std::move(img));
    out.home.push_back(std::move(home));
    out.virtual_root.push_back(vroot);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Embedding and certification

/// Upper-bound constant of each coordinate map: 1 + (r^p / (r^p - 1)) (1 + r^p).
inline double coordinate_upper_constant(double r, double p) {
  const double rp = std::pow(r, p);
  return 1.0 + rp / (rp - 1.0) * (1.0 + rp);
}

/// Lower-bound constant c^{-p} r^{-2p} (((r - c)/(c + 1))^p - 1).
inline double embedding_lower_constant(double r, double p, double c) {
  return std::pow(c, -p) * std::pow(r, -2.0 * p) * (std::pow((r - c) / (c + 1.0), p) - 1.0);
}

/// Multiplier applied to the coordinate upper constant for the chosen product norm.
inline double norm_factor(ProductNorm norm, std::size_t factors) {
  switch (norm) {
    case ProductNorm::kMax: return 1.0;
    case ProductNorm::kEuclidean: return std::sqrt(static_cast<double>(factors));
    case ProductNorm::kSum: return static_cast<double>(factors);
  }
  return 1.0;
}

inline const char* norm_name(ProductNorm norm) {
  switch (norm) {
    case ProductNorm::kMax: return "max";
    case ProductNorm::kEuclidean: return "l2";
    case ProductNorm::kSum: return "l1";
  }
  return "max";
}

/// Smallest integer base accepted by embed(): at least 5c' + 6 for the hierarchy and 2c + 2 so
/// that (r - c)/(c + 1) > 1 and the lower constant is positive.
inline double embedding_min_base(double c_prime) {
  const double c = 5.0 * c_prime + 4.0;
  return std::max(hierarchy_min_base(c_prime), std::floor(2.0 * c + 1.0) + 1.0);
}

/// Default exponent min(0.99 log 2 / log(2 + c), 1/2).
inline double default_exponent(double c) { return std::min(0.99 * exponent_guard(c), 0.5); }

struct EmbeddingReport {
  ProductNorm norm = ProductNorm::kMax;
  double p = 0.0, r = 0.0, c = 0.0;
  double upper_constant = 0.0;  // K_up, already multiplied by the norm factor
  double coordinate_upper = 0.0;
  double lower_constant = 0.0;  // K_low
  double distortion = 0.0;      // K_up / K_low
  std::vector<double> per_coordinate_lipschitz;
  double min_ratio = kInfinity, max_ratio = 0.0;  // d_prod / d^p over pairs
  std::size_t pairs = 0;
  std::size_t virtual_roots = 0;
  std::size_t displacement_checks = 0;
  std::size_t positivity_checks = 0;
  std::size_t lower_bound_pairs = 0;  // chain lower-bound checks over all sets
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty(); }
  double measured_distortion() const { return max_ratio / min_ratio; }
};

struct EmbedResult {
  HierarchicalCovering hierarchy;
  TreeEmbedding embedding;
  EmbeddingReport report;
  std::vector<double> product_distances;  // row-major n x n
};

struct EmbedOptions {
  std::optional<double> p;
  ProductNorm norm = ProductNorm::kMax;
  double rel_tol = 1e-9;
  bool throw_on_failure = true;
  HierarchyOptions hierarchy;
};

namespace detail {

// Distance from f_k(x) up to z_C for an ancestor node C of x's home node.
inline double climb_to(const TreeEmbedding& te, int k, std::size_t x, std::size_t target) {
  const auto& tree = te.trees[static_cast<std::size_t>(k)];
  return tree.distance(te.images[static_cast<std::size_t>(k)][x], {target, 0.0});
}

}  // namespace detail

/// Certifies the per-pair bounds K_low d^p <= d_prod <= K_up d^p, the per-coordinate Lipschitz
/// bound, chain displacement and positivity-trigger bounds, the chain lower bound on every set and
/// the tree invariants. Failures are collected in the report.
inline EmbeddingReport certify_embedding(const FiniteMetricSpace& space, const HierarchicalCovering& h,
                                         const TreeEmbedding& te, ProductNorm norm, double rel_tol,
                                         std::vector<double>* product_out = nullptr) {
  EmbeddingReport rep;
  const std::size_t n = space.size();
  const int colors = h.colors;
  const double p = te.p, r = h.r;
  rep.norm = norm;
  rep.p = p;
  rep.r = r;
  rep.c = h.c;
  rep.coordinate_upper = coordinate_upper_constant(r, p);
  rep.upper_constant = rep.coordinate_upper * norm_factor(norm, static_cast<std::size_t>(colors));
  rep.lower_constant = embedding_lower_constant(r, p, h.c);
  rep.distortion = rep.upper_constant / rep.lower_constant;
  rep.per_coordinate_lipschitz.assign(static_cast<std::size_t>(colors), 0.0);
  auto fail = [&](const std::string& w) {
    if (rep.failures.size() < 64) rep.failures.push_back(w);
  };
  if (!(rep.lower_constant <= rep.upper_constant)) fail("lower constant exceeds upper constant");

  for (int k = 0; k < colors; ++k) {
    const auto& tree = te.trees[static_cast<std::size_t>(k)];
    for (const auto& prob : tree.check_invariants()) fail("tree " + std::to_string(k) + ": " + prob);
    if (te.virtual_root[static_cast<std::size_t>(k)] != kNoIndex) ++rep.virtual_roots;
  }

  // Chain lower bound on every set of every color.
  for (int k = 0; k < colors; ++k) {
    const auto& rel = te.relations[static_cast<std::size_t>(k)];
    for (std::size_t u = 0; u < rel.nodes.size(); ++u) {
      std::vector<PointSet> kids;
      for (std::size_t v : rel.children[u]) kids.push_back(h.family(rel.nodes[v].level, k)[rel.nodes[v].index]);
      ChainMetric metric(space, h.family(rel.nodes[u].level, k)[rel.nodes[u].index], std::move(kids), p);
      auto lb = lower_bound_check(space, metric, rel.nodes[u].level, r, h.c, rel_tol);
      rep.lower_bound_pairs += lb.pairs_checked;
      for (const auto& v : lb.violations) {
        std::ostringstream w;
        w << "chain lower bound: color " << k << " level " << rel.nodes[u].level << " pair (" << v.x << ", " << v.y
          << ") has d_Cp " << v.chain << " < " << v.bound;
        fail(w.str());
      }
    }
  }

  // Displacement: d(f_k(x), z_C) <= r^p/(r^p-1) r^{p j} for every ancestor C of x's home set.
  const double rp = std::pow(r, p);
  const double geometric = rp / (rp - 1.0);
  for (int k = 0; k < colors; ++k) {
    const auto& rel = te.relations[static_cast<std::size_t>(k)];
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t u = te.home[static_cast<std::size_t>(k)][x]; u != kNoIndex; u = rel.parent[u]) {
        ++rep.displacement_checks;
        const double moved = detail::climb_to(te, k, x, u);
        const double bound = geometric * std::pow(r, p * rel.nodes[u].level);
        if (moved > bound * (1.0 + rel_tol)) {
          std::ostringstream w;
          w << "displacement: color " << k << " point " << x << " is " << moved << " from the base of level "
            << rel.nodes[u].level << " set " << rel.nodes[u].index << ", bound " << bound;
          fail(w.str());
        }
      }
    }
  }

  std::vector<double> prod(n * n, 0.0);
  std::vector<double> coord(static_cast<std::size_t>(colors));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double dp = std::pow(space(x, y), p);
      for (int k = 0; k < colors; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        coord[kk] = te.trees[kk].distance(te.images[kk][x], te.images[kk][y]);
        rep.per_coordinate_lipschitz[kk] = std::max(rep.per_coordinate_lipschitz[kk], coord[kk] / dp);
        if (coord[kk] > rep.coordinate_upper * dp * (1.0 + rel_tol)) {
          std::ostringstream w;
          w << "coordinate " << k << " pair (" << x << ", " << y << "): tree distance " << coord[kk] << " > "
            << rep.coordinate_upper << " d^p = " << rep.coordinate_upper * dp;
          fail(w.str());
        }

        // Positivity trigger along the chains below the smallest common set.
        const auto& rel = te.relations[kk];
        const auto& home = te.home[kk];
        std::vector<std::size_t> above_x;
        for (std::size_t u = home[x]; u != kNoIndex; u = rel.parent[u]) above_x.push_back(u);
        std::size_t common = kNoIndex;
        for (std::size_t u = home[y]; u != kNoIndex && common == kNoIndex; u = rel.parent[u])
          if (std::find(above_x.begin(), above_x.end(), u) != above_x.end()) common = u;
        for (std::size_t start : {home[x], home[y]}) {
          for (std::size_t u = start; u != common && u != kNoIndex && rel.parent[u] != common; u = rel.parent[u]) {
            const std::size_t up = rel.parent[u];
            if (up == kNoIndex) break;
            if (te.trees[kk].node(u).offset > 0.0) {
              ++rep.positivity_checks;
              const double trigger = std::pow(r, p * (rel.nodes[up].level - 1));
              if (trigger > dp * (1.0 + rel_tol)) {
                std::ostringstream w;
                w << "positivity trigger: color " << k << " pair (" << x << ", " << y << ") set at level "
                  << rel.nodes[up].level << " has a positive offset but r^{p(j-1)} = " << trigger << " > d^p = " << dp;
                fail(w.str());
              }
            }
          }
        }
      }
      double d = 0.0;
      switch (norm) {
        case ProductNorm::kMax:
          for (double v : coord) d = std::max(d, v);
          break;
        case ProductNorm::kEuclidean:
          for (double v : coord) d += v * v;
          d = std::sqrt(d);
          break;
        case ProductNorm::kSum:
          for (double v : coord) d += v;
          break;
      }
      prod[x * n + y] = prod[y * n + x] = d;
      ++rep.pairs;
      const double ratio = d / dp;
      rep.min_ratio = std::min(rep.min_ratio, ratio);
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      if (d > rep.upper_constant * dp * (1.0 + rel_tol) || d < rep.lower_constant * dp * (1.0 - rel_tol)) {
        std::ostringstream w;
        w << "pair (" << x << ", " << y << "): product distance " << d << " outside [" << rep.lower_constant * dp
          << ", " << rep.upper_constant * dp << "]";
        fail(w.str());
      }
    }
  }
  if (rep.pairs == 0) rep.min_ratio = rep.max_ratio = 0.0;
  if (product_out) *product_out = std::move(prod);
  return rep;
}

/// Full pipeline: hierarchy, trees, certification. Requires r >= max(5c' + 6, 2c + 1) strictly above
/// 2c + 1 and p <= log 2 / log(2 + c), with c = 5c' + 4.
inline EmbedResult embed(const FiniteMetricSpace& space, double c_prime, double r, const EmbedOptions& opts = {}) {
  const double c = 5.0 * c_prime + 4.0;
  const double p = opts.p.value_or(default_exponent(c));
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("exponent must lie in (0, 1]");
  if (p > exponent_guard(c)) {
    std::ostringstream msg;
    msg << "exponent " << p << " exceeds the guard log 2 / log(2 + c) = " << exponent_guard(c) << " for c = " << c;
    throw ParameterError(msg.str());
  }
  if (!(r >= hierarchy_min_base(c_prime)) || !(std::pow((r - c) / (c + 1.0), p) > 1.0)) {
    std::ostringstream msg;
    msg << "base r = " << r << " is too small: need r >= 5c'+6 = " << hierarchy_min_base(c_prime)
        << " and r > 2c+1 = " << 2.0 * c + 1.0 << " for a positive lower constant";
    throw ParameterError(msg.str());
  }
  EmbedResult res;
  res.hierarchy = build_hierarchy(space, c_prime, r, opts.hierarchy);
  res.embedding = build_trees(space, res.hierarchy, p);
  res.report = certify_embedding(space, res.hierarchy, res.embedding, opts.norm, opts.rel_tol, &res.product_distances);
  if (opts.throw_on_failure && !res.report.passed()) {
    throw CertificationError("embedding certification failed: " + res.report.failures.front());
  }
  return res;
}

}  // namespace nagata

#endif  // NAGATA_TREE_EMBED_HPP
