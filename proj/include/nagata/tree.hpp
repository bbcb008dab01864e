#ifndef NAGATA_TREE_HPP
#define NAGATA_TREE_HPP

// Metric trees assembled from glued intervals. Node u is a copy of [0, length_u]; a non-root node
// has its 0 glued to the point `offset` of its parent's interval.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "metric.hpp"

namespace nagata {

struct TreePoint {
  std::size_t node = 0;
  double offset = 0.0;

  friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

struct TreeNode {
  double length = 0.0;
  std::size_t parent = kNoIndex;
  double offset = 0.0;  // attachment point on the parent's interval
};

class MetricTree {
 public:
  std::size_t add_node(double length) {
    if (!(length >= 0.0)) throw ParameterError("interval length must be nonnegative");
    nodes_.push_back({length, kNoIndex, 0.0});
    return nodes_.size() - 1;
  }

  void attach(std::size_t child, std::size_t parent, double offset) {
    if (child >= nodes_.size() || parent >= nodes_.size()) throw ParameterError("attach: node out of range");
    if (child == parent) throw ParameterError("attach: a node cannot be its own parent");
    if (nodes_[child].parent != kNoIndex) throw ParameterError("attach: node already has a parent");
    for (std::size_t u = parent; u != kNoIndex; u = nodes_[u].parent)
      if (u == child) throw ParameterError("attach: would create a cycle");
    nodes_[child].parent = parent;
    nodes_[child].offset = offset;
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  const TreeNode& node(std::size_t u) const { return nodes_.at(u); }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }

  std::vector<std::size_t> roots() const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < nodes_.size(); ++u)
      if (nodes_[u].parent == kNoIndex) out.push_back(u);
    return out;
  }

  bool contains(const TreePoint& p) const noexcept {
    return p.node < nodes_.size() && p.offset >= 0.0 && p.offset <= nodes_[p.node].length;
  }

  /// Path-metric distance: both points climb toward the root until they meet on a common interval.
  double distance(const TreePoint& a, const TreePoint& b) const {
    if (!contains(a) || !contains(b)) throw ParameterError("tree point outside its interval");
    struct Stop {
      std::size_t node;
      double pos, cost;
    };
    std::vector<Stop> up;
    double cost = 0.0;
    for (TreePoint p = a;;) {
      up.push_back({p.node, p.offset, cost});
      const TreeNode& n = nodes_[p.node];
      if (n.parent == kNoIndex) break;
      cost += p.offset;
      p = {n.parent, n.offset};
    }
    cost = 0.0;
    for (TreePoint p = b;;) {
      for (const Stop& s : up)
        if (s.node == p.node) return s.cost + cost + std::fabs(s.pos - p.offset);
      const TreeNode& n = nodes_[p.node];
      if (n.parent == kNoIndex) break;
      cost += p.offset;
      p = {n.parent, n.offset};
    }
    throw ParameterError("tree points lie in different components");
  }

  /// Structural problems: offsets outside the parent's interval, negative lengths. Acyclicity and
  /// the single-parent rule are enforced by attach().
  std::vector<std::string> check_invariants() const {
    std::vector<std::string> problems;
    for (std::size_t u = 0; u < nodes_.size(); ++u) {
      const TreeNode& n = nodes_[u];
      if (!(n.length >= 0.0)) problems.push_back("node " + std::to_string(u) + " has negative length");
      if (n.parent != kNoIndex && !(n.offset >= 0.0 && n.offset <= nodes_[n.parent].length)) {
        std::ostringstream w;
        w << "node " << u << " is attached at offset " << n.offset << " outside [0, " << nodes_[n.parent].length
          << "] of node " << n.parent;
        problems.push_back(w.str());
      }
    }
    return problems;
  }

 private:
  std::vector<TreeNode> nodes_;
};

/// d(a, b) in a tree; same as tree.distance(a, b).
inline double tree_distance(const MetricTree& tree, const TreePoint& a, const TreePoint& b) {
  return tree.distance(a, b);
}

}  // namespace nagata

#endif  // NAGATA_TREE_HPP
