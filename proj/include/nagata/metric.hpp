#ifndef NAGATA_METRIC_HPP
#define NAGATA_METRIC_HPP

// Finite metric spaces, metric transforms and set-distance utilities.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <iterator>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace nagata {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

/// Point set with a dense, row-major distance matrix.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  /// Builds from a square matrix. Only the shape is checked here; use validate() for the axioms.
  explicit FiniteMetricSpace(const std::vector<std::vector<double>>& rows,
                             std::vector<std::string> labels = {})
      : n_(rows.size()), d_(rows.size() * rows.size()), labels_(std::move(labels)) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (rows[i].size() != n_) {
        std::ostringstream msg;
        msg << "distance matrix is not square: row " << i << " has " << rows[i].size()
            << " entries, expected " << n_;
        throw StructuralError(msg.str());
      }
      std::copy(rows[i].begin(), rows[i].end(), d_.begin() + static_cast<std::ptrdiff_t>(i * n_));
    }
    check_labels();
  }

  FiniteMetricSpace(std::size_t n, std::vector<double> flat, std::vector<std::string> labels = {})
      : n_(n), d_(std::move(flat)), labels_(std::move(labels)) {
    if (d_.size() != n_ * n_) throw StructuralError("flat distance matrix has wrong size");
    check_labels();
  }

  /// Euclidean distances between coordinate vectors of equal length.
  static FiniteMetricSpace from_points(const std::vector<std::vector<double>>& points,
                                       std::vector<std::string> labels = {}) {
    const std::size_t n = points.size();
    std::vector<double> flat(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (points[i].size() != points.front().size()) {
        throw StructuralError("points have inconsistent dimensions");
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t a = 0; a < points[i].size(); ++a) {
          const double diff = points[i][a] - points[j][a];
          acc += diff * diff;
        }
        flat[i * n + j] = flat[j * n + i] = std::sqrt(acc);
      }
    }
    return FiniteMetricSpace(n, std::move(flat), std::move(labels));
  }

  /// Points on the real line.
  static FiniteMetricSpace from_line(std::span<const double> coords) {
    const std::size_t n = coords.size();
    std::vector<double> flat(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = std::fabs(coords[i] - coords[j]);
    return FiniteMetricSpace(n, std::move(flat));
  }
  static FiniteMetricSpace from_line(std::initializer_list<double> coords) {
    return from_line(std::span<const double>(coords.begin(), coords.size()));
  }

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  const std::vector<double>& flat() const noexcept { return d_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Entries came verbatim from a file rather than from floating-point arithmetic.
  bool exact_entries() const noexcept { return exact_entries_; }
  void set_exact_entries(bool exact) noexcept { exact_entries_ = exact; }

  double diameter() const noexcept {
    double best = 0.0;
    for (double v : d_) best = std::max(best, v);
    return best;
  }

  /// Smallest off-diagonal positive entry; +inf for spaces with fewer than two points.
  double min_positive_distance() const noexcept {
    double best = kInfinity;
    for (double v : d_)
      if (v > 0.0) best = std::min(best, v);
    return best;
  }

 private:
  void check_labels() const {
    if (!labels_.empty() && labels_.size() != n_) {
      throw StructuralError("label count does not match point count");
    }
  }

  std::size_t n_ = 0;
  std::vector<double> d_;
  std::vector<std::string> labels_;
  bool exact_entries_ = false;
};

/// Sorted, duplicate-free subset of {0..n-1}.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::initializer_list<std::size_t> idx) : idx_(idx) { normalize(); }
  explicit PointSet(std::vector<std::size_t> idx) : idx_(std::move(idx)) { normalize(); }

  static PointSet all(std::size_t n) {
    PointSet s;
    s.idx_.resize(n);
    std::iota(s.idx_.begin(), s.idx_.end(), std::size_t{0});
    return s;
  }

  std::size_t size() const noexcept { return idx_.size(); }
  bool empty() const noexcept { return idx_.empty(); }
  auto begin() const noexcept { return idx_.begin(); }
  auto end() const noexcept { return idx_.end(); }
  std::size_t operator[](std::size_t k) const noexcept { return idx_[k]; }
  std::size_t front() const { return idx_.front(); }
  const std::vector<std::size_t>& indices() const noexcept { return idx_; }

  bool contains(std::size_t i) const noexcept {
    return std::binary_search(idx_.begin(), idx_.end(), i);
  }
  bool is_subset_of(const PointSet& other) const noexcept {
    return std::includes(other.idx_.begin(), other.idx_.end(), idx_.begin(), idx_.end());
  }
  bool intersects(const PointSet& other) const noexcept {
    auto a = idx_.begin();
    auto b = other.idx_.begin();
    while (a != idx_.end() && b != other.idx_.end()) {
      if (*a == *b) return true;
      if (*a < *b) ++a; else ++b;
    }
    return false;
  }
  PointSet united(const PointSet& other) const {
    std::vector<std::size_t> out;
    out.reserve(idx_.size() + other.idx_.size());
    std::set_union(idx_.begin(), idx_.end(), other.idx_.begin(), other.idx_.end(),
                   std::back_inserter(out));
    PointSet s;
    s.idx_ = std::move(out);
    return s;
  }

  void check_range(std::size_t n) const {
    if (!idx_.empty() && idx_.back() >= n) {
      std::ostringstream msg;
      msg << "point index " << idx_.back() << " out of range for a space of " << n << " points";
      throw ParameterError(msg.str());
    }
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;
  friend auto operator<=>(const PointSet&, const PointSet&) = default;

 private:
  void normalize() {
    std::sort(idx_.begin(), idx_.end());
    idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
  }

  std::vector<std::size_t> idx_;
};

// ---------------------------------------------------------------------------
// Validation

enum class Axiom { kSquare, kZeroDiagonal, kSymmetry, kPositivity, kTriangle };

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::kSquare: return "square";
    case Axiom::kZeroDiagonal: return "zero_diagonal";
    case Axiom::kSymmetry: return "symmetry";
    case Axiom::kPositivity: return "positivity";
    case Axiom::kTriangle: return "triangle";
  }
  return "unknown";
}

/// One violated axiom. For the triangle inequality (i, k, j) reads d[i][k] > d[i][j] + d[j][k].
struct Violation {
  Axiom axiom;
  std::size_t i = 0, k = 0, j = 0;
  double lhs = 0.0, rhs = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  double tolerance = 0.0;
  bool ok() const noexcept { return violations.empty(); }
};

/// Tolerance used for the triangle inequality on floating-point matrices.
inline double triangle_tolerance(const FiniteMetricSpace& space) {
  return 1e-9 * (1.0 + space.diameter());
}

/// Checks all metric axioms. Triangle witnesses are reported once per unordered pair {i,k}.
/// `exact` forces zero tolerance; by default it is taken from the space's exact_entries flag.
inline ValidationReport validate(const FiniteMetricSpace& space, std::optional<bool> exact = {}) {
  ValidationReport report;
  const bool use_exact = exact.value_or(space.exact_entries());
  report.tolerance = use_exact ? 0.0 : triangle_tolerance(space);
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (space(i, i) != 0.0) report.violations.push_back({Axiom::kZeroDiagonal, i, i, i, space(i, i), 0.0});
    for (std::size_t k = i + 1; k < n; ++k) {
      if (space(i, k) != space(k, i))
        report.violations.push_back({Axiom::kSymmetry, i, k, k, space(i, k), space(k, i)});
      if (!(space(i, k) > 0.0) || !(space(k, i) > 0.0))
        report.violations.push_back({Axiom::kPositivity, i, k, k, std::min(space(i, k), space(k, i)), 0.0});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double rhs = space(i, j) + space(j, k);
        if (space(i, k) > rhs + report.tolerance)
          report.violations.push_back({Axiom::kTriangle, i, k, j, space(i, k), rhs});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Transforms

/// Entrywise d^p. Requires p in (0, 1]; larger exponents can break the triangle inequality.
inline FiniteMetricSpace snowflake(const FiniteMetricSpace& space, double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "snowflake exponent must lie in (0, 1], got " << p;
    throw ParameterError(msg.str());
  }
  std::vector<double> flat(space.flat());
  if (p != 1.0)
    for (double& v : flat) v = std::pow(v, p);
  return FiniteMetricSpace(space.size(), std::move(flat), space.labels());
}

enum class ProductNorm { kMax, kEuclidean, kSum };

inline double combine(ProductNorm norm, double a, double b) {
  switch (norm) {
    case ProductNorm::kMax: return std::max(a, b);
    case ProductNorm::kEuclidean: return std::hypot(a, b);
    case ProductNorm::kSum: return a + b;
  }
  return std::max(a, b);
}

/// Product space; the pair (a, b) has index a * |B| + b.
inline FiniteMetricSpace product(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                                 ProductNorm norm) {
  const std::size_t na = a.size(), nb = b.size(), n = na * nb;
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      flat[i * n + j] = combine(norm, a(i / nb, j / nb), b(i % nb, j % nb));
  return FiniteMetricSpace(n, std::move(flat));
}

/// Induced metric on a subset; point k of the result is subset[k].
inline FiniteMetricSpace subspace(const FiniteMetricSpace& space, const PointSet& subset) {
  subset.check_range(space.size());
  const std::size_t m = subset.size();
  std::vector<double> flat(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) flat[a * m + b] = space(subset[a], subset[b]);
  return FiniteMetricSpace(m, std::move(flat));
}

// ---------------------------------------------------------------------------
// Set distances

/// d(x, A) = min over a in A; +inf for empty A.
inline double point_set_distance(const FiniteMetricSpace& space, std::size_t x, const PointSet& a) {
  double best = kInfinity;
  for (std::size_t i : a) best = std::min(best, space(x, i));
  return best;
}

/// Smallest pairwise distance between two non-empty sets.
inline double set_distance(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw ParameterError("set_distance requires non-empty sets");
  double best = kInfinity;
  for (std::size_t i : a)
    for (std::size_t j : b) best = std::min(best, space(i, j));
  return best;
}

/// Largest pairwise distance; 0 for the empty set.
inline double set_diameter(const FiniteMetricSpace& space, const PointSet& a) {
  double best = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = x + 1; y < a.size(); ++y) best = std::max(best, space(a[x], a[y]));
  return best;
}

/// Closed ball B(x, radius).
inline PointSet closed_ball(const FiniteMetricSpace& space, std::size_t x, double radius) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (space(x, i) <= radius) idx.push_back(i);
  return PointSet(std::move(idx));
}

/// Closed neighbourhood {y : d(y, A) <= radius}.
inline PointSet closed_neighborhood(const FiniteMetricSpace& space, const PointSet& a,
                                    double radius) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (point_set_distance(space, i, a) <= radius) idx.push_back(i);
  return PointSet(std::move(idx));
}

// ---------------------------------------------------------------------------
// Nets

namespace detail {

inline std::vector<std::size_t> resolve_order(std::size_t n, std::span<const std::size_t> order) {
  std::vector<std::size_t> out;
  if (order.empty()) {
    out.resize(n);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
  }
  if (order.size() != n) throw ParameterError("order must be a permutation of all point indices");
  std::vector<char> seen(n, 0);
  for (std::size_t v : order) {
    if (v >= n || seen[v]) throw ParameterError("order must be a permutation of all point indices");
    seen[v] = 1;
  }
  return {order.begin(), order.end()};
}

}  // namespace detail

/// Greedy s-separated net in admission order: a point is admitted iff it is farther than s from
/// every admitted point. An empty `order` means index order.
inline std::vector<std::size_t> greedy_net(const FiniteMetricSpace& space, double s,
                                           std::span<const std::size_t> order = {}) {
  if (!(s > 0.0)) throw ParameterError("net scale must be positive");
  std::vector<std::size_t> net;
  for (std::size_t x : detail::resolve_order(space.size(), order)) {
    bool separated = true;
    for (std::size_t z : net) {
      if (!(space(x, z) > s)) {
        separated = false;
        break;
      }
    }
    if (separated) net.push_back(x);
  }
  return net;
}

/// Maximal subset whose pairwise distances exceed s.
inline PointSet maximal_separated_net(const FiniteMetricSpace& space, double s,
                                      std::span<const std::size_t> order = {}) {
  return PointSet(greedy_net(space, s, order));
}

}  // namespace nagata

#endif  // NAGATA_METRIC_HPP
