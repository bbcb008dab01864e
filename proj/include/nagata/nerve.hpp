#ifndef NAGATA_NERVE_HPP
#define NAGATA_NERVE_HPP

// Bump functions of a covering and the induced nerve coordinates.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "covering.hpp"

namespace nagata {

/// sigma_i(x) = max{0, r/2 - d(x, B_i)}, stored densely as members x points.
struct PartitionOfUnity {
  std::size_t members = 0;
  std::size_t points = 0;
  double r = 0.0;
  double floor = 0.0;
  std::vector<double> bumps;  // row-major: bumps[i * points + x]

  double operator()(std::size_t i, std::size_t x) const noexcept { return bumps[i * points + x]; }
  double total(std::size_t x) const noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < members; ++i) acc += (*this)(i, x);
    return acc;
  }
  std::size_t support_count(std::size_t x) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < members; ++i) c += (*this)(i, x) > 0.0 ? 1 : 0;
    return c;
  }
};

inline PartitionOfUnity build_bumps(const FiniteMetricSpace& space, const CoverFamily& cover, double r) {
  if (!(r > 0.0)) throw ParameterError("bump radius must be positive");
  if (auto miss = uncovered_point(space.size(), cover.members)) {
    throw ParameterError("cover does not contain point " + std::to_string(*miss));
  }
  PartitionOfUnity pou;
  pou.members = cover.members.size();
  pou.points = space.size();
  pou.r = r;
  pou.floor = r / 2.0;
  pou.bumps.resize(pou.members * pou.points);
  for (std::size_t i = 0; i < pou.members; ++i)
    for (std::size_t x = 0; x < pou.points; ++x)
      pou.bumps[i * pou.points + x] = std::max(0.0, r / 2.0 - point_set_distance(space, x, cover.members[i]));
  return pou;
}

using SparseVector = std::vector<std::pair<std::size_t, double>>;

/// v_i = mass * sigma_i(x) / sigma_bar(x), nonzero entries only, in member order.
inline SparseVector nerve_coordinates(const PartitionOfUnity& pou, std::size_t x, double mass) {
  const double total = pou.total(x);
  if (!(total >= pou.floor)) throw InvariantError("bump sum below its floor at point " + std::to_string(x));
  SparseVector v;
  for (std::size_t i = 0; i < pou.members; ++i)
    if (pou(i, x) > 0.0) v.emplace_back(i, mass * pou(i, x) / total);
  return v;
}

inline double sparse_distance(const SparseVector& a, const SparseVector& b) {
  double acc = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      acc += a[i].second * a[i].second;
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      acc += b[j].second * b[j].second;
      ++j;
    } else {
      const double diff = a[i].second - b[j].second;
      acc += diff * diff;
      ++i;
      ++j;
    }
  }
  return std::sqrt(acc);
}

/// Largest |v(x) - v(x')|_2 / d(x, x') over all pairs for the mass-1 coordinate map.
inline double coordinate_lipschitz(const FiniteMetricSpace& space, const PartitionOfUnity& pou) {
  std::vector<SparseVector> coords;
  coords.reserve(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) coords.push_back(nerve_coordinates(pou, x, 1.0));
  double best = 0.0;
  for (std::size_t x = 0; x < space.size(); ++x)
    for (std::size_t y = x + 1; y < space.size(); ++y)
      if (space(x, y) > 0.0) best = std::max(best, sparse_distance(coords[x], coords[y]) / space(x, y));
  return best;
}

/// Scale lambda making x -> lambda r sigma(x) / sigma_bar(x) 1-Lipschitz on this instance:
/// lambda = 1 / (r L) with L the measured constant of the mass-1 map. Returns +inf when L = 0.
inline double nerve_lambda(const FiniteMetricSpace& space, const PartitionOfUnity& pou) {
  const double lip = coordinate_lipschitz(space, pou);
  return lip > 0.0 ? 1.0 / (pou.r * lip) : kInfinity;
}

/// Diameter of {x : sigma_i(x) > 0} per member.
inline std::vector<double> star_preimage_diameters(const FiniteMetricSpace& space, const PartitionOfUnity& pou) {
  std::vector<double> out(pou.members, 0.0);
  for (std::size_t i = 0; i < pou.members; ++i) {
    std::vector<std::size_t> support;
    for (std::size_t x = 0; x < pou.points; ++x)
      if (pou(i, x) > 0.0) support.push_back(x);
    out[i] = set_diameter(space, PointSet(std::move(support)));
  }
  return out;
}

}  // namespace nagata

#endif  // NAGATA_NERVE_HPP
