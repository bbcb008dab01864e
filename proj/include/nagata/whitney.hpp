#ifndef NAGATA_WHITNEY_HPP
#define NAGATA_WHITNEY_HPP

// Lipschitz extension of f: Z -> R^dim to the whole space through layers around Z, a layered net,
// a nearest-point retraction, per-layer coverings, merged bump functions and the barycentric nerve
// map.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "covering.hpp"

namespace nagata {

struct ExtensionProblem {
  const FiniteMetricSpace* space = nullptr;
  PointSet z;
  std::vector<std::vector<double>> values;  // values[a] = f(z[a])
  std::size_t dim = 0;
  double lambda = 0.0;                      // measured Lip(f)

  const std::vector<double>& value_at(std::size_t point) const {
    const auto it = std::lower_bound(z.begin(), z.end(), point);
    if (it == z.end() || *it != point) throw ParameterError("point " + std::to_string(point) + " is not in Z");
    return values[static_cast<std::size_t>(it - z.begin())];
  }
};

/// Validates the data and measures lambda = max |f(z) - f(z')|_2 / d(z, z').
inline ExtensionProblem make_problem(const FiniteMetricSpace& space, PointSet z,
                                     std::vector<std::vector<double>> values) {
  if (z.empty()) throw ParameterError("the subset Z must be non-empty");
  z.check_range(space.size());
  if (values.size() != z.size()) throw ParameterError("one value per point of Z is required");
  ExtensionProblem p;
  p.space = &space;
  p.dim = values.front().size();
  if (p.dim == 0) throw ParameterError("values must have dimension at least 1");
  for (const auto& v : values)
    if (v.size() != p.dim) throw ParameterError("all values must have the same dimension");
  for (std::size_t a = 0; a < z.size(); ++a) {
    for (std::size_t b = a + 1; b < z.size(); ++b) {
      double acc = 0.0;
      for (std::size_t t = 0; t < p.dim; ++t) acc += (values[a][t] - values[b][t]) * (values[a][t] - values[b][t]);
      const double d = space(z[a], z[b]);
      if (d > 0.0) p.lambda = std::max(p.lambda, std::sqrt(acc) / d);
    }
  }
  p.z = std::move(z);
  p.values = std::move(values);
  return p;
}

/// One bump sigma^i_k of the merged family: the max of tau^i_k and the tau^{i-1}_j with k_j = k.
struct MergedBump {
  int level = 0;
  std::size_t index = 0;     // k in L_i
  std::size_t anchor = 0;    // x^i_k, lowest index of D^i_k cap N_i
  std::vector<std::size_t> absorbed;  // the j in L_{i-1} with k_j = k
  PointSet support;          // B^i_k = {sigma^i_k > 0}
};

struct WhitneyLayer {
  int level = 0;
  PointSet points;                   // R_i
  PointSet net;                      // N_i
  std::vector<PointSet> d_sets;      // D^i_l in global indices
  std::vector<int> d_colors;
  std::vector<PointSet> centers;     // D^i_l cap N_i
  std::vector<PointSet> c_sets;      // C^i_l = U(D^i_l cap N_i, r^i / 2)
  std::vector<bool> kept;            // l in K_i
  std::vector<std::size_t> target;   // k_l for l not in K_i with C^i_l non-empty, else kNoIndex
};

struct WhitneyStructure {
  double r = 0.0;
  double c = 2.0;        // D^i_l are 2c r^i-bounded
  int colors = 0;        // n + 1
  std::vector<int> layer_of;         // per point; meaningless on Z
  std::vector<WhitneyLayer> layers;  // increasing level, non-empty layers only
  PointSet net;
  std::vector<std::size_t> rho;      // defined on Z and N, kNoIndex elsewhere
  std::vector<MergedBump> bumps;
  std::vector<double> sigma;         // row-major: sigma[a * points + x]
  std::size_t points = 0;
  std::size_t boundary_ties = 0;     // (x, C^i_l) with d(x, D^i_l cap N_i) exactly r^i / 2

  bool empty() const noexcept { return layers.empty(); }
  double sigma_at(std::size_t a, std::size_t x) const { return sigma[a * points + x]; }
  const WhitneyLayer* layer(int level) const {
    for (const auto& l : layers)
      if (l.level == level) return &l;
    return nullptr;
  }
};

/// Smallest r satisfying both layering conditions for the constant c:
/// 2(2c+1) r^{i-1} + r^i <= 2 r^i  and  r^{i+1} - r^i >= r^{i-1}/2 + (2c+1) r^i + r^{i+1}/2,
/// that is r >= 4c + 2 and r^2 - (4c+4) r - 1 >= 0, and r >= 2.
inline double whitney_min_base(double c) {
  const double b = 4.0 * c + 4.0;
  return std::max({2.0, 4.0 * c + 2.0, (b + std::sqrt(b * b + 4.0)) / 2.0});
}

inline bool whitney_conditions_hold(double r, double c) {
  return r >= 2.0 && 2.0 * (2.0 * c + 1.0) / r + 1.0 <= 2.0 &&
         r - 1.0 >= 0.5 / r + (2.0 * c + 1.0) + 0.5 * r;
}

/// Lip(rho) <= 1 + 4r + 4r^2.
inline double retraction_bound(double r) { return 1.0 + 4.0 * r + 4.0 * r * r; }

namespace detail {

// Index i with r^i <= d < r^{i+1}.
inline int layer_index(double d, double r) {
  int i = static_cast<int>(std::floor(std::log(d) / std::log(r)));
  while (std::pow(r, i) > d) --i;
  while (std::pow(r, i + 1) <= d) ++i;
  return i;
}

inline double tau_value(const FiniteMetricSpace& space, std::size_t x, const PointSet& centers, double ri) {
  if (centers.empty()) return 0.0;
  return std::max(0.0, 2.0 - 4.0 / ri * point_set_distance(space, x, centers));
}

inline bool sets_meet(const PointSet& a, const PointSet& b) { return a.intersects(b); }

}  // namespace detail

/// Builds the layered structure. `r` defaults to whitney_min_base(2). Z = X yields an empty
/// structure.
inline WhitneyStructure build_structure(const ExtensionProblem& problem, std::optional<double> base = {}) {
  const FiniteMetricSpace& space = *problem.space;
  const std::size_t n = space.size();
  WhitneyStructure ws;
  ws.c = 2.0;
  ws.r = base.value_or(whitney_min_base(ws.c));
  if (!whitney_conditions_hold(ws.r, ws.c)) {
    std::ostringstream msg;
    msg << "base r = " << ws.r << " violates the layering conditions for c = " << ws.c
        << "; the minimal feasible r is " << whitney_min_base(ws.c);
    throw ParameterError(msg.str());
  }
  ws.points = n;
  ws.layer_of.assign(n, 0);
  ws.rho.assign(n, kNoIndex);
  for (std::size_t z : problem.z) ws.rho[z] = z;
  if (problem.z.size() == n) return ws;

  // Layers.
  std::map<int, std::vector<std::size_t>> by_level;
  std::vector<double> dz(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    if (problem.z.contains(x)) continue;
    dz[x] = point_set_distance(space, x, problem.z);
    if (!(dz[x] > 0.0)) throw StructuralError("point " + std::to_string(x) + " is at distance 0 from Z");
    ws.layer_of[x] = detail::layer_index(dz[x], ws.r);
    by_level[ws.layer_of[x]].push_back(x);
  }

  // Net: greedy in index order, separation r^{min(q,q')}/4 across adjacent layers.
  std::vector<std::size_t> net;
  for (std::size_t x = 0; x < n; ++x) {
    if (problem.z.contains(x)) continue;
    const int q = ws.layer_of[x];
    bool ok = true;
    for (std::size_t y : net) {
      const int q2 = ws.layer_of[y];
      if (std::abs(q - q2) > 1) continue;
      if (space(x, y) < std::pow(ws.r, std::min(q, q2)) / 4.0) {
        ok = false;
        break;
      }
    }
    if (ok) net.push_back(x);
  }
  ws.net = PointSet(net);

  // Nearest-point retraction, lowest index on ties.
  for (std::size_t x : ws.net) {
    std::size_t best = kNoIndex;
    for (std::size_t z : problem.z)
      if (best == kNoIndex || space(x, z) < space(x, best)) best = z;
    ws.rho[x] = best;
  }

  // Per-layer coverings D^i_l and their enlargements C^i_l.
  for (auto& [level, pts] : by_level) {
    WhitneyLayer layer;
    layer.level = level;
    layer.points = PointSet(pts);
    std::vector<std::size_t> nl;
    for (std::size_t x : layer.points)
      if (ws.net.contains(x)) nl.push_back(x);
    layer.net = PointSet(std::move(nl));
    const double ri = std::pow(ws.r, level);
    const auto sub = subspace(space, layer.points);
    const auto dc = doubling_cover(sub, 2.0 * ri);
    ws.colors = std::max(ws.colors, dc.colors_used);
    for (std::size_t m = 0; m < dc.cover.members.size(); ++m) {
      std::vector<std::size_t> global;
      for (std::size_t a : dc.cover.members[m]) global.push_back(layer.points[a]);
      PointSet d_set(std::move(global));
      std::vector<std::size_t> ctr;
      for (std::size_t x : d_set)
        if (layer.net.contains(x)) ctr.push_back(x);
      PointSet centers(std::move(ctr));
      std::vector<std::size_t> open;
      if (!centers.empty()) {
        for (std::size_t x = 0; x < n; ++x) {
          const double d = point_set_distance(space, x, centers);
          if (d < ri / 2.0) open.push_back(x);
          else if (d == ri / 2.0) ++ws.boundary_ties;
        }
      }
      layer.d_sets.push_back(std::move(d_set));
      layer.d_colors.push_back(dc.cover.colors[m]);
      layer.centers.push_back(std::move(centers));
      layer.c_sets.emplace_back(std::move(open));
    }
    ws.layers.push_back(std::move(layer));
  }

  // K_i: non-empty C^i_k meeting no C^{i+1}_l.
  for (auto& layer : ws.layers) {
    const WhitneyLayer* above = ws.layer(layer.level + 1);
    layer.kept.assign(layer.c_sets.size(), false);
    layer.target.assign(layer.c_sets.size(), kNoIndex);
    for (std::size_t k = 0; k < layer.c_sets.size(); ++k) {
      if (layer.c_sets[k].empty()) continue;
      bool meets = false;
      if (above)
        for (const auto& up : above->c_sets) meets = meets || detail::sets_meet(layer.c_sets[k], up);
      layer.kept[k] = !meets;
    }
  }
  // k_j for j not in K_{i-1}: lowest index of L_i whose C meets C^{i-1}_j.
  for (auto& layer : ws.layers) {
    const WhitneyLayer* above = ws.layer(layer.level + 1);
    for (std::size_t j = 0; j < layer.c_sets.size(); ++j) {
      if (layer.kept[j] || layer.c_sets[j].empty()) continue;
      for (std::size_t k = 0; above && k < above->c_sets.size(); ++k) {
        if (!detail::sets_meet(layer.c_sets[j], above->c_sets[k])) continue;
        if (!above->kept[k]) {
          std::ostringstream msg;
          msg << "C^" << layer.level << "_" << j << " meets C^" << above->level << "_" << k
              << ", which meets the next layer; the three-layer condition fails";
          throw InvariantError(msg.str());
        }
        layer.target[j] = k;
        break;
      }
    }
  }

  // Merged bumps over A.
  for (const auto& layer : ws.layers) {
    const WhitneyLayer* below = ws.layer(layer.level - 1);
    for (std::size_t k = 0; k < layer.c_sets.size(); ++k) {
      if (!layer.kept[k]) continue;
      MergedBump b;
      b.level = layer.level;
      b.index = k;
      b.anchor = layer.centers[k].front();
      PointSet support = layer.c_sets[k];
      for (std::size_t j = 0; below && j < below->c_sets.size(); ++j) {
        if (below->target[j] != k) continue;
        b.absorbed.push_back(j);
        support = support.united(below->c_sets[j]);
      }
      b.support = std::move(support);
      ws.bumps.push_back(std::move(b));
    }
  }
  ws.sigma.assign(ws.bumps.size() * n, 0.0);
  for (std::size_t a = 0; a < ws.bumps.size(); ++a) {
    const auto& b = ws.bumps[a];
    const WhitneyLayer& layer = *ws.layer(b.level);
    const WhitneyLayer* below = ws.layer(b.level - 1);
    const double ri = std::pow(ws.r, b.level);
    for (std::size_t x = 0; x < n; ++x) {
      if (problem.z.contains(x)) continue;
      double v = detail::tau_value(space, x, layer.centers[b.index], ri);
      for (std::size_t j : b.absorbed)
        v = std::max(v, detail::tau_value(space, x, below->centers[j], ri / ws.r));
      ws.sigma[a * n + x] = v;
    }
  }
  return ws;
}

struct WhitneyAudit {
  bool layers_partition = true;
  bool net_separated = true;
  bool net_maximal = true;
  bool displacement = true;
  bool coverings_bounded = true;   // D^i_l: 2c r^i-bounded, color classes with 2r^i-multiplicity <= 1
  bool floor = true;               // sigma_bar >= 1 off Z
  bool multiplicity = true;        // #{sigma > 0} <= n + 1 off Z
  bool regularity = true;          // Lip(sigma^i_k) <= 4 r^{-(i-1)}
  bool anchors = true;             // sigma^i_k(x) > 0, x in R_q => d(x, x^i_k) <= (4c+2) r^{q+1}
  bool retraction = true;          // Lip(rho) <= 1 + 4r + 4r^2
  double lip_rho = 0.0;
  double lip_rho_bound = 0.0;
  double min_sigma_bar = kInfinity;
  std::size_t max_multiplicity = 0;
  std::vector<std::string> witnesses;

  bool ok() const noexcept {
    return layers_partition && net_separated && net_maximal && displacement && coverings_bounded && floor &&
           multiplicity && regularity && anchors && retraction;
  }
};

/// Checks every structural invariant exhaustively.
inline WhitneyAudit check_structure(const ExtensionProblem& problem, const WhitneyStructure& ws) {
  const FiniteMetricSpace& space = *problem.space;
  const std::size_t n = space.size();
  WhitneyAudit a;
  a.lip_rho_bound = retraction_bound(ws.r);
  auto note = [&](bool& flag, const std::string& w) {
    flag = false;
    if (a.witnesses.size() < 32) a.witnesses.push_back(w);
  };
  auto in_z = [&](std::size_t x) { return problem.z.contains(x); };
  auto rpow = [&](int i) { return std::pow(ws.r, i); };

  std::vector<int> seen(n, 0);
  for (const auto& layer : ws.layers)
    for (std::size_t x : layer.points) {
      ++seen[x];
      const double d = point_set_distance(space, x, problem.z);
      if (!(rpow(layer.level) <= d && d < rpow(layer.level + 1)))
        note(a.layers_partition, "point " + std::to_string(x) + " is outside the band of layer " +
                                     std::to_string(layer.level));
    }
  for (std::size_t x = 0; x < n; ++x)
    if (!in_z(x) && seen[x] != 1)
      note(a.layers_partition, "point " + std::to_string(x) + " lies in " + std::to_string(seen[x]) + " layers");

  for (std::size_t u = 0; u < ws.net.size(); ++u) {
    for (std::size_t v = u + 1; v < ws.net.size(); ++v) {
      const std::size_t x = ws.net[u], y = ws.net[v];
      const int q = ws.layer_of[x], q2 = ws.layer_of[y];
      if (std::abs(q - q2) <= 1 && space(x, y) < rpow(std::min(q, q2)) / 4.0) {
        std::ostringstream w;
        w << "net points " << x << " and " << y << " are closer than r^" << std::min(q, q2) << "/4";
        note(a.net_separated, w.str());
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (in_z(x) || ws.net.contains(x)) continue;
    bool blocked = false;
    for (std::size_t y : ws.net) {
      const int q = ws.layer_of[x], q2 = ws.layer_of[y];
      if (std::abs(q - q2) <= 1 && space(x, y) < rpow(std::min(q, q2)) / 4.0) blocked = true;
    }
    if (!blocked) note(a.net_maximal, "point " + std::to_string(x) + " could be added to the net");
  }
  for (std::size_t x : ws.net) {
    if (!(space(x, ws.rho[x]) <= rpow(ws.layer_of[x] + 1)))
      note(a.displacement, "net point " + std::to_string(x) + " is moved more than r^{i+1}");
  }

  // Measured Lip(rho) over Z u N.
  std::vector<std::size_t> dom;
  for (std::size_t x = 0; x < n; ++x)
    if (ws.rho[x] != kNoIndex) dom.push_back(x);
  for (std::size_t u = 0; u < dom.size(); ++u)
    for (std::size_t v = u + 1; v < dom.size(); ++v) {
      const double d = space(dom[u], dom[v]);
      if (d > 0.0) a.lip_rho = std::max(a.lip_rho, space(ws.rho[dom[u]], ws.rho[dom[v]]) / d);
    }
  if (!(a.lip_rho <= a.lip_rho_bound)) {
    std::ostringstream w;
    w << "Lip(rho) = " << a.lip_rho << " > " << a.lip_rho_bound;
    note(a.retraction, w.str());
  }

  for (const auto& layer : ws.layers) {
    const double ri = rpow(layer.level);
    for (std::size_t l = 0; l < layer.d_sets.size(); ++l) {
      if (set_diameter(space, layer.d_sets[l]) > 2.0 * ws.c * ri)
        note(a.coverings_bounded, "D^" + std::to_string(layer.level) + "_" + std::to_string(l) + " is too wide");
      for (std::size_t m = l + 1; m < layer.d_sets.size(); ++m)
        if (layer.d_colors[l] == layer.d_colors[m] && !(set_distance(space, layer.d_sets[l], layer.d_sets[m]) > 2.0 * ri))
          note(a.coverings_bounded, "same-colored D^" + std::to_string(layer.level) + " members " +
                                        std::to_string(l) + " and " + std::to_string(m) + " are within 2r^i");
    }
  }

  for (std::size_t x = 0; x < n; ++x) {
    if (in_z(x)) continue;
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t b = 0; b < ws.bumps.size(); ++b) {
      const double v = ws.sigma_at(b, x);
      total += v;
      if (v > 0.0) {
        ++count;
        const int q = ws.layer_of[x];
        const double lim = (4.0 * ws.c + 2.0) * rpow(q + 1);
        if (space(x, ws.bumps[b].anchor) > lim) {
          std::ostringstream w;
          w << "point " << x << " is " << space(x, ws.bumps[b].anchor) << " from anchor " << ws.bumps[b].anchor
            << ", bound " << lim;
          note(a.anchors, w.str());
        }
      }
    }
    a.min_sigma_bar = std::min(a.min_sigma_bar, total);
    a.max_multiplicity = std::max(a.max_multiplicity, count);
    if (total < 1.0) note(a.floor, "sigma_bar(" + std::to_string(x) + ") = " + std::to_string(total) + " < 1");
    if (count > static_cast<std::size_t>(ws.colors))
      note(a.multiplicity, "point " + std::to_string(x) + " lies in " + std::to_string(count) +
                               " merged sets, more than n+1 = " + std::to_string(ws.colors));
  }

  for (std::size_t b = 0; b < ws.bumps.size(); ++b) {
    const double lim = 4.0 / rpow(ws.bumps[b].level - 1);
    for (std::size_t x = 0; x < n; ++x) {
      if (in_z(x)) continue;
      for (std::size_t y = x + 1; y < n; ++y) {
        if (in_z(y)) continue;
        const double diff = std::fabs(ws.sigma_at(b, x) - ws.sigma_at(b, y));
        if (diff > lim * space(x, y) * (1.0 + 1e-12)) {
          std::ostringstream w;
          w << "sigma^" << ws.bumps[b].level << "_" << ws.bumps[b].index << " changes by " << diff << " between "
            << x << " and " << y << ", more than " << lim << " d";
          note(a.regularity, w.str());
        }
      }
    }
  }
  return a;
}

struct ExtensionResult {
  std::vector<std::vector<double>> values;  // f_bar per point
  double measured_lip = 0.0;
  double bound_constant = 1.0;              // measured_lip / lambda, 1 when lambda = 0
};

namespace detail {

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) acc += (a[t] - b[t]) * (a[t] - b[t]);
  return std::sqrt(acc);
}

}  // namespace detail

/// f_bar = f on Z and the barycentric combination sum (sigma^i_k / sigma_bar) f(rho(x^i_k)) off Z.
/// The combination is accumulated relative to its first vertex so that equal vertex values give
/// that value exactly.
inline ExtensionResult extend(const ExtensionProblem& problem, const WhitneyStructure& ws) {
  const FiniteMetricSpace& space = *problem.space;
  const std::size_t n = space.size();
  ExtensionResult res;
  res.values.assign(n, std::vector<double>(problem.dim, 0.0));
  for (std::size_t a = 0; a < problem.z.size(); ++a) res.values[problem.z[a]] = problem.values[a];
  for (std::size_t x = 0; x < n; ++x) {
    if (problem.z.contains(x)) continue;
    double total = 0.0;
    for (std::size_t b = 0; b < ws.bumps.size(); ++b) total += ws.sigma_at(b, x);
    if (!(total >= 1.0)) throw InvariantError("sigma_bar < 1 at point " + std::to_string(x));
    const std::vector<double>* base = nullptr;
    auto& out = res.values[x];
    for (std::size_t b = 0; b < ws.bumps.size(); ++b) {
      const double w = ws.sigma_at(b, x);
      if (w <= 0.0) continue;
      const auto& y = problem.value_at(ws.rho[ws.bumps[b].anchor]);
      if (!base) {
        base = &y;
        continue;
      }
      for (std::size_t t = 0; t < problem.dim; ++t) out[t] += w / total * (y[t] - (*base)[t]);
    }
    for (std::size_t t = 0; t < problem.dim; ++t) out[t] += (*base)[t];
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const double d = space(x, y);
      if (d > 0.0) res.measured_lip = std::max(res.measured_lip, detail::euclid(res.values[x], res.values[y]) / d);
    }
  res.bound_constant = problem.lambda > 0.0 ? res.measured_lip / problem.lambda : 1.0;
  return res;
}

struct ExtensionReport {
  bool restriction_exact = true;
  std::size_t pairs_checked = 0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double max_ratio = 0.0;  // max |f_bar(x) - f(z)| / (C3 lambda d(x, z)) over Z x (X \ Z)
  double measured_lip = 0.0;
  double bound_constant = 0.0;
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty(); }
};

/// Checks f_bar|Z = f bit for bit and |f_bar(x) - f(z)| <= C3 lambda d(x, z) for every z in Z and x
/// off Z, with C1 = sqrt(n+1)/2 (barycentric maps), C2 = C1 (8c+4) Lip(rho) and
/// C3 = 2 (C2 + (4c+2) r + 1) r using the measured Lip(rho).
inline ExtensionReport certify_extension(const ExtensionResult& result, const ExtensionProblem& problem,
                                         const WhitneyStructure& ws, double lip_rho) {
  const FiniteMetricSpace& space = *problem.space;
  ExtensionReport rep;
  rep.measured_lip = result.measured_lip;
  rep.bound_constant = result.bound_constant;
  rep.c1 = std::sqrt(static_cast<double>(std::max(ws.colors, 1))) / 2.0;
  rep.c2 = rep.c1 * (8.0 * ws.c + 4.0) * lip_rho;
  rep.c3 = 2.0 * (rep.c2 + (4.0 * ws.c + 2.0) * ws.r + 1.0) * ws.r;
  for (std::size_t a = 0; a < problem.z.size(); ++a) {
    if (result.values[problem.z[a]] != problem.values[a]) {
      rep.restriction_exact = false;
      rep.failures.push_back("f_bar differs from f at point " + std::to_string(problem.z[a]));
    }
  }
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (problem.z.contains(x)) continue;
    for (std::size_t a = 0; a < problem.z.size(); ++a) {
      ++rep.pairs_checked;
      const double gap = detail::euclid(result.values[x], problem.values[a]);
      const double bound = rep.c3 * problem.lambda * space(x, problem.z[a]);
      if (bound > 0.0) rep.max_ratio = std::max(rep.max_ratio, gap / bound);
      if (gap > bound * (1.0 + 1e-9)) {
        std::ostringstream w;
        w << "pair (" << problem.z[a] << ", " << x << "): |f_bar(x) - f(z)| = " << gap << " > C3 lambda d = " << bound;
        if (rep.failures.size() < 32) rep.failures.push_back(w.str());
      }
    }
  }
  return rep;
}

}  // namespace nagata

#endif  // NAGATA_WHITNEY_HPP
