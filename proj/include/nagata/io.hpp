#ifndef NAGATA_IO_HPP
#define NAGATA_IO_HPP

// JSON readers and writers for spaces, subsets, values, trees and samples.

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "covering.hpp"
#include "tree.hpp"

namespace nagata::io {

using json = nlohmann::json;

/// Reads and parses a file. Syntax errors become StructuralError with the byte offset.
inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    std::ostringstream msg;
    msg << path << ": parse error at byte " << e.byte << ": " << e.what();
    throw StructuralError(msg.str());
  }
}

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw StructuralError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw StructuralError(where + ": expected a number");
  return j.get<double>();
}

inline std::size_t index(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw StructuralError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline std::vector<double> vector_of(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw StructuralError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::vector<double>> matrix_of(const json& j, const std::string& where) {
  if (!j.is_array()) throw StructuralError(where + ": expected an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw StructuralError(where + "[" + std::to_string(i) + "]: expected an array");
    out.push_back(vector_of(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline std::vector<std::size_t> indices_of(const json& j, const std::string& where) {
  if (!j.is_array()) throw StructuralError(where + ": expected an array of indices");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(index(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

/// {"metric": "matrix", "d": [[...]]} or {"metric": "euclidean", "points": [[...]]}, with optional
/// "labels".
inline FiniteMetricSpace space_from_json(const json& j, const std::string& where = "space") {
  const auto& kind = detail::field(j, "metric", where);
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw StructuralError(where + ".labels: expected an array");
    for (const auto& l : j["labels"]) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  if (kind == "matrix") {
    FiniteMetricSpace out(detail::matrix_of(detail::field(j, "d", where), where + ".d"), std::move(labels));
    out.set_exact_entries(true);
    return out;
  }
  if (kind == "euclidean") {
    const auto pts = detail::matrix_of(detail::field(j, "points", where), where + ".points");
    return FiniteMetricSpace::from_points(pts, std::move(labels));
  }
  throw StructuralError(where + ".metric: expected \"matrix\" or \"euclidean\"");
}

inline json space_to_json(const FiniteMetricSpace& space) {
  json rows = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < space.size(); ++k) row.push_back(space(i, k));
    rows.push_back(std::move(row));
  }
  json out = {{"metric", "matrix"}, {"d", std::move(rows)}};
  if (!space.labels().empty()) out["labels"] = space.labels();
  return out;
}

/// A bare index array or {"subset": [...]}.
inline PointSet subset_from_json(const json& j, const std::string& where = "subset") {
  if (j.is_object()) return PointSet(detail::indices_of(detail::field(j, "subset", where), where + ".subset"));
  return PointSet(detail::indices_of(j, where));
}

/// A bare index array or {"order": [...]}.
inline std::vector<std::size_t> order_from_json(const json& j, const std::string& where = "order") {
  if (j.is_object()) return detail::indices_of(detail::field(j, "order", where), where + ".order");
  return detail::indices_of(j, where);
}

/// Map point index -> vector (a bare number is a 1-vector), optionally wrapped as {"values": {...}}.
/// Entries come back in increasing index order.
inline std::vector<std::pair<std::size_t, std::vector<double>>> values_from_json(const json& j,
                                                                                 const std::string& where = "values") {
  const json& map = j.is_object() && j.contains("values") ? j.at("values") : j;
  if (!map.is_object()) throw StructuralError(where + ": expected an object mapping indices to vectors");
  std::vector<std::pair<std::size_t, std::vector<double>>> out;
  for (const auto& [key, val] : map.items()) {
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(key, &used);
      if (used != key.size() || v < 0) throw std::invalid_argument(key);
      idx = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw StructuralError(where + ": key \"" + key + "\" is not a point index");
    }
    out.emplace_back(idx, detail::vector_of(val, where + "." + key));
  }
  std::sort(out.begin(), out.end());
  for (std::size_t a = 1; a < out.size(); ++a)
    if (out[a].first == out[a - 1].first) throw StructuralError(where + ": duplicate index " + std::to_string(out[a].first));
  return out;
}

inline json tree_point_to_json(const TreePoint& p) { return {{"node", p.node}, {"offset", p.offset}}; }

inline TreePoint tree_point_from_json(const json& j, const std::string& where) {
  return {detail::index(detail::field(j, "node", where), where + ".node"),
          detail::number(detail::field(j, "offset", where), where + ".offset")};
}

/// {"nodes": [{"node", "parent" (null for roots), "offset", "length"}, ...]}.
inline json tree_to_json(const MetricTree& tree) {
  json nodes = json::array();
  for (std::size_t u = 0; u < tree.size(); ++u) {
    const auto& n = tree.node(u);
    nodes.push_back({{"node", u},
                     {"parent", n.parent == kNoIndex ? json(nullptr) : json(n.parent)},
                     {"offset", n.offset},
                     {"length", n.length}});
  }
  return {{"nodes", std::move(nodes)}};
}

inline MetricTree tree_from_json(const json& j, const std::string& where = "tree") {
  const auto& nodes = detail::field(j, "nodes", where);
  if (!nodes.is_array()) throw StructuralError(where + ".nodes: expected an array");
  MetricTree tree;
  std::vector<std::pair<std::size_t, TreeNode>> read;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string at = where + ".nodes[" + std::to_string(i) + "]";
    const auto& n = nodes[i];
    const std::size_t id = n.contains("node") ? detail::index(n["node"], at + ".node") : i;
    if (id != i) throw StructuralError(at + ": nodes must be listed in index order");
    TreeNode node;
    node.length = detail::number(detail::field(n, "length", at), at + ".length");
    if (n.contains("parent") && !n["parent"].is_null()) {
      node.parent = detail::index(n["parent"], at + ".parent");
      node.offset = detail::number(detail::field(n, "offset", at), at + ".offset");
    }
    read.emplace_back(i, node);
  }
  try {
    for (const auto& [u, node] : read) tree.add_node(node.length);
    for (const auto& [u, node] : read)
      if (node.parent != kNoIndex) tree.attach(u, node.parent, node.offset);
  } catch (const ParameterError& e) {
    throw StructuralError(where + ": " + e.what());
  }
  auto problems = tree.check_invariants();
  if (!problems.empty()) throw StructuralError(where + ": " + problems.front());
  return tree;
}

/// {"root": point, "points": [point, ...]} or a bare array of points.
struct Sample {
  std::vector<TreePoint> points;
  std::optional<TreePoint> root;
};

inline Sample sample_from_json(const json& j, const std::string& where = "sample") {
  Sample s;
  const json* pts = &j;
  if (j.is_object()) {
    pts = &detail::field(j, "points", where);
    if (j.contains("root")) s.root = tree_point_from_json(j["root"], where + ".root");
  }
  if (!pts->is_array()) throw StructuralError(where + ": expected an array of tree points");
  for (std::size_t i = 0; i < pts->size(); ++i)
    s.points.push_back(tree_point_from_json((*pts)[i], where + "[" + std::to_string(i) + "]"));
  return s;
}

inline json cover_to_json(const CoverFamily& cover) {
  json members = json::array();
  for (const auto& m : cover.members) members.push_back(m.indices());
  json out = {{"scale", cover.scale}, {"bound", cover.bound}, {"members", std::move(members)}};
  if (cover.colored()) out["colors"] = cover.colors;
  return out;
}

inline json multiplicity_to_json(const CertifiedMultiplicity& m) {
  json out = {{"value", m.value}, {"method", m.method}};
  if (!m.witness.empty()) out["witness"] = m.witness.indices();
  return out;
}

}  // namespace nagata::io

#endif  // NAGATA_IO_HPP
