// Command-line front end. Every command reads JSON, writes one JSON report and exits with
// 0 (certified), 1 (certification failed), 2 (malformed input) or 3 (bad parameters).

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nagata/io.hpp"
#include "nagata/nagata.hpp"

using namespace nagata;
using nagata::io::json;

namespace {

enum Exit : int { kOk = 0, kCertification = 1, kStructural = 2, kParameter = 3 };

struct Outcome {
  int code = kOk;
  json report;
};

struct Common {
  std::string input;
  std::string output;
  std::string check = "auto";
  std::string order = "index";
};

CheckMode check_mode(const std::string& name) {
  if (name == "exact") return CheckMode::kExact;
  if (name == "ball") return CheckMode::kBall;
  return CheckMode::kAuto;
}

std::string axiom_label(const Violation& v) { return axiom_name(v.axiom); }

json violation_json(const Violation& v) {
  return {{"axiom", axiom_label(v)}, {"i", v.i}, {"k", v.k}, {"j", v.j}, {"lhs", v.lhs}, {"rhs", v.rhs}};
}

// Loads a space; unless `raw`, a space that fails the metric axioms is rejected as malformed input.
FiniteMetricSpace load_space(const std::string& path, bool raw = false) {
  auto space = io::space_from_json(io::read_json(path), path);
  if (!raw) {
    const auto rep = validate(space);
    if (!rep.ok()) {
      const auto& v = rep.violations.front();
      std::ostringstream msg;
      msg << path << ": not a metric (" << axiom_label(v) << " fails at " << v.i << ", " << v.k << ", " << v.j << ")";
      throw StructuralError(msg.str());
    }
  }
  return space;
}

std::vector<std::size_t> load_order(const std::string& choice) {
  if (choice == "index") return {};
  return io::order_from_json(io::read_json(choice), choice);
}

double parse_number(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError(std::string(what) + ": expected a number or \"auto\", got \"" + text + "\"");
}

std::optional<double> auto_or_number(const std::string& text, const char* what) {
  if (text == "auto") return std::nullopt;
  return parse_number(text, what);
}

std::optional<std::pair<int, int>> parse_levels(const std::string& text) {
  if (text == "auto") return std::nullopt;
  const auto colon = text.find(':');
  try {
    if (colon != std::string::npos) {
      std::size_t u1 = 0, u2 = 0;
      const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
      const int lo = std::stoi(a, &u1), hi = std::stoi(b, &u2);
      if (u1 == a.size() && u2 == b.size()) return std::make_pair(lo, hi);
    }
  } catch (const std::exception&) {
  }
  throw ParameterError("--levels: expected \"auto\" or \"j_min:j_max\", got \"" + text + "\"");
}

json members_json(const std::vector<PointSet>& members) {
  json out = json::array();
  for (const auto& m : members) out.push_back(m.indices());
  return out;
}

json bound_json(double measured, double bound) {
  return {{"measured", measured}, {"bound", bound}, {"holds", measured <= bound}};
}

// ---------------------------------------------------------------------------
// Commands

Outcome run_validate(const Common& common, json& params) {
  params["input"] = common.input;
  const auto space = load_space(common.input, true);
  const auto rep = validate(space);
  json viol = json::array();
  for (const auto& v : rep.violations) viol.push_back(violation_json(v));
  Outcome out;
  out.report["validation"] = {{"points", space.size()},
                              {"exact", space.exact_entries()},
                              {"tolerance", rep.tolerance},
                              {"ok", rep.ok()},
                              {"violations", viol}};
  out.code = rep.ok() ? kOk : kCertification;
  return out;
}

Outcome run_cover(const Common& common, double s, json& params) {
  params.update({{"input", common.input}, {"scale", s}, {"check", common.check}, {"order", common.order}});
  const auto space = load_space(common.input);
  const auto order = load_order(common.order);
  const auto dc = doubling_cover(space, s, order);
  const auto mode = check_mode(common.check);

  bool ok = true;
  json classes = json::array();
  for (int k = 0; k < dc.colors_used; ++k) {
    const auto members = dc.cover.color_class(k);
    const auto w = separation_witness(space, members, s);
    classes.push_back({{"color", k},
                       {"members", members.size()},
                       {"multiplicity_at_most_one", !w.has_value()},
                       {"witness", w ? json::array({w->first, w->second}) : json(nullptr)}});
    ok = ok && !w.has_value();
  }
  const auto total = certified_multiplicity(space, dc.cover, s, mode);
  const double diam = max_member_diameter(space, dc.cover.members);
  const bool covered = !uncovered_point(space.size(), dc.cover.members).has_value();
  ok = ok && diam <= dc.cover.bound && covered;

  Outcome out;
  out.report["cover"] = io::cover_to_json(dc.cover);
  out.report["cover"]["centers"] = dc.centers;
  out.report["cover"]["colors_used"] = dc.colors_used;
  out.report["certificates"] = {
      {"covers_space", covered},
      {"diameter", bound_json(diam, dc.cover.bound)},
      {"color_classes", classes},
      {"multiplicity", io::multiplicity_to_json(total)},
  };
  // The color classes already certify multiplicity <= colors_used; the total is informational.
  out.report["certificates"]["multiplicity"]["bound_from_colors"] = dc.colors_used;
  out.code = ok ? kOk : kCertification;
  return out;
}

json hierarchy_json(const HierarchicalCovering& h) {
  json fam = json::array();
  for (int j = h.j_min; j <= h.j_max; ++j)
    for (int k = 0; k < h.colors; ++k) fam.push_back({{"level", j}, {"color", k}, {"members", members_json(h.family(j, k))}});
  json chains = json::array();
  for (const auto& e : h.chains)
    chains.push_back({{"color", e.color},
                      {"upper", {{"level", e.upper_level}, {"index", e.upper_index}}},
                      {"lower", {{"level", e.lower_level}, {"index", e.lower_index}}}});
  return {{"r", h.r},           {"c_prime", h.c_prime}, {"c", h.c},         {"j_min", h.j_min},
          {"j_max", h.j_max},   {"colors", h.colors},   {"basepoint", h.basepoint}, {"families", fam},
          {"chains", chains}};
}

json hierarchy_report_json(const HierarchyReport& rep, const HierarchicalCovering& h) {
  return {{"bounded_separated", rep.bounded_separated},
          {"ball_containment", rep.ball_containment},
          {"absorbs_space", rep.absorbs_space},
          {"nested_or_far", rep.nested_or_far},
          {"c", bound_json(rep.measured_c, h.c)},
          {"witnesses", rep.witnesses}};
}

Outcome run_hierarchy(const Common& common, double cp, const std::string& base, const std::string& levels,
                      std::size_t basepoint, json& params) {
  const double r = auto_or_number(base, "--base-r").value_or(hierarchy_min_base(cp));
  params.update({{"input", common.input}, {"cprime", cp}, {"base_r", r}, {"levels", levels}, {"basepoint", basepoint}});
  const auto space = load_space(common.input);
  HierarchyOptions opts;
  opts.levels = parse_levels(levels);
  opts.basepoint = basepoint;
  const auto h = build_hierarchy(space, cp, r, opts);
  const auto rep = check_hierarchy(space, h);
  Outcome out;
  out.report["hierarchy"] = hierarchy_json(h);
  out.report["certificates"] = hierarchy_report_json(rep, h);
  out.code = rep.ok() ? kOk : kCertification;
  return out;
}

json embedding_report_json(const EmbeddingReport& rep) {
  return {{"norm", norm_name(rep.norm)},
          {"p", rep.p},
          {"r", rep.r},
          {"c", rep.c},
          {"upper_constant", rep.upper_constant},
          {"coordinate_upper", rep.coordinate_upper},
          {"lower_constant", rep.lower_constant},
          {"distortion", rep.distortion},
          {"per_coordinate_lipschitz", rep.per_coordinate_lipschitz},
          {"min_ratio", rep.pairs ? json(rep.min_ratio) : json(nullptr)},
          {"max_ratio", rep.max_ratio},
          {"measured_distortion", rep.pairs ? json(rep.measured_distortion()) : json(nullptr)},
          {"pairs", rep.pairs},
          {"virtual_roots", rep.virtual_roots},
          {"displacement_checks", rep.displacement_checks},
          {"positivity_checks", rep.positivity_checks},
          {"lower_bound_pairs", rep.lower_bound_pairs},
          {"passed", rep.passed()},
          {"failures", rep.failures}};
}

Outcome run_embed(const Common& common, double cp, const std::string& base, const std::string& exponent,
                  const std::string& norm, const std::string& levels, json& params) {
  const double r = auto_or_number(base, "--base-r").value_or(embedding_min_base(cp));
  EmbedOptions opts;
  opts.p = auto_or_number(exponent, "--exponent");
  opts.norm = norm == "l2" ? ProductNorm::kEuclidean : norm == "l1" ? ProductNorm::kSum : ProductNorm::kMax;
  opts.throw_on_failure = false;
  opts.hierarchy.levels = parse_levels(levels);
  params.update({{"input", common.input},
                 {"cprime", cp},
                 {"base_r", r},
                 {"exponent", opts.p ? json(*opts.p) : json("auto")},
                 {"norm", norm},
                 {"levels", levels}});
  const auto space = load_space(common.input);
  const auto res = embed(space, cp, r, opts);
  const auto& te = res.embedding;

  json trees = json::array();
  for (std::size_t k = 0; k < te.trees.size(); ++k) {
    json images = json::array();
    for (const auto& p : te.images[k]) images.push_back(io::tree_point_to_json(p));
    trees.push_back({{"color", k},
                     {"nodes", io::tree_to_json(te.trees[k])["nodes"]},
                     {"virtual_root", te.virtual_root[k] == kNoIndex ? json(nullptr) : json(te.virtual_root[k])},
                     {"images", images}});
  }
  Outcome out;
  out.report["hierarchy"] = {{"r", res.hierarchy.r},         {"c", res.hierarchy.c},
                             {"j_min", res.hierarchy.j_min}, {"j_max", res.hierarchy.j_max},
                             {"colors", res.hierarchy.colors}};
  out.report["trees"] = trees;
  out.report["certificates"] = embedding_report_json(res.report);
  out.code = res.report.passed() ? kOk : kCertification;
  return out;
}

Outcome run_reduce_tree(const Common& common, const std::string& tree_path, const std::string& sample_path, double s,
                        double c, json& params) {
  params.update({{"tree", tree_path}, {"sample", sample_path}, {"scale", s}, {"c", c}, {"check", common.check}});
  const auto tree = io::tree_from_json(io::read_json(tree_path), tree_path);
  const auto sample = io::sample_from_json(io::read_json(sample_path), sample_path);
  if (sample.points.empty()) throw ParameterError("sample must be non-empty");
  const TreePoint root = sample.root.value_or(sample.points.front());
  params["root"] = io::tree_point_to_json(root);
  const auto res = tree_reduction(tree, sample.points, root, s, c, check_mode(common.check));
  const auto cond = check_condition_iii(tree, sample.points, root);

  json keys = json::array();
  for (const auto& k : res.keys) keys.push_back({{"node", k.node}, {"offset", k.offset}});
  const double bound = res.transfer.c_tilde * s;
  const bool ok = res.transfer.measured_diameter <= bound && res.transfer.multiplicity.value <= 2 && cond.violations.empty();

  Outcome out;
  out.report["reduction"] = {{"heights", res.heights},
                             {"interval_members", members_json(res.interval_cover.members)},
                             {"members", members_json(res.transfer.cover.members)},
                             {"source", res.transfer.source},
                             {"keys", keys},
                             {"t", res.transfer.t},
                             {"c_tilde", res.transfer.c_tilde}};
  out.report["certificates"] = {{"diameter", bound_json(res.transfer.measured_diameter, bound)},
                                {"multiplicity", io::multiplicity_to_json(res.transfer.multiplicity)},
                                {"condition_iii", {{"pairs_checked", cond.pairs_checked}, {"violations", cond.violations}}}};
  out.report["certificates"]["multiplicity"]["bound"] = 2;
  out.report["certificates"]["multiplicity"]["holds"] = res.transfer.multiplicity.value <= 2;
  out.code = ok ? kOk : kCertification;
  return out;
}

Outcome run_extend(const Common& common, const std::string& subset_path, const std::string& values_path,
                   const std::string& base, std::optional<std::size_t> dim, json& params) {
  params.update({{"space", common.input},
                 {"subset", subset_path.empty() ? json(nullptr) : json(subset_path)},
                 {"values", values_path},
                 {"base_r", base},
                 {"dim", dim ? json(*dim) : json(nullptr)}});
  const auto space = load_space(common.input);
  const auto entries = io::values_from_json(io::read_json(values_path), values_path);
  std::vector<std::size_t> keys;
  std::vector<std::vector<double>> values;
  for (const auto& [idx, v] : entries) {
    keys.push_back(idx);
    values.push_back(v);
  }
  PointSet z(keys);
  if (!subset_path.empty()) {
    z = io::subset_from_json(io::read_json(subset_path), subset_path);
    if (z.indices() != keys) throw ParameterError("the values file must give exactly one value per subset point");
  }
  if (dim && !values.empty() && values.front().size() != *dim) {
    std::ostringstream msg;
    msg << "--dim " << *dim << " does not match the value dimension " << values.front().size();
    throw ParameterError(msg.str());
  }
  const auto problem = make_problem(space, z, values);
  const auto ws = build_structure(problem, auto_or_number(base, "--base-r"));
  const auto audit = check_structure(problem, ws);
  const auto res = extend(problem, ws);
  const auto cert = certify_extension(res, problem, ws, audit.lip_rho);

  json table = json::array();
  for (std::size_t x = 0; x < space.size(); ++x)
    table.push_back({{"point", x}, {"in_subset", problem.z.contains(x)}, {"value", res.values[x]}});
  json layers = json::array();
  for (const auto& l : ws.layers)
    layers.push_back({{"level", l.level}, {"points", l.points.indices()}, {"net", l.net.indices()},
                      {"d_sets", members_json(l.d_sets)}, {"d_colors", l.d_colors}});

  Outcome out;
  out.report["extension"] = {{"values", table},
                             {"lambda", problem.lambda},
                             {"measured_lip", res.measured_lip},
                             {"bound_constant", res.bound_constant}};
  out.report["structure"] = {{"r", ws.r},
                             {"c", ws.c},
                             {"colors", ws.colors},
                             {"layers", layers},
                             {"bumps", ws.bumps.size()},
                             {"boundary_ties", ws.boundary_ties}};
  out.report["certificates"] = {
      {"audit",
       {{"layers_partition", audit.layers_partition},
        {"net_separated", audit.net_separated},
        {"net_maximal", audit.net_maximal},
        {"displacement", audit.displacement},
        {"coverings_bounded", audit.coverings_bounded},
        {"floor", audit.floor},
        {"multiplicity", audit.multiplicity},
        {"regularity", audit.regularity},
        {"anchors", audit.anchors},
        {"retraction", audit.retraction},
        {"lip_rho", bound_json(audit.lip_rho, audit.lip_rho_bound)},
        {"min_sigma_bar", ws.empty() ? json(nullptr) : json(audit.min_sigma_bar)},
        {"max_multiplicity", {{"measured", audit.max_multiplicity}, {"bound", ws.colors}}},
        {"witnesses", audit.witnesses}}},
      {"extension",
       {{"restriction_exact", cert.restriction_exact},
        {"pairs_checked", cert.pairs_checked},
        {"c1", cert.c1},
        {"c2", cert.c2},
        {"c3", cert.c3},
        {"max_ratio", cert.max_ratio},
        {"passed", cert.passed()},
        {"failures", cert.failures}}}};
  out.code = audit.ok() && cert.passed() ? kOk : kCertification;
  return out;
}

Outcome run_profile(const Common& common, std::vector<double> scales, std::optional<int> max_colors, json& params) {
  const auto space = load_space(common.input);
  if (scales.empty() && space.size() >= 2) {
    const double lo = space.min_positive_distance(), hi = space.diameter();
    for (int i = 0; i < 6; ++i) scales.push_back(lo * std::pow(hi / lo, i / 5.0));
  }
  params.update({{"input", common.input},
                 {"scales", scales},
                 {"max_colors", max_colors ? json(*max_colors) : json(nullptr)},
                 {"order", common.order}});
  std::vector<std::vector<std::size_t>> orders;
  if (auto o = load_order(common.order); !o.empty()) orders.push_back(std::move(o));
  const auto records = estimate_nagata_profile(space, scales, max_colors, orders);
  json rows = json::array();
  bool ok = true;
  for (const auto& r : records) {
    rows.push_back({{"scale", r.scale},
                    {"colors", r.colors},
                    {"nominal_c", r.nominal_c},
                    {"measured_c", r.measured_c},
                    {"feasible", r.feasible}});
    ok = ok && r.feasible;
  }
  Outcome out;
  out.report["profile"] = rows;
  out.report["note"] = "upper-bound certificate from greedy coverings, not the Nagata dimension";
  out.code = ok ? kOk : kCertification;
  return out;
}

void write_report(const json& report, const std::string& path) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverings, tree embeddings and Lipschitz extensions for finite metric spaces"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common common;
  double scale = 0.0, c_prime = 2.0, c_reduce = 1.0;
  std::string base_r = "auto", levels = "auto", exponent = "auto", norm = "max";
  std::string tree_path, sample_path, subset_path, values_path;
  std::size_t basepoint = 0;
  std::optional<std::size_t> dim;
  std::optional<int> max_colors;
  std::vector<double> scales;

  const auto checks = CLI::IsMember({"exact", "ball", "auto"});
  auto add_output = [&](CLI::App* sub) { sub->add_option("--output,-o", common.output, "Report path (stdout if omitted)"); };
  auto add_input = [&](CLI::App* sub) {
    return sub->add_option("--input,-i", common.input, "Metric space JSON")->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check the metric axioms");
  add_input(validate_cmd);
  add_output(validate_cmd);

  auto* cover_cmd = app.add_subcommand("cover", "Doubling covering at scale s with certified multiplicity");
  add_input(cover_cmd);
  add_output(cover_cmd);
  cover_cmd->add_option("--scale,-s", scale, "Scale s")->required();
  cover_cmd->add_option("--order", common.order, "\"index\" or a JSON file with a permutation");
  cover_cmd->add_option("--check", common.check, "Multiplicity oracle")->check(checks);

  auto* hier_cmd = app.add_subcommand("hierarchy", "Hierarchical covering with all four checks");
  add_input(hier_cmd);
  add_output(hier_cmd);
  hier_cmd->add_option("--cprime", c_prime, "Constant c'")->capture_default_str();
  hier_cmd->add_option("--base-r", base_r, "Base r or \"auto\" (5c'+6)")->capture_default_str();
  hier_cmd->add_option("--levels", levels, "\"auto\" or j_min:j_max")->capture_default_str();
  hier_cmd->add_option("--basepoint", basepoint, "Point whose sets get color j mod (n+1)")->capture_default_str();

  auto* embed_cmd = app.add_subcommand("embed", "Embed (X, d^p) into a product of trees");
  add_input(embed_cmd);
  add_output(embed_cmd);
  embed_cmd->add_option("--cprime", c_prime, "Constant c'")->capture_default_str();
  embed_cmd->add_option("--base-r", base_r, "Base r or \"auto\"")->capture_default_str();
  embed_cmd->add_option("--exponent,-p", exponent, "Snowflake exponent p or \"auto\"")->capture_default_str();
  embed_cmd->add_option("--norm", norm, "Product norm")->check(CLI::IsMember({"max", "l2", "l1"}))->capture_default_str();
  embed_cmd->add_option("--levels", levels, "\"auto\" or j_min:j_max")->capture_default_str();

  auto* reduce_cmd = app.add_subcommand("reduce-tree", "Covering of a sample of a metric tree");
  reduce_cmd->add_option("--tree", tree_path, "Tree JSON")->required();
  reduce_cmd->add_option("--sample", sample_path, "Sample JSON")->required();
  reduce_cmd->add_option("--scale,-s", scale, "Scale s")->required();
  reduce_cmd->add_option("--c", c_reduce, "Interval constant c >= 1")->capture_default_str();
  reduce_cmd->add_option("--check", common.check, "Multiplicity oracle")->check(checks);
  add_output(reduce_cmd);

  auto* extend_cmd = app.add_subcommand("extend", "Lipschitz extension of a map on a subset");
  extend_cmd->add_option("--space,--input", common.input, "Metric space JSON")->required();
  extend_cmd->add_option("--subset", subset_path, "Subset JSON (defaults to the keys of the values file)")
      ;
  extend_cmd->add_option("--values", values_path, "Values JSON: point index -> vector")->required();
  extend_cmd->add_option("--base-r", base_r, "Base r or \"auto\"")->capture_default_str();
  extend_cmd->add_option("--dim", dim, "Expected value dimension");
  add_output(extend_cmd);

  auto* profile_cmd = app.add_subcommand("dim-profile", "Colors and constants of greedy coverings across scales");
  add_input(profile_cmd);
  add_output(profile_cmd);
  profile_cmd->add_option("--scales", scales, "Comma-separated scales (default: 6 between min distance and diameter)")
      ->delimiter(',');
  profile_cmd->add_option("--max-colors", max_colors, "Color cap");
  profile_cmd->add_option("--order", common.order, "\"index\" or a JSON file with a permutation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParameter;
  }

  CLI::App* sub = app.get_subcommands().front();
  json params = json::object();
  json report = {{"command", sub->get_name()}, {"version", kVersion}};
  int code = kOk;
  try {
    Outcome out;
    if (sub == validate_cmd) out = run_validate(common, params);
    else if (sub == cover_cmd) out = run_cover(common, scale, params);
    else if (sub == hier_cmd) out = run_hierarchy(common, c_prime, base_r, levels, basepoint, params);
    else if (sub == embed_cmd) out = run_embed(common, c_prime, base_r, exponent, norm, levels, params);
    else if (sub == reduce_cmd) out = run_reduce_tree(common, tree_path, sample_path, scale, c_reduce, params);
    else if (sub == extend_cmd) out = run_extend(common, subset_path, values_path, base_r, dim, params);
    else out = run_profile(common, scales, max_colors, params);
    report.update(out.report);
    code = out.code;
    report["status"] = code == kOk ? "certified" : "certification_failed";
  } catch (const Error& e) {
    const bool structural = dynamic_cast<const StructuralError*>(&e) != nullptr;
    const bool certification =
        dynamic_cast<const CertificationError*>(&e) != nullptr || dynamic_cast<const InvariantError*>(&e) != nullptr;
    code = structural ? kStructural : certification ? kCertification : kParameter;
    const char* kind = structural ? "structural" : certification ? "certification" : "parameter";
    report["status"] = "error";
    report["error"] = {{"kind", kind}, {"message", e.what()}};
    std::cerr << "error (" << kind << "): " << e.what() << "\n";
  }
  report["parameters"] = params;
  try {
    write_report(report, common.output);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParameter;
  }
  return code;
}
