// Command-line front end: validation, analysis, cocycle checks, the two
// elementarity oracles, the certificate pipeline, pullback verification,
// and deterministic corpus generation.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "dendro/bochner.hpp"
#include "dendro/bundle.hpp"
#include "dendro/cocycle.hpp"
#include "dendro/dendrite.hpp"
#include "dendro/error.hpp"
#include "dendro/generate.hpp"
#include "dendro/instance.hpp"
#include "dendro/median_cocycle.hpp"
#include "dendro/report.hpp"

namespace {

using dendro::Error;
using dendro::ErrorKind;
using nlohmann::ordered_json;

struct Options {
  std::uint64_t seed = 0;
  std::string format = "text";
  long long max_search = 1000000;
};

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string digest_paths(const std::vector<std::string>& paths) {
  std::string all;
  for (const auto& path : paths) all += read_file_bytes(path);
  return dendro::fnv1a64_hex(all);
}

void emit(const dendro::Report& report, const Options& opt) {
  if (opt.format == "json") {
    std::cout << dendro::report_to_json(report).dump(2) << "\n";
  } else {
    std::cout << dendro::report_to_text(report);
  }
}

/// pass/fail from the checks array; every failing check is mirrored into
/// findings so a fail status always ships a witness.
int finish_pass_fail(dendro::Report& report, const Options& opt) {
  report.status = report.all_checks_pass() ? "pass" : "fail";
  for (const auto& row : report.checks) {
    if (!row.at("pass").get<bool>()) {
      ordered_json item;
      item["check"] = row.at("name");
      item["witness"] = row.contains("witness") ? row.at("witness") : "";
      report.findings.push_back(std::move(item));
    }
  }
  emit(report, opt);
  return report.status == "pass" ? 0 : 1;
}

const char* kind_name(dendro::FamilyKind kind) {
  switch (kind) {
    case dendro::FamilyKind::Point:
      return "point";
    case dendro::FamilyKind::Pair:
      return "pair";
    case dendro::FamilyKind::Closed:
      return "closed";
    default:
      return "subdendrite";
  }
}

ordered_json family_json(const dendro::Dendrite& tree, const dendro::ProbSpace& space,
                         const dendro::EquivariantFamily& family) {
  ordered_json doc;
  doc["kind"] = kind_name(family.kind);
  auto& fibers = doc["fibers"] = ordered_json::object();
  for (int s = 0; s < space.size(); ++s) {
    ordered_json row = ordered_json::array();
    for (int v : family.fibers[s]) row.push_back(tree.id(v));
    fibers[space.atom(s)] = std::move(row);
  }
  return doc;
}

ordered_json measure_family_json(const dendro::Dendrite& tree, const dendro::ProbSpace& space,
                                 const dendro::MeasureFamily& family) {
  ordered_json fibers = ordered_json::object();
  for (int s = 0; s < space.size(); ++s) {
    ordered_json row = ordered_json::object();
    for (int v = 0; v < tree.size(); ++v) {
      if (family.fibers[s][v] != 0) row[tree.id(v)] = dendro::rat_to_string(family.fibers[s][v]);
    }
    fibers[space.atom(s)] = std::move(row);
  }
  ordered_json doc;
  doc["fibers"] = std::move(fibers);
  return doc;
}

// -- validate -------------------------------------------------------------

int cmd_validate(const std::vector<std::string>& paths, const Options& opt) {
  dendro::Report report;
  report.command = "validate";
  report.inputs_digest = digest_paths(paths);
  long long files = 0;
  for (const auto& path : paths) {
    ++files;
    const nlohmann::json doc = dendro::load_json_file(path);
    try {
      if (doc.contains("tree")) {
        dendro::parse_instance(doc);
      } else if (doc.contains("vertices")) {
        dendro::parse_tree(doc);
      } else {
        throw Error(ErrorKind::ParseError, "document is neither an instance nor a tree");
      }
      report.add_check(path, true);
    } catch (const Error& e) {
      // Malformed input propagates as an input error; a well-formed file
      // that breaks a law is a check failure.
      if (dendro::exit_code_for(e.kind()) == 2) throw;
      report.add_check(path, false, e.what());
    }
  }
  report.add_timing("files", files);
  return finish_pass_fail(report, opt);
}

// -- analyze ---------------------------------------------------------------

int cmd_analyze(const std::string& path, const Options& opt) {
  const nlohmann::json doc = dendro::load_json_file(path);
  const dendro::Dendrite tree =
      doc.contains("tree") ? dendro::parse_tree(doc.at("tree")) : dendro::parse_tree(doc);

  dendro::Report report;
  report.command = "analyze";
  report.inputs_digest = digest_paths({path});
  report.status = "pass";

  int branch_count = 0;
  if (tree.size() >= 2) {
    for (int v = 0; v < tree.size(); ++v) {
      const auto cls = dendro::classify(tree, v);
      if (cls.cls == dendro::PointClass::Branch) ++branch_count;
      ordered_json row;
      row["vertex"] = tree.id(v);
      row["order"] = cls.order;
      row["class"] = dendro::point_class_name(cls.cls);
      report.findings.push_back(std::move(row));
    }
  }

  const dendro::CenterResult center = dendro::jordan_center(tree);
  ordered_json center_row;
  center_row["center"] = center.is_edge
                             ? ordered_json::array({tree.id(center.v1), tree.id(center.v2)})
                             : ordered_json::array({tree.id(center.v1)});
  report.findings.push_back(std::move(center_row));

  if (tree.size() >= 2) {
    const auto core = dendro::suppress_regular(tree);
    ordered_json core_row;
    core_row["core_vertices"] = core.core.size();
    report.findings.push_back(std::move(core_row));
  }

  report.add_timing("vertices", tree.size());
  report.add_timing("branch_points", branch_count);
  emit(report, opt);
  return 0;
}

// -- omega ------------------------------------------------------------------

int cmd_omega(const std::string& path, const std::vector<std::string>& points,
              const std::string& p_norm, const Options& opt) {
  const dendro::Dendrite tree = dendro::load_tree_file(path);
  std::vector<int> v;
  for (const auto& name : points) {
    const auto idx = tree.find_vertex(name);
    if (!idx) throw Error(ErrorKind::UnknownVertex, "unknown vertex \"" + name + "\"");
    v.push_back(*idx);
  }

  const dendro::SparseBundleFunction table = dendro::omega(tree, v[0], v[1], v[2]);
  long long count = 0;
  double norm = 0.0;
  if (p_norm == "1") {
    count = table.l1_norm();
    norm = static_cast<double>(count);
  } else if (p_norm == "2") {
    count = table.l2_norm_squared();
    norm = std::sqrt(static_cast<double>(count));
  } else if (p_norm == "inf") {
    count = table.linf_norm();
    norm = static_cast<double>(count);
  } else {
    throw Error(ErrorKind::BadExponent, "--p-norm must be 1, 2, or inf");
  }

  dendro::Report report;
  report.command = "omega";
  report.inputs_digest = digest_paths({path});
  report.status = "pass";
  ordered_json finding;
  finding["points"] = points;
  finding["entries"] = dendro::sparse_rows(tree, table);
  finding["support_base"] = tree.id(dendro::median(tree, v[0], v[1], v[2]));
  finding["p"] = p_norm;
  finding["norm_count"] = count;
  finding["norm"] = norm;
  report.findings.push_back(std::move(finding));
  report.add_timing("entries", table.support_size());
  emit(report, opt);
  return 0;
}

// -- cocycle-check -----------------------------------------------------------

int cmd_cocycle_check(const std::string& path, long long samples, const Options& opt) {
  const dendro::Dendrite tree = dendro::load_tree_file(path);
  dendro::Report report;
  report.command = "cocycle-check";
  report.inputs_digest = digest_paths({path});

  dendro::CoboundaryMode mode;
  if (samples > 0 || tree.size() > 10) {
    mode.exhaustive = false;
    mode.seed = opt.seed;
    mode.samples = samples > 0 ? samples : 10000;
  }
  const auto coboundary = dendro::check_coboundary(tree, mode);
  report.add_check("coboundary", coboundary.ok, coboundary.failure);
  report.add_timing("quadruples", coboundary.checked);

  long long triples = 0;
  bool alternating = true;
  std::string alternation_witness;
  for (int p = 0; p < tree.size() && alternating; ++p) {
    for (int q = 0; q < tree.size() && alternating; ++q) {
      for (int r = 0; r < tree.size() && alternating; ++r) {
        ++triples;
        dendro::SparseBundleFunction swapped = dendro::omega(tree, q, p, r);
        swapped.add_all(dendro::omega(tree, p, q, r), 1);
        if (!swapped.is_zero()) {
          alternating = false;
          alternation_witness = "omega(q,p,r) != -omega(p,q,r) at (" + tree.id(p) + "," +
                                tree.id(q) + "," + tree.id(r) + ")";
        }
      }
    }
  }
  report.add_check("alternation", alternating, alternation_witness);
  report.add_timing("triples", triples);

  if (tree.size() <= 8) {
    const auto equivariance = dendro::check_equivariance(tree);
    report.add_check("equivariance", equivariance.ok, equivariance.failure);
    report.add_timing("equivariance_checks", equivariance.checked);
  }
  return finish_pass_fail(report, opt);
}

// -- elementarity -------------------------------------------------------------

int cmd_elementarity(const std::string& path, const std::string& method, const Options& opt) {
  const dendro::Instance instance = dendro::load_instance_file(path);
  dendro::Report report;
  report.command = "elementarity";
  report.inputs_digest = digest_paths({path});

  bool found = false;
  if (method == "search" || method == "both") {
    const auto family = dendro::is_elementary_search(instance.morphism);
    report.add_check("search-oracle-ran", true);
    if (family) {
      found = true;
      ordered_json item;
      item["oracle"] = "search";
      item["family"] = family_json(*instance.tree, *instance.space, *family);
      report.findings.push_back(std::move(item));
    }
    if (method == "both") {
      const auto measure = dendro::invariant_measure_lp(instance.morphism);
      report.add_check("lp-oracle-ran", true);
      if (measure.has_value() != family.has_value()) {
        throw Error(ErrorKind::OracleDisagreement,
                    std::string("search says ") + (family ? "found" : "not-found") +
                        ", lp says " + (measure ? "found" : "not-found"));
      }
      report.add_check("oracles-agree", true);
      if (measure) {
        ordered_json item;
        item["oracle"] = "lp";
        item["measure"] = measure_family_json(*instance.tree, *instance.space, *measure);
        report.findings.push_back(std::move(item));
      }
    }
  } else if (method == "lp") {
    const auto measure = dendro::invariant_measure_lp(instance.morphism);
    report.add_check("lp-oracle-ran", true);
    if (measure) {
      found = true;
      ordered_json item;
      item["oracle"] = "lp";
      item["measure"] = measure_family_json(*instance.tree, *instance.space, *measure);
      report.findings.push_back(std::move(item));
    }
  } else {
    throw Error(ErrorKind::BadParams, "--method must be search, lp, or both");
  }

  report.status = found ? "found" : "not-found";
  report.add_timing("atoms", instance.space->size());
  report.add_timing("vertices", instance.tree->size());
  emit(report, opt);
  return 0;
}

// -- minimal-families ----------------------------------------------------------

int cmd_minimal_families(const std::string& path, const Options& opt) {
  const dendro::Instance instance = dendro::load_instance_file(path);
  const auto pairs = dendro::minimal_families(instance.morphism, opt.max_search);

  dendro::Report report;
  report.command = "minimal-families";
  report.inputs_digest = digest_paths({path});
  report.status = pairs.empty() ? "not-found" : "found";
  for (const auto& pair : pairs) {
    ordered_json item;
    item["closed"] = family_json(*instance.tree, *instance.space, pair.closed);
    item["hull"] = family_json(*instance.tree, *instance.space, pair.hull);
    report.findings.push_back(std::move(item));
  }
  report.add_timing("families", static_cast<long long>(pairs.size()));
  emit(report, opt);
  return 0;
}

// -- invariant-vectors -----------------------------------------------------------

int cmd_invariant_vectors(const std::string& path, const Options& opt) {
  const dendro::Instance instance = dendro::load_instance_file(path);
  const dendro::LambdaTable lambda(*instance.tree);
  const auto basis = dendro::invariant_vector_basis(instance.morphism, lambda);

  dendro::Report report;
  report.command = "invariant-vectors";
  report.inputs_digest = digest_paths({path});
  report.status = basis.empty() ? "not-found" : "found";
  ordered_json head;
  head["dimension"] = basis.size();
  report.findings.push_back(std::move(head));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    ordered_json item;
    item["name"] = "u" + std::to_string(k);
    item["rows"] = dendro::bochner_rows(*instance.space, lambda, basis[k]);
    report.findings.push_back(std::move(item));
  }
  report.add_timing("dimension", static_cast<long long>(basis.size()));
  report.add_timing("lambda", lambda.size());
  emit(report, opt);
  return 0;
}

// -- pipeline ---------------------------------------------------------------------

int cmd_pipeline(const std::string& path, const Options& opt) {
  const dendro::Instance instance = dendro::load_instance_file(path);
  const dendro::LambdaTable lambda(*instance.tree);
  const auto basis = dendro::invariant_vector_basis(instance.morphism, lambda);

  dendro::Report report;
  report.command = "pipeline";
  report.inputs_digest = digest_paths({path});

  if (basis.empty()) {
    // Unreachable with a finite group and a branching tree; documented as a
    // clean exit so path-shaped trees (empty branch index) stay usable.
    report.status = "not-found";
    ordered_json note;
    note["note"] = "no invariant vector: the branch-pair index is empty";
    report.findings.push_back(std::move(note));
    report.add_timing("vectors", 0);
    emit(report, opt);
    return 0;
  }

  const auto search = dendro::is_elementary_search(instance.morphism);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto family = dendro::elementarity_certificate(instance.morphism, lambda, basis[k]);
    if (!search) {
      throw Error(ErrorKind::OracleDisagreement,
                  "certificate succeeded but the family search found nothing");
    }
    ordered_json item;
    item["vector"] = "u" + std::to_string(k);
    item["certificate"] = family_json(*instance.tree, *instance.space, family);
    item["agrees_with_search"] = true;
    report.findings.push_back(std::move(item));
  }
  report.add_check("search-confirms-elementarity", search.has_value());
  if (search) {
    ordered_json item;
    item["search_family"] = family_json(*instance.tree, *instance.space, *search);
    report.findings.push_back(std::move(item));
  }
  report.status = "found";
  report.add_timing("vectors", static_cast<long long>(basis.size()));
  emit(report, opt);
  return 0;
}

// -- pullback ---------------------------------------------------------------------

int cmd_pullback(const std::string& path, const Options& opt) {
  const dendro::Instance instance = dendro::load_instance_file(path);
  if (!instance.boundary || !instance.phi) {
    throw Error(ErrorKind::BadParams, "pullback needs a boundary model and a phi map");
  }
  const dendro::LambdaTable lambda(*instance.tree);
  const auto [cochain, verdict] =
      dendro::pullback_class(instance.morphism, lambda, *instance.boundary, *instance.phi);

  dendro::Report report;
  report.command = "pullback";
  report.inputs_digest = digest_paths({path});
  report.add_check("alternating", verdict.alternating.ok, verdict.alternating.failure);
  report.add_check("invariance", verdict.invariance.ok, verdict.invariance.failure);
  report.add_check("coboundary", verdict.coboundary.ok, verdict.coboundary.failure);
  report.add_check("vanishing-dichotomy", verdict.dichotomy_consistent);

  ordered_json summary;
  summary["identically_zero"] = verdict.identically_zero;
  summary["small_essential_images"] = verdict.small_essential_images;
  long long nonzero = 0;
  for (const auto& entry : cochain.table) {
    if (!dendro::zero_on_support(*instance.space, entry)) ++nonzero;
  }
  summary["nonzero_triples"] = nonzero;
  report.findings.push_back(std::move(summary));

  report.add_timing("boundary_points", instance.boundary->size());
  report.add_timing("table_entries", static_cast<long long>(cochain.table.size()));
  report.add_timing("alternation_checks", verdict.alternating.checked);
  report.add_timing("coboundary_checks", verdict.coboundary.checked);
  return finish_pass_fail(report, opt);
}

// -- gen --------------------------------------------------------------------------

int cmd_gen(const std::string& kind, const std::string& out_path, const Options& opt) {
  const ordered_json doc = dendro::gen_document(kind, opt.seed);
  if (doc.contains("tree")) {
    dendro::parse_instance(doc);  // twist construction is valid by design; re-verify anyway
  } else {
    dendro::parse_tree(doc);
  }
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + out_path);
  out << text;
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cocycle toolkit for homeomorphism actions on finite dendrites"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--seed", opt.seed, "seed for every sampled or generated object");
  app.add_option("--format", opt.format, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-search", opt.max_search, "cap on enumerated search spaces");

  std::vector<std::string> validate_paths;
  auto* validate = app.add_subcommand("validate", "check documents against every law");
  validate->add_option("paths", validate_paths, "instance or tree files")->required();

  std::string analyze_path;
  auto* analyze = app.add_subcommand("analyze", "point classification and centers");
  analyze->add_option("path", analyze_path, "tree or instance file")->required();

  std::string omega_path, omega_p = "1";
  std::vector<std::string> omega_points;
  auto* omega_cmd = app.add_subcommand("omega", "median cocycle table of one triple");
  omega_cmd->add_option("path", omega_path, "tree file")->required();
  omega_cmd->add_option("--points", omega_points, "three vertex names")
      ->expected(3)
      ->required();
  omega_cmd->add_option("--p-norm", omega_p, "norm exponent: 1, 2, or inf");

  std::string cocheck_path;
  long long cocheck_samples = 0;
  auto* cocheck = app.add_subcommand("cocycle-check", "coboundary and symmetry checks");
  cocheck->add_option("path", cocheck_path, "tree file")->required();
  cocheck->add_option("--samples", cocheck_samples,
                      "sample this many quadruples instead of exhausting");

  std::string elem_path, elem_method = "both";
  auto* elem = app.add_subcommand("elementarity", "decide elementarity by two oracles");
  elem->add_option("path", elem_path, "instance file")->required();
  elem->add_option("--method", elem_method, "search, lp, or both");

  std::string minfam_path;
  auto* minfam = app.add_subcommand("minimal-families", "minimal equivariant closed families");
  minfam->add_option("path", minfam_path, "instance file")->required();

  std::string invvec_path;
  auto* invvec = app.add_subcommand("invariant-vectors", "basis of the fixed subspace");
  invvec->add_option("path", invvec_path, "instance file")->required();

  std::string pipeline_path;
  auto* pipeline = app.add_subcommand("pipeline", "invariant vector to certificate to oracle");
  pipeline->add_option("path", pipeline_path, "instance file")->required();

  std::string pullback_path;
  auto* pullback = app.add_subcommand("pullback", "pulled-back cochain verification");
  pullback->add_option("path", pullback_path, "instance file with boundary and phi")->required();

  std::string gen_kind, gen_out;
  auto* gen = app.add_subcommand("gen", "write deterministic corpus documents");
  gen->add_option("--kind", gen_kind, "what to generate")->required();
  gen->add_option("--out", gen_out, "output path (stdout when omitted)");

  for (auto* sub : {validate, analyze, omega_cmd, cocheck, elem, minfam, invvec, pipeline,
                    pullback, gen}) {
    sub->fallthrough();  // lets the global flags appear after the subcommand
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad arguments are input errors
  }

  try {
    if (*validate) return cmd_validate(validate_paths, opt);
    if (*analyze) return cmd_analyze(analyze_path, opt);
    if (*omega_cmd) return cmd_omega(omega_path, omega_points, omega_p, opt);
    if (*cocheck) return cmd_cocycle_check(cocheck_path, cocheck_samples, opt);
    if (*elem) return cmd_elementarity(elem_path, elem_method, opt);
    if (*minfam) return cmd_minimal_families(minfam_path, opt);
    if (*invvec) return cmd_invariant_vectors(invvec_path, opt);
    if (*pipeline) return cmd_pipeline(pipeline_path, opt);
    if (*pullback) return cmd_pullback(pullback_path, opt);
    if (*gen) return cmd_gen(gen_kind, gen_out, opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dendro::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
