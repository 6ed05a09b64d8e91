#ifndef DENDRO_INSTANCE_HPP
#define DENDRO_INSTANCE_HPP

#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dendro/bochner.hpp"
#include "dendro/cocycle.hpp"
#include "dendro/dendrite.hpp"

namespace dendro {

/// A fully parsed and verified instance document. Owns everything the
/// morphism points into; move-only.
struct Instance {
  std::unique_ptr<Dendrite> tree;
  std::unique_ptr<FiniteGroup> group;
  std::unique_ptr<ProbSpace> space;
  VirtualDendroMorphism morphism;

  std::unique_ptr<ProbSpace> boundary;  // null when the document has none
  std::optional<CandidateFurstenbergMap> phi;
  std::vector<std::pair<std::string, BochnerElement>> vectors;
};

/// Reads a JSON document; wraps syntax errors into ParseError.
nlohmann::json load_json_file(const std::string& path);

Dendrite parse_tree(const nlohmann::json& doc);
Dendrite load_tree_file(const std::string& path);

/// Canonical tree document: vertices ascending, edge rows [u, v] with
/// u < v, rows sorted.
nlohmann::ordered_json tree_to_json(const Dendrite& tree);

/// Parses, completes generator-given action/cocycle tables, and verifies
/// every structural invariant (tree, group laws, measure, cocycle identity).
Instance parse_instance(const nlohmann::json& doc);
Instance load_instance_file(const std::string& path);

/// Nonzero entries as rows [atom, base, first, second, "p/q"], in
/// (atom order, branch-pair order).
nlohmann::ordered_json bochner_rows(const ProbSpace& space, const LambdaTable& lambda,
                                    const BochnerElement& u);

/// Nonzero entries as rows [base, first, second, value], ordered by key.
nlohmann::ordered_json sparse_rows(const Dendrite& tree, const SparseBundleFunction& fn);

}  // namespace dendro

#endif
