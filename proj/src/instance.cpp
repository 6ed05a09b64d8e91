#include "dendro/instance.hpp"

#include <fstream>
#include <map>
#include <queue>

#include "dendro/error.hpp"
#include "dendro/rational.hpp"

namespace dendro {

namespace {

using nlohmann::json;

const json& require_field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw Error(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
  }
  return doc.at(key);
}

std::string as_string(const json& node, const char* what) {
  if (!node.is_string()) {
    throw Error(ErrorKind::ParseError, std::string(what) + " must be a string");
  }
  return node.get<std::string>();
}

int as_int(const json& node, const char* what) {
  if (!node.is_number_integer()) {
    throw Error(ErrorKind::ParseError, std::string(what) + " must be an integer");
  }
  return node.get<int>();
}

std::vector<std::string> string_array(const json& node, const char* what) {
  if (!node.is_array()) {
    throw Error(ErrorKind::ParseError, std::string(what) + " must be an array");
  }
  std::vector<std::string> out;
  for (const auto& item : node) out.push_back(as_string(item, what));
  return out;
}

int atom_index(const ProbSpace& space, const std::string& name) {
  const int s = space.find_atom(name);
  if (s < 0) throw Error(ErrorKind::ParseError, "unknown atom \"" + name + "\"");
  return s;
}

int element_index(const FiniteGroup& group, const std::string& name) {
  const int g = group.find(name);
  if (g < 0) throw Error(ErrorKind::ParseError, "unknown group element \"" + name + "\"");
  return g;
}

int vertex_index(const Dendrite& tree, const std::string& name) {
  const auto v = tree.find_vertex(name);
  if (!v) throw Error(ErrorKind::ParseError, "unknown vertex \"" + name + "\"");
  return *v;
}

FiniteGroup parse_group(const json& doc) {
  if (doc.contains("elements")) {
    std::vector<std::string> names = string_array(require_field(doc, "elements"), "element");
    const json& table_doc = require_field(doc, "table");
    if (!table_doc.is_array()) {
      throw Error(ErrorKind::ParseError, "group table must be an array of rows");
    }
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) index[names[i]] = i;
    std::vector<std::vector<int>> table;
    for (const auto& row_doc : table_doc) {
      std::vector<int> row;
      for (const auto& cell : row_doc) {
        const std::string name = as_string(cell, "table cell");
        auto it = index.find(name);
        if (it == index.end()) {
          throw Error(ErrorKind::ParseError, "unknown group element \"" + name + "\"");
        }
        row.push_back(it->second);
      }
      table.push_back(std::move(row));
    }
    return FiniteGroup::from_table(std::move(names), std::move(table));
  }

  const int degree = as_int(require_field(doc, "degree"), "permutation degree");
  const json& gens_doc = require_field(doc, "generators");
  std::vector<std::pair<std::string, std::vector<int>>> generators;
  for (const auto& gen : gens_doc) {
    const std::string name = as_string(require_field(gen, "name"), "generator name");
    const json& perm_doc = require_field(gen, "perm");
    std::vector<int> perm;
    for (const auto& v : perm_doc) perm.push_back(as_int(v, "permutation entry"));
    generators.emplace_back(name, std::move(perm));
  }
  return FiniteGroup::from_permutations(generators, degree);
}

/// Rows for a generating subset extend to the whole group through the
/// action law act(g h, s) = act(g, act(h, s)).
std::vector<std::vector<int>> complete_action(const FiniteGroup& group,
                                              const std::vector<std::string>& atoms,
                                              const std::map<int, std::vector<int>>& given) {
  const int na = static_cast<int>(atoms.size());
  std::vector<std::vector<int>> known(group.size());
  std::vector<char> have(group.size(), 0);

  std::vector<int> identity_row(na);
  for (int s = 0; s < na; ++s) identity_row[s] = s;
  known[group.identity()] = identity_row;
  have[group.identity()] = 1;

  for (const auto& [g, row] : given) {
    if (have[g]) {
      if (known[g] != row) {
        throw Error(ErrorKind::ActionInvalid, "conflicting action rows for " + group.name(g));
      }
    } else {
      known[g] = row;
      have[g] = 1;
    }
  }

  std::queue<int> work;
  for (int g = 0; g < group.size(); ++g) {
    if (have[g]) work.push(g);
  }
  while (!work.empty()) {
    const int g = work.front();
    work.pop();
    for (const auto& [h, row_h] : given) {
      const int k = group.mul(g, h);
      std::vector<int> derived(na);
      for (int s = 0; s < na; ++s) derived[s] = known[g][row_h[s]];
      if (have[k]) {
        if (known[k] != derived) {
          throw Error(ErrorKind::ActionInvalid,
                      "action rows are inconsistent at element " + group.name(k));
        }
      } else {
        known[k] = std::move(derived);
        have[k] = 1;
        work.push(k);
      }
    }
  }
  for (int g = 0; g < group.size(); ++g) {
    if (!have[g]) {
      throw Error(ErrorKind::ActionInvalid,
                  "action rows do not determine element " + group.name(g));
    }
  }
  return known;
}

std::unique_ptr<ProbSpace> parse_space(const json& doc, const FiniteGroup& group,
                                       const char* atoms_key) {
  std::vector<std::string> atoms = string_array(require_field(doc, atoms_key), atoms_key);

  const json& measure_doc = require_field(doc, "measure");
  std::map<std::string, int> atom_of;
  for (int i = 0; i < static_cast<int>(atoms.size()); ++i) atom_of[atoms[i]] = i;
  std::vector<Rat> measure(atoms.size(), Rat(0));
  if (!measure_doc.is_object()) {
    throw Error(ErrorKind::ParseError, "measure must map atoms to rationals");
  }
  for (const auto& [name, value] : measure_doc.items()) {
    auto it = atom_of.find(name);
    if (it == atom_of.end()) {
      throw Error(ErrorKind::ParseError, "measure names unknown atom \"" + name + "\"");
    }
    measure[it->second] = rat_from_string(as_string(value, "measure value"));
  }

  const json& action_doc = require_field(doc, "action");
  if (!action_doc.is_object()) {
    throw Error(ErrorKind::ParseError, "action must map elements to atom rows");
  }
  std::map<int, std::vector<int>> given;
  for (const auto& [element_name, row_doc] : action_doc.items()) {
    const int g = element_index(group, element_name);
    std::vector<int> row;
    for (const auto& target : row_doc) {
      const std::string target_name = as_string(target, "action image");
      auto it = atom_of.find(target_name);
      if (it == atom_of.end()) {
        throw Error(ErrorKind::ParseError, "action names unknown atom \"" + target_name + "\"");
      }
      row.push_back(it->second);
    }
    if (row.size() != atoms.size()) {
      throw Error(ErrorKind::ParseError,
                  "action row for " + element_name + " does not cover every atom");
    }
    given[g] = std::move(row);
  }

  std::vector<std::vector<int>> action = complete_action(group, atoms, given);
  return std::make_unique<ProbSpace>(&group, std::move(atoms), std::move(measure),
                                     std::move(action));
}

Automorphism parse_vertex_map(const json& doc, const Dendrite& tree) {
  if (!doc.is_object()) {
    throw Error(ErrorKind::ParseError, "vertex map must be an object");
  }
  Automorphism out;
  out.map.assign(tree.size(), -1);
  for (const auto& [from, to] : doc.items()) {
    out.map[vertex_index(tree, from)] = vertex_index(tree, as_string(to, "vertex image"));
  }
  for (int v = 0; v < tree.size(); ++v) {
    if (out.map[v] < 0) {
      throw Error(ErrorKind::ParseError,
                  "vertex map does not cover vertex \"" + tree.id(v) + "\"");
    }
  }
  return out;
}

}  // namespace

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

Dendrite parse_tree(const json& doc) {
  std::vector<std::string> vertices = string_array(require_field(doc, "vertices"), "vertex");
  const json& edges_doc = require_field(doc, "edges");
  if (!edges_doc.is_array()) {
    throw Error(ErrorKind::ParseError, "edges must be an array of pairs");
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& edge : edges_doc) {
    if (!edge.is_array() || edge.size() != 2) {
      throw Error(ErrorKind::ParseError, "each edge must be a pair of vertex names");
    }
    edges.emplace_back(as_string(edge[0], "edge endpoint"), as_string(edge[1], "edge endpoint"));
  }
  return Dendrite::validate(std::move(vertices), std::move(edges));
}

Dendrite load_tree_file(const std::string& path) { return parse_tree(load_json_file(path)); }

nlohmann::ordered_json tree_to_json(const Dendrite& tree) {
  nlohmann::ordered_json doc;
  doc["vertices"] = tree.ids();
  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& [u, v] : tree.edges()) {
    edges.push_back({tree.id(u), tree.id(v)});
  }
  return doc;
}

Instance parse_instance(const json& doc) {
  Instance out;
  out.tree = std::make_unique<Dendrite>(parse_tree(require_field(doc, "tree")));
  out.group = std::make_unique<FiniteGroup>(parse_group(require_field(doc, "group")));
  out.space = parse_space(require_field(doc, "space"), *out.group, "atoms");

  const json& sigma_doc = require_field(doc, "sigma");
  if (!sigma_doc.is_object()) {
    throw Error(ErrorKind::ParseError, "sigma must map elements to per-atom vertex maps");
  }
  std::vector<std::pair<int, std::vector<Automorphism>>> given;
  for (const auto& [element_name, per_atom] : sigma_doc.items()) {
    const int g = element_index(*out.group, element_name);
    if (!per_atom.is_object()) {
      throw Error(ErrorKind::ParseError, "sigma row must map atoms to vertex maps");
    }
    std::vector<Automorphism> row(out.space->size());
    std::vector<char> have(out.space->size(), 0);
    for (const auto& [atom_name, vmap] : per_atom.items()) {
      const int s = atom_index(*out.space, atom_name);
      row[s] = parse_vertex_map(vmap, *out.tree);
      have[s] = 1;
    }
    for (int s = 0; s < out.space->size(); ++s) {
      if (!have[s]) {
        throw Error(ErrorKind::ParseError, "sigma row for " + element_name +
                                               " misses atom \"" + out.space->atom(s) + "\"");
      }
    }
    given.emplace_back(g, std::move(row));
  }
  out.morphism = verify_cocycle(*out.space, *out.tree, given);

  if (doc.contains("boundary")) {
    out.boundary = parse_space(doc.at("boundary"), *out.group, "points");
  }

  if (doc.contains("phi")) {
    if (!out.boundary) {
      throw Error(ErrorKind::ParseError, "phi needs a boundary model");
    }
    const json& phi_doc = doc.at("phi");
    CandidateFurstenbergMap phi;
    phi.assignment.assign(out.boundary->size(),
                          std::vector<int>(out.space->size(), -1));
    if (!phi_doc.is_object()) {
      throw Error(ErrorKind::ParseError, "phi must map boundary points to per-atom vertices");
    }
    for (const auto& [point_name, per_atom] : phi_doc.items()) {
      const int b = out.boundary->find_atom(point_name);
      if (b < 0) {
        throw Error(ErrorKind::ParseError, "phi names unknown boundary point \"" + point_name +
                                               "\"");
      }
      for (const auto& [atom_name, vertex_name] : per_atom.items()) {
        phi.assignment[b][atom_index(*out.space, atom_name)] =
            vertex_index(*out.tree, as_string(vertex_name, "phi value"));
      }
    }
    for (int b = 0; b < out.boundary->size(); ++b) {
      for (int s = 0; s < out.space->size(); ++s) {
        if (phi.assignment[b][s] < 0) {
          throw Error(ErrorKind::ParseError,
                      "phi misses (" + out.boundary->atom(b) + "," + out.space->atom(s) + ")");
        }
      }
    }
    out.phi = std::move(phi);
  }

  if (doc.contains("vectors")) {
    const LambdaTable lambda(*out.tree);
    for (const auto& vec_doc : doc.at("vectors")) {
      const std::string name = as_string(require_field(vec_doc, "name"), "vector name");
      BochnerElement u(out.space->size(), lambda.size());
      for (const auto& row : require_field(vec_doc, "rows")) {
        if (!row.is_array() || row.size() != 5) {
          throw Error(ErrorKind::ParseError,
                      "vector rows are [atom, base, first, second, value]");
        }
        const int s = atom_index(*out.space, as_string(row[0], "vector atom"));
        LambdaIndex lam{vertex_index(*out.tree, as_string(row[1], "vector base")),
                        vertex_index(*out.tree, as_string(row[2], "vector component")),
                        vertex_index(*out.tree, as_string(row[3], "vector component"))};
        int index = -1;
        try {
          index = lambda.index_of(lam);
        } catch (const Error&) {
          throw Error(ErrorKind::ParseError, "vector row is not a branch-pair coordinate");
        }
        u.set(s, index, rat_from_string(as_string(row[4], "vector value")));
      }
      out.vectors.emplace_back(name, std::move(u));
    }
  }

  return out;
}

Instance load_instance_file(const std::string& path) {
  return parse_instance(load_json_file(path));
}

nlohmann::ordered_json bochner_rows(const ProbSpace& space, const LambdaTable& lambda,
                                    const BochnerElement& u) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  const Dendrite& tree = lambda.tree();
  for (int s = 0; s < space.size(); ++s) {
    for (int i = 0; i < lambda.size(); ++i) {
      if (u.at(s, i) == 0) continue;
      const LambdaIndex& lam = lambda.at(i);
      rows.push_back({space.atom(s), tree.id(lam.base), tree.id(lam.first), tree.id(lam.second),
                      rat_to_string(u.at(s, i))});
    }
  }
  return rows;
}

nlohmann::ordered_json sparse_rows(const Dendrite& tree, const SparseBundleFunction& fn) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [key, value] : fn.entries()) {
    rows.push_back({tree.id(std::get<0>(key)), tree.id(std::get<1>(key)),
                    tree.id(std::get<2>(key)), value});
  }
  return rows;
}

}  // namespace dendro
