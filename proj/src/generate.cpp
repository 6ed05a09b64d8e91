#include "dendro/generate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>

#include "dendro/error.hpp"
#include "dendro/group.hpp"
#include "dendro/instance.hpp"
#include "dendro/rational.hpp"

namespace dendro {

namespace {

using nlohmann::ordered_json;

// -- deterministic randomness -------------------------------------------

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  // Distinct, reproducible stream per (seed, index).
  return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + (index + 1) * 0xBF58476D1CE4E5B9ULL);
}

int draw(std::mt19937_64& rng, int bound) { return static_cast<int>(rng() % bound); }

// -- group catalog -------------------------------------------------------

struct GroupRecipe {
  std::string label;
  int degree = 0;
  std::vector<std::pair<std::string, std::vector<int>>> generators;
};

std::vector<int> cycle_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

std::vector<int> reverse_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
  return p;
}

const std::vector<GroupRecipe>& group_catalog() {
  static const std::vector<GroupRecipe> catalog = [] {
    std::vector<GroupRecipe> out;
    for (int n : {2, 3, 4, 5, 6, 8, 12}) {
      out.push_back({"z" + std::to_string(n), n, {{"a", cycle_perm(n)}}});
    }
    out.push_back({"klein4", 4, {{"a", {1, 0, 3, 2}}, {"b", {2, 3, 0, 1}}}});
    for (int n : {3, 4, 5, 6}) {
      out.push_back(
          {"d" + std::to_string(n), n, {{"a", cycle_perm(n)}, {"b", reverse_perm(n)}}});
    }
    out.push_back({"a4", 4, {{"a", {1, 2, 0, 3}}, {"b", {1, 0, 3, 2}}}});
    return out;
  }();
  return catalog;
}

ordered_json group_json(const GroupRecipe& recipe) {
  ordered_json doc;
  doc["degree"] = recipe.degree;
  auto& gens = doc["generators"] = ordered_json::array();
  for (const auto& [name, perm] : recipe.generators) {
    ordered_json g;
    g["name"] = name;
    g["perm"] = perm;
    gens.push_back(std::move(g));
  }
  return doc;
}

// -- coset actions -------------------------------------------------------

struct CosetAction {
  int count = 0;
  std::vector<int> coset_of;  // group element -> coset index
};

CosetAction coset_action(const FiniteGroup& group, const std::vector<int>& subgroup) {
  const auto cosets = group.left_cosets(subgroup);
  CosetAction out;
  out.count = static_cast<int>(cosets.size());
  out.coset_of.assign(group.size(), -1);
  for (int k = 0; k < out.count; ++k) {
    for (int g : cosets[k]) out.coset_of[g] = k;
  }
  return out;
}

/// Transitive action on at most `max_atoms` points: left translation on the
/// cosets of a randomly generated subgroup. Falls back to the one-point
/// action when no small enough coset space shows up.
CosetAction small_coset_action(const FiniteGroup& group, int max_atoms,
                               std::mt19937_64& rng, int min_atoms = 1) {
  for (int attempt = 0; attempt < 24; ++attempt) {
    std::vector<int> seed;
    const int picks = draw(rng, 3);
    for (int i = 0; i < picks; ++i) seed.push_back(draw(rng, group.size()));
    const auto subgroup = group.generated_subgroup(seed);
    const int count = group.size() / static_cast<int>(subgroup.size());
    if (count <= max_atoms && count >= min_atoms) return coset_action(group, subgroup);
  }
  std::vector<int> everything(group.size());
  for (int g = 0; g < group.size(); ++g) everything[g] = g;
  return coset_action(group, everything);
}

/// Full action table: atom k is the coset of its least representative, and
/// g sends it to the coset of g * rep.
std::vector<std::vector<int>> action_table(const FiniteGroup& group, const CosetAction& act) {
  std::vector<int> rep(act.count, -1);
  for (int g = group.size() - 1; g >= 0; --g) rep[act.coset_of[g]] = g;
  std::vector<std::vector<int>> table(group.size(), std::vector<int>(act.count));
  for (int g = 0; g < group.size(); ++g) {
    for (int k = 0; k < act.count; ++k) table[g][k] = act.coset_of[group.mul(g, rep[k])];
  }
  return table;
}

ordered_json space_json(const FiniteGroup& group, const std::vector<std::vector<int>>& action,
                        const std::string& atom_prefix, const char* atoms_key) {
  const int count = static_cast<int>(action.empty() ? 0 : action[0].size());
  std::vector<std::string> atoms;
  for (int k = 0; k < count; ++k) atoms.push_back(atom_prefix + std::to_string(k));

  ordered_json doc;
  doc[atoms_key] = atoms;
  auto& measure = doc["measure"] = ordered_json::object();
  const std::string uniform = "1/" + std::to_string(count);
  for (const auto& atom : atoms) measure[atom] = uniform;

  auto& rows = doc["action"] = ordered_json::object();
  for (int g : group.generators()) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < count; ++k) row.push_back(atoms[action[g][k]]);
    rows[group.name(g)] = std::move(row);
  }
  if (group.generators().empty()) rows = ordered_json::object();
  return doc;
}

// -- random cocycles -----------------------------------------------------

/// Group homomorphism into the automorphism list, found by guessing images
/// of a generating set and closing under products. All-identity fallback.
std::vector<Automorphism> random_homomorphism(const FiniteGroup& group,
                                              const std::vector<Automorphism>& autos,
                                              std::mt19937_64& rng) {
  const auto& gens = group.generators();
  const Automorphism id = autos.front();  // sorted list starts at identity

  for (int attempt = 0; attempt < 40; ++attempt) {
    std::vector<std::pair<int, Automorphism>> images;
    for (int g : gens) images.emplace_back(g, autos[draw(rng, static_cast<int>(autos.size()))]);

    std::vector<Automorphism> rho(group.size());
    std::vector<char> have(group.size(), 0);
    rho[group.identity()] = id;
    have[group.identity()] = 1;

    bool consistent = true;
    std::queue<int> work;
    work.push(group.identity());
    while (!work.empty() && consistent) {
      const int g = work.front();
      work.pop();
      for (const auto& [h, image] : images) {
        const int k = group.mul(g, h);
        const Automorphism candidate = rho[g].compose(image);
        if (have[k]) {
          if (!(rho[k] == candidate)) {
            consistent = false;
            break;
          }
        } else {
          rho[k] = candidate;
          have[k] = 1;
          work.push(k);
        }
      }
    }
    if (!consistent) continue;
    for (int a = 0; a < group.size() && consistent; ++a) {
      for (int b = 0; b < group.size() && consistent; ++b) {
        if (!(rho[group.mul(a, b)] == rho[a].compose(rho[b]))) consistent = false;
      }
    }
    if (consistent) return rho;
  }
  return std::vector<Automorphism>(group.size(), id);
}

ordered_json vertex_map_json(const Dendrite& tree, const Automorphism& g) {
  ordered_json doc = ordered_json::object();
  for (int v = 0; v < tree.size(); ++v) doc[tree.id(v)] = tree.id(g(v));
  return doc;
}

/// Sigma rows for the group's generating set: a constant homomorphism
/// cocycle conjugated by a random atom-indexed twist family.
ordered_json sigma_json(const Dendrite& tree, const FiniteGroup& group,
                        const std::vector<std::vector<int>>& action,
                        const std::vector<Automorphism>& rho,
                        const std::vector<Automorphism>& twist_family) {
  ordered_json doc = ordered_json::object();
  const int atoms = static_cast<int>(action[0].size());
  for (int g : group.generators()) {
    ordered_json row = ordered_json::object();
    for (int s = 0; s < atoms; ++s) {
      const Automorphism value =
          twist_family[action[g][s]].inverse().compose(rho[g].compose(twist_family[s]));
      row["s" + std::to_string(s)] = vertex_map_json(tree, value);
    }
    doc[group.name(g)] = std::move(row);
  }
  return doc;
}

Dendrite corpus_tree(std::mt19937_64& rng, bool star_only) {
  if (star_only) return make_star(3 + draw(rng, 4));
  switch (draw(rng, 3)) {
    case 0:
      return make_path(3 + draw(rng, 5));
    case 1:
      return make_star(3 + draw(rng, 4));
    default:
      return make_random_tree(4 + draw(rng, 4), rng());
  }
}

struct CocycleDraft {
  Dendrite tree;
  FiniteGroup group;
  const GroupRecipe* recipe = nullptr;
  std::vector<Automorphism> autos;
  std::vector<std::vector<int>> action;
  std::vector<Automorphism> rho;
  std::vector<Automorphism> twist_family;
};

CocycleDraft draw_cocycle(std::mt19937_64& rng, bool star_only) {
  const GroupRecipe& recipe = group_catalog()[draw(rng, static_cast<int>(group_catalog().size()))];
  FiniteGroup group = FiniteGroup::from_permutations(recipe.generators, recipe.degree);
  Dendrite tree = corpus_tree(rng, star_only);
  std::vector<Automorphism> autos = automorphisms(tree);
  std::vector<std::vector<int>> action = action_table(group, small_coset_action(group, 4, rng));
  std::vector<Automorphism> rho = random_homomorphism(group, autos, rng);
  std::vector<Automorphism> twist_family;
  const int atoms = static_cast<int>(action[0].size());
  for (int s = 0; s < atoms; ++s) {
    twist_family.push_back(autos[draw(rng, static_cast<int>(autos.size()))]);
  }
  return CocycleDraft{std::move(tree),   std::move(group), &recipe,
                      std::move(autos),  std::move(action), std::move(rho),
                      std::move(twist_family)};
}

ordered_json draft_to_document(const CocycleDraft& draft) {
  ordered_json doc;
  doc["tree"] = tree_to_json(draft.tree);
  doc["group"] = group_json(*draft.recipe);
  doc["space"] = space_json(draft.group, draft.action, "s", "atoms");
  doc["sigma"] =
      sigma_json(draft.tree, draft.group, draft.action, draft.rho, draft.twist_family);
  return doc;
}

// -- boundary models -----------------------------------------------------

/// Sigma value for an arbitrary element, rebuilt from the draft's twist
/// formula (rows in the document only cover generators).
Automorphism sigma_value(const CocycleDraft& draft, int g, int s) {
  return draft.twist_family[draft.action[g][s]].inverse().compose(
      draft.rho[g].compose(draft.twist_family[s]));
}

/// Equivariant leaf assignment on one diagonal orbit of (point, atom)
/// pairs; empty when no leaf seed propagates consistently.
bool seed_orbit(const CocycleDraft& draft, const std::vector<std::vector<int>>& boundary_action,
                int b0, int s0, int leaf, std::vector<std::vector<int>>& phi) {
  const int points = static_cast<int>(boundary_action[0].size());
  const int atoms = static_cast<int>(draft.action[0].size());
  std::vector<std::vector<int>> trial(points, std::vector<int>(atoms, -1));
  trial[b0][s0] = leaf;
  std::queue<std::pair<int, int>> work;
  work.push({b0, s0});
  std::vector<std::pair<int, int>> orbit{{b0, s0}};
  while (!work.empty()) {
    const auto [b, s] = work.front();
    work.pop();
    for (int g = 0; g < draft.group.size(); ++g) {
      const int nb = boundary_action[g][b];
      const int ns = draft.action[g][s];
      const int value = sigma_value(draft, g, s)(trial[b][s]);
      if (trial[nb][ns] < 0) {
        trial[nb][ns] = value;
        work.push({nb, ns});
        orbit.push_back({nb, ns});
      } else if (trial[nb][ns] != value) {
        return false;
      }
    }
  }
  for (const auto& [b, s] : orbit) phi[b][s] = trial[b][s];
  return true;
}

ordered_json phi_json(const CocycleDraft& draft, const std::vector<std::vector<int>>& phi) {
  ordered_json doc = ordered_json::object();
  for (int b = 0; b < static_cast<int>(phi.size()); ++b) {
    ordered_json row = ordered_json::object();
    for (int s = 0; s < static_cast<int>(phi[b].size()); ++s) {
      row["s" + std::to_string(s)] = draft.tree.id(phi[b][s]);
    }
    doc["b" + std::to_string(b)] = std::move(row);
  }
  return doc;
}

ordered_json boundary_document(std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng = stream_rng(seed, index * 2 + 1);
  // Stars keep the Jordan center at a vertex, so the constant fallback map
  // below is always equivariant.
  CocycleDraft draft = draw_cocycle(rng, /*star_only=*/true);
  const auto boundary_action =
      action_table(draft.group, small_coset_action(draft.group, 4, rng, 2));
  const int points = static_cast<int>(boundary_action[0].size());
  const int atoms = static_cast<int>(draft.action[0].size());

  std::vector<int> leaves;
  for (int v = 0; v < draft.tree.size(); ++v) {
    if (draft.tree.degree(v) == 1) leaves.push_back(v);
  }
  const int center = median(draft.tree, leaves[0], leaves[1], leaves[2]);

  std::vector<std::vector<int>> phi(points, std::vector<int>(atoms, -1));
  const bool constant_map = draw(rng, 5) < 2;
  if (constant_map) {
    for (auto& row : phi) std::fill(row.begin(), row.end(), center);
  } else {
    for (int b = 0; b < points; ++b) {
      for (int s = 0; s < atoms; ++s) {
        if (phi[b][s] >= 0) continue;
        bool seeded = false;
        const int offset = draw(rng, static_cast<int>(leaves.size()));
        for (int t = 0; t < static_cast<int>(leaves.size()) && !seeded; ++t) {
          seeded = seed_orbit(draft, boundary_action, b, s,
                              leaves[(offset + t) % leaves.size()], phi);
        }
        if (!seeded) {
          // No leaf works on this orbit; retreat to the fixed center, which
          // every automorphism preserves.
          for (auto& row : phi) std::fill(row.begin(), row.end(), center);
          b = points;
          break;
        }
      }
    }
  }

  ordered_json doc = draft_to_document(draft);
  doc["boundary"] = space_json(draft.group, boundary_action, "b", "points");
  doc["phi"] = phi_json(draft, phi);
  return doc;
}

// -- fixed fixtures ------------------------------------------------------

ordered_json fixture_star_z2() {
  ordered_json doc;
  doc["tree"] = tree_to_json(make_star(3));
  doc["group"] = ordered_json{{"degree", 2},
                              {"generators", {{{"name", "a"}, {"perm", {1, 0}}}}}};
  doc["space"] = ordered_json{
      {"atoms", {"s0"}}, {"measure", {{"s0", "1/1"}}}, {"action", {{"a", {"s0"}}}}};
  doc["sigma"] = ordered_json{
      {"a", {{"s0", {{"c", "c"}, {"l1", "l3"}, {"l2", "l2"}, {"l3", "l1"}}}}}};
  return doc;
}

ordered_json fixture_path_z2() {
  ordered_json doc;
  doc["tree"] = tree_to_json(make_path(3));
  doc["group"] = ordered_json{{"degree", 2},
                              {"generators", {{{"name", "a"}, {"perm", {1, 0}}}}}};
  doc["space"] = ordered_json{
      {"atoms", {"s0"}}, {"measure", {{"s0", "1/1"}}}, {"action", {{"a", {"s0"}}}}};
  doc["sigma"] =
      ordered_json{{"a", {{"s0", {{"a", "c"}, {"b", "b"}, {"c", "a"}}}}}};
  return doc;
}

ordered_json fixture_star_rot() {
  ordered_json doc;
  doc["tree"] = tree_to_json(make_star(3));
  doc["group"] = ordered_json{{"degree", 3},
                              {"generators", {{{"name", "a"}, {"perm", {1, 2, 0}}}}}};
  doc["space"] = ordered_json{
      {"atoms", {"s0"}}, {"measure", {{"s0", "1/1"}}}, {"action", {{"a", {"s0"}}}}};
  doc["sigma"] = ordered_json{
      {"a", {{"s0", {{"c", "c"}, {"l1", "l2"}, {"l2", "l3"}, {"l3", "l1"}}}}}};
  return doc;
}

std::optional<int> parse_suffix_int(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    return std::nullopt;
  }
  return std::stoi(text);
}

ordered_json tree_document(const std::string& kind, std::uint64_t seed) {
  const std::string rest = kind.substr(5);  // past "tree-"
  const auto dash = rest.find('-');
  const std::string shape = dash == std::string::npos ? rest : rest.substr(0, dash);
  const std::string params = dash == std::string::npos ? "" : rest.substr(dash + 1);

  if (shape == "path") {
    const auto n = parse_suffix_int(params);
    if (!n || *n < 1) throw Error(ErrorKind::BadParams, "tree-path-N needs N >= 1");
    return tree_to_json(make_path(*n));
  }
  if (shape == "star") {
    const auto k = parse_suffix_int(params);
    if (!k || *k < 3) throw Error(ErrorKind::BadParams, "tree-star-K needs K >= 3");
    return tree_to_json(make_star(*k));
  }
  if (shape == "random") {
    const auto n = parse_suffix_int(params);
    if (!n || *n < 1) throw Error(ErrorKind::BadParams, "tree-random-N needs N >= 1");
    return tree_to_json(make_random_tree(*n, seed));
  }
  if (shape == "wazewski") {
    const auto dash2 = params.find('-');
    if (dash2 == std::string::npos) {
      throw Error(ErrorKind::BadParams, "tree-wazewski-D-R needs a degree and a depth");
    }
    const auto d = parse_suffix_int(params.substr(0, dash2));
    const auto r = parse_suffix_int(params.substr(dash2 + 1));
    if (!d || !r || *d < 3 || *r < 0) {
      throw Error(ErrorKind::BadParams, "tree-wazewski-D-R needs D >= 3, R >= 0");
    }
    return tree_to_json(make_wazewski_approx(*d, *r));
  }
  throw Error(ErrorKind::BadParams, "unknown tree kind \"" + kind + "\"");
}

}  // namespace

std::vector<NamedTree> standard_tree_corpus(int max_vertices) {
  std::vector<NamedTree> out;
  auto keep = [&](std::string name, Dendrite tree) {
    if (tree.size() <= max_vertices) out.push_back({std::move(name), std::move(tree)});
  };
  for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 12, 16, 20}) {
    keep("path-" + std::to_string(n), make_path(n));
  }
  for (int k : {3, 4, 5, 6, 7, 10, 19}) {
    keep("star-" + std::to_string(k), make_star(k));
  }
  for (auto [n, seed] : std::initializer_list<std::pair<int, int>>{
           {5, 101}, {6, 102}, {7, 103}, {8, 104}, {10, 105}, {13, 106}, {20, 108}}) {
    keep("random-" + std::to_string(n) + "-s" + std::to_string(seed),
         make_random_tree(n, seed));
  }
  keep("wazewski-3-1", make_wazewski_approx(3, 1));
  keep("wazewski-4-1", make_wazewski_approx(4, 1));
  keep("wazewski-3-2", make_wazewski_approx(3, 2));
  return out;
}

nlohmann::ordered_json gen_document(const std::string& kind, std::uint64_t seed) {
  if (kind == "star-z2") return fixture_star_z2();
  if (kind == "path-z2") return fixture_path_z2();
  if (kind == "star-rot") return fixture_star_rot();
  if (kind == "random-cocycle") return instance_corpus(1, seed)[0];
  if (kind == "random-boundary") return boundary_instance_corpus(1, seed)[0];
  if (kind.rfind("tree-", 0) == 0) return tree_document(kind, seed);
  throw Error(ErrorKind::BadParams, "unknown gen kind \"" + kind + "\"");
}

std::vector<nlohmann::ordered_json> instance_corpus(int count, std::uint64_t seed) {
  std::vector<ordered_json> out;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng = stream_rng(seed, static_cast<std::uint64_t>(i) * 2);
    out.push_back(draft_to_document(draw_cocycle(rng, /*star_only=*/false)));
  }
  return out;
}

std::vector<nlohmann::ordered_json> boundary_instance_corpus(int count, std::uint64_t seed) {
  std::vector<ordered_json> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(boundary_document(seed, static_cast<std::uint64_t>(i)));
  }
  return out;
}

std::vector<Automorphism> random_automorphism_family(const Dendrite& tree, int atoms,
                                                     std::mt19937_64& rng) {
  const auto autos = automorphisms(tree);
  std::vector<Automorphism> out;
  for (int s = 0; s < atoms; ++s) out.push_back(autos[draw(rng, static_cast<int>(autos.size()))]);
  return out;
}

}  // namespace dendro
