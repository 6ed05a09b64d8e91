#include "dendro/cocycle.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dendro/error.hpp"
#include "dendro/simplex.hpp"

namespace dendro {

namespace {

std::vector<int> apply_to_set(const Automorphism& g, const std::vector<int>& set) {
  std::vector<int> out;
  out.reserve(set.size());
  for (int v : set) out.push_back(g(v));
  std::sort(out.begin(), out.end());
  return out;
}

void check_full_identity(const VirtualDendroMorphism& vdm) {
  const FiniteGroup& grp = vdm.group();
  const ProbSpace& space = *vdm.space;
  for (int a = 0; a < grp.size(); ++a) {
    for (int b = 0; b < grp.size(); ++b) {
      const int ab = grp.mul(a, b);
      for (int s = 0; s < space.size(); ++s) {
        const Automorphism want = vdm.at(a, space.act(b, s)).compose(vdm.at(b, s));
        if (!(vdm.at(ab, s) == want)) {
          throw Error(ErrorKind::CocycleIdentityViolated,
                      "composition identity fails at (" + grp.name(a) + "," + grp.name(b) + "," +
                          space.atom(s) + ")");
        }
      }
    }
  }
}

void check_rows_shape(const VirtualDendroMorphism& vdm) {
  const int ne = vdm.group().size();
  const int na = vdm.space->size();
  if (static_cast<int>(vdm.table.size()) != ne) {
    throw Error(ErrorKind::IncompleteTable, "cocycle table does not cover every element");
  }
  for (const auto& row : vdm.table) {
    if (static_cast<int>(row.size()) != na) {
      throw Error(ErrorKind::IncompleteTable, "cocycle row does not cover every atom");
    }
    for (const Automorphism& g : row) {
      if (!is_automorphism(*vdm.tree, g.map)) {
        throw Error(ErrorKind::ActionInvalid, "cocycle value is not a tree automorphism");
      }
    }
  }
}

}  // namespace

VirtualDendroMorphism verify_cocycle(
    const ProbSpace& space, const Dendrite& tree,
    const std::vector<std::pair<int, std::vector<Automorphism>>>& given) {
  const FiniteGroup& grp = space.group();
  const int ne = grp.size();
  const int na = space.size();

  std::vector<std::vector<std::vector<Automorphism>>> known(ne);  // empty or one row
  auto have = [&](int g) { return !known[g].empty(); };
  auto row_of = [&](int g) -> std::vector<Automorphism>& { return known[g][0]; };

  const std::vector<Automorphism> identity_row(na, identity_automorphism(tree));
  known[grp.identity()].push_back(identity_row);

  for (const auto& [g, row] : given) {
    if (g < 0 || g >= ne) throw Error(ErrorKind::BadParams, "cocycle row for unknown element");
    if (static_cast<int>(row.size()) != na) {
      throw Error(ErrorKind::IncompleteTable, "cocycle row does not cover every atom");
    }
    for (const Automorphism& a : row) {
      if (!is_automorphism(tree, a.map)) {
        throw Error(ErrorKind::ActionInvalid, "cocycle value is not a tree automorphism");
      }
    }
    if (have(g)) {
      if (!(row_of(g) == row)) {
        throw Error(g == grp.identity() ? ErrorKind::CocycleIdentityViolated
                                        : ErrorKind::ParseError,
                    "conflicting rows for element " + grp.name(g));
      }
    } else {
      known[g].push_back(row);
    }
  }

  // Derive the rest of the table by right-multiplying with the given
  // elements; collisions with already-known rows check the relations.
  std::queue<int> work;
  for (int g = 0; g < ne; ++g) {
    if (have(g)) work.push(g);
  }
  while (!work.empty()) {
    const int g = work.front();
    work.pop();
    for (const auto& [h, row_h] : given) {
      const int k = grp.mul(g, h);
      std::vector<Automorphism> derived(na);
      for (int s = 0; s < na; ++s) {
        derived[s] = row_of(g)[space.act(h, s)].compose(row_h[s]);
      }
      if (have(k)) {
        if (!(row_of(k) == derived)) {
          throw Error(ErrorKind::CocycleIdentityViolated,
                      "derived rows disagree at element " + grp.name(k) +
                          " (relation inconsistency)");
        }
      } else {
        known[k].push_back(std::move(derived));
        work.push(k);
      }
    }
  }

  for (int g = 0; g < ne; ++g) {
    if (!have(g)) {
      throw Error(ErrorKind::IncompleteTable,
                  "given rows do not generate a row for element " + grp.name(g));
    }
  }

  VirtualDendroMorphism vdm;
  vdm.space = &space;
  vdm.tree = &tree;
  vdm.table.reserve(ne);
  for (int g = 0; g < ne; ++g) vdm.table.push_back(std::move(row_of(g)));
  check_full_identity(vdm);
  return vdm;
}

std::pair<int, int> skew_action(const VirtualDendroMorphism& vdm, int g, std::pair<int, int> sa) {
  return {vdm.space->act(g, sa.first), vdm.at(g, sa.first)(sa.second)};
}

CheckOutcome check_skew_action_law(const VirtualDendroMorphism& vdm) {
  CheckOutcome outcome;
  const FiniteGroup& grp = vdm.group();
  for (int a = 0; a < grp.size(); ++a) {
    for (int b = 0; b < grp.size(); ++b) {
      const int ab = grp.mul(a, b);
      for (int s = 0; s < vdm.space->size(); ++s) {
        for (int x = 0; x < vdm.tree->size(); ++x) {
          ++outcome.checked;
          const auto direct = skew_action(vdm, ab, {s, x});
          const auto stepped = skew_action(vdm, a, skew_action(vdm, b, {s, x}));
          if (direct != stepped) {
            outcome.ok = false;
            outcome.failure = "skew action law fails at (" + grp.name(a) + "," + grp.name(b) +
                              "," + vdm.space->atom(s) + "," + vdm.tree->id(x) + ")";
            return outcome;
          }
        }
      }
    }
  }
  return outcome;
}

VirtualDendroMorphism twist(const VirtualDendroMorphism& vdm, const std::vector<Automorphism>& f) {
  if (static_cast<int>(f.size()) != vdm.space->size()) {
    throw Error(ErrorKind::BadParams, "conjugating family must cover every atom");
  }
  for (const Automorphism& a : f) {
    if (!is_automorphism(*vdm.tree, a.map)) {
      throw Error(ErrorKind::ActionInvalid, "conjugating value is not a tree automorphism");
    }
  }
  VirtualDendroMorphism out;
  out.space = vdm.space;
  out.tree = vdm.tree;
  out.table.assign(vdm.group().size(), {});
  for (int g = 0; g < vdm.group().size(); ++g) {
    out.table[g].reserve(vdm.space->size());
    for (int s = 0; s < vdm.space->size(); ++s) {
      const Automorphism& moved = f[vdm.space->act(g, s)];
      out.table[g].push_back(moved.inverse().compose(vdm.at(g, s).compose(f[s])));
    }
  }
  check_full_identity(out);
  return out;
}

std::optional<std::vector<Automorphism>> are_cohomologous(const VirtualDendroMorphism& first,
                                                          const VirtualDendroMorphism& second,
                                                          long long bound) {
  if (first.space != second.space || first.tree != second.tree) {
    throw Error(ErrorKind::MismatchedTree, "cocycles live over different spaces or trees");
  }
  check_rows_shape(first);
  check_rows_shape(second);

  const std::vector<Automorphism> autos = automorphisms(*first.tree);
  const int na = first.space->size();
  long long space_size = 1;
  for (int s = 0; s < na; ++s) {
    space_size *= static_cast<long long>(autos.size());
    if (space_size > bound) {
      throw Error(ErrorKind::SearchSpaceTooLarge,
                  "conjugation search space exceeds the configured bound");
    }
  }

  std::vector<std::size_t> digit(na, 0);
  const FiniteGroup& grp = first.group();
  while (true) {
    bool match = true;
    for (int g = 0; g < grp.size() && match; ++g) {
      for (int s = 0; s < na && match; ++s) {
        const Automorphism lhs = first.at(g, s).compose(autos[digit[s]]);
        const Automorphism rhs = autos[digit[first.space->act(g, s)]].compose(second.at(g, s));
        if (!(lhs == rhs)) match = false;
      }
    }
    if (match) {
      std::vector<Automorphism> f;
      f.reserve(na);
      for (int s = 0; s < na; ++s) f.push_back(autos[digit[s]]);
      return f;
    }
    int pos = na - 1;
    while (pos >= 0) {
      if (++digit[pos] < autos.size()) break;
      digit[pos] = 0;
      --pos;
    }
    if (pos < 0) return std::nullopt;
  }
}

CheckOutcome check_equivariant_family(const VirtualDendroMorphism& vdm,
                                      const EquivariantFamily& family) {
  CheckOutcome outcome;
  const ProbSpace& space = *vdm.space;
  if (static_cast<int>(family.fibers.size()) != space.size()) {
    throw Error(ErrorKind::BadParams, "family does not cover every atom");
  }

  for (int s : space.support()) {
    const std::vector<int>& fiber = family.fibers[s];
    ++outcome.checked;
    if (fiber.empty() || !std::is_sorted(fiber.begin(), fiber.end()) ||
        std::adjacent_find(fiber.begin(), fiber.end()) != fiber.end()) {
      outcome.ok = false;
      outcome.failure = "fiber at atom " + space.atom(s) + " is empty or not a sorted set";
      return outcome;
    }
    for (int v : fiber) {
      if (v < 0 || v >= vdm.tree->size()) {
        outcome.ok = false;
        outcome.failure = "fiber at atom " + space.atom(s) + " leaves the vertex set";
        return outcome;
      }
    }
    bool size_ok = true;
    switch (family.kind) {
      case FamilyKind::Point: size_ok = fiber.size() == 1; break;
      case FamilyKind::Pair: size_ok = fiber.size() == 2; break;
      case FamilyKind::Closed: break;
      case FamilyKind::Subdendrite: break;
    }
    if (!size_ok) {
      outcome.ok = false;
      outcome.failure = "fiber at atom " + space.atom(s) + " has the wrong size for its kind";
      return outcome;
    }
    if (family.kind == FamilyKind::Subdendrite) {
      try {
        Subdendrite::of(*vdm.tree, fiber);
      } catch (const Error&) {
        outcome.ok = false;
        outcome.failure = "fiber at atom " + space.atom(s) + " is not connected";
        return outcome;
      }
    }
  }

  for (int g = 0; g < vdm.group().size(); ++g) {
    for (int s : space.support()) {
      ++outcome.checked;
      const std::vector<int> moved = apply_to_set(vdm.at(g, s), family.fibers[s]);
      if (moved != family.fibers[space.act(g, s)]) {
        outcome.ok = false;
        outcome.failure = "family is not equivariant at (" + vdm.group().name(g) + "," +
                          space.atom(s) + ")";
        return outcome;
      }
    }
  }
  return outcome;
}

CheckOutcome check_measure_family(const VirtualDendroMorphism& vdm, const MeasureFamily& family) {
  CheckOutcome outcome;
  const ProbSpace& space = *vdm.space;
  const int n = vdm.tree->size();
  if (static_cast<int>(family.fibers.size()) != space.size()) {
    throw Error(ErrorKind::BadParams, "measure family does not cover every atom");
  }
  for (int s = 0; s < space.size(); ++s) {
    const std::vector<Rat>& fiber = family.fibers[s];
    ++outcome.checked;
    if (static_cast<int>(fiber.size()) != n) {
      throw Error(ErrorKind::BadParams, "measure fiber does not cover every vertex");
    }
    Rat total = 0;
    for (const Rat& v : fiber) {
      if (v < 0) {
        outcome.ok = false;
        outcome.failure = "negative mass at atom " + space.atom(s);
        return outcome;
      }
      total += v;
    }
    if (total != 1) {
      outcome.ok = false;
      outcome.failure = "mass at atom " + space.atom(s) + " does not sum to 1";
      return outcome;
    }
  }
  for (int g = 0; g < vdm.group().size(); ++g) {
    for (int s = 0; s < space.size(); ++s) {
      const Automorphism back = vdm.at(g, s).inverse();
      const int t = space.act(g, s);
      ++outcome.checked;
      for (int y = 0; y < n; ++y) {
        if (family.fibers[t][y] != family.fibers[s][back(y)]) {
          outcome.ok = false;
          outcome.failure = "pushforward mismatch at (" + vdm.group().name(g) + "," +
                            space.atom(s) + "," + vdm.tree->id(y) + ")";
          return outcome;
        }
      }
    }
  }
  return outcome;
}

namespace {

/// Enumerates the k-subsets of the vertex set in ascending lexicographic
/// order and returns the first one whose seeded propagation along the orbit
/// of `s0` is conflict-free, together with the propagated fibers.
std::optional<std::map<int, std::vector<int>>> propagate_orbit_seed(
    const VirtualDendroMorphism& vdm, int s0, const std::vector<int>& seed) {
  std::map<int, std::vector<int>> fibers;
  for (int g = 0; g < vdm.group().size(); ++g) {
    const int t = vdm.space->act(g, s0);
    std::vector<int> image = apply_to_set(vdm.at(g, s0), seed);
    auto it = fibers.find(t);
    if (it == fibers.end()) {
      fibers.emplace(t, std::move(image));
    } else if (it->second != image) {
      return std::nullopt;
    }
  }
  return fibers;
}

std::optional<std::map<int, std::vector<int>>> first_consistent_seed(
    const VirtualDendroMorphism& vdm, int s0, int k) {
  const int n = vdm.tree->size();
  if (k == 1) {
    for (int v = 0; v < n; ++v) {
      if (auto fibers = propagate_orbit_seed(vdm, s0, {v})) return fibers;
    }
    return std::nullopt;
  }
  for (int v = 0; v < n; ++v) {
    for (int w = v + 1; w < n; ++w) {
      if (auto fibers = propagate_orbit_seed(vdm, s0, {v, w})) return fibers;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<EquivariantFamily> is_elementary_search(const VirtualDendroMorphism& vdm) {
  const ProbSpace& space = *vdm.space;
  const std::vector<std::vector<int>> orbits = space.support_orbits();

  // Vertex indices ascend with identifiers inside a tree, so subset order
  // here is exactly identifier order; orbits are keyed by least atom, so
  // filling them in order yields the lexicographically least witness.
  auto assemble = [&](const std::vector<int>& sizes) -> std::optional<EquivariantFamily> {
    EquivariantFamily family;
    family.fibers.assign(space.size(), {});
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      auto fibers = first_consistent_seed(vdm, orbits[i][0], sizes[i]);
      if (!fibers) return std::nullopt;
      for (auto& [t, fib] : *fibers) family.fibers[t] = std::move(fib);
    }
    return family;
  };

  if (auto family = assemble(std::vector<int>(orbits.size(), 1))) {
    family->kind = FamilyKind::Point;
    const CheckOutcome check = check_equivariant_family(vdm, *family);
    if (!check.ok) throw std::logic_error("propagated point family failed its own invariant");
    return family;
  }
  if (auto family = assemble(std::vector<int>(orbits.size(), 2))) {
    family->kind = FamilyKind::Pair;
    const CheckOutcome check = check_equivariant_family(vdm, *family);
    if (!check.ok) throw std::logic_error("propagated pair family failed its own invariant");
    return family;
  }

  // Mixed fibers (a singleton on one orbit, a pair on another) complete the
  // decision procedure, although a uniform witness always exists on finite
  // models: the tree's center is preserved by every automorphism.
  EquivariantFamily mixed;
  mixed.kind = FamilyKind::Closed;
  mixed.fibers.assign(space.size(), {});
  for (const auto& orbit : orbits) {
    auto fibers = first_consistent_seed(vdm, orbit[0], 1);
    if (!fibers) fibers = first_consistent_seed(vdm, orbit[0], 2);
    if (!fibers) return std::nullopt;
    for (auto& [t, fib] : *fibers) mixed.fibers[t] = std::move(fib);
  }
  const CheckOutcome check = check_equivariant_family(vdm, mixed);
  if (!check.ok) throw std::logic_error("propagated mixed family failed its own invariant");
  return mixed;
}

std::optional<MeasureFamily> invariant_measure_lp(const VirtualDendroMorphism& vdm) {
  const ProbSpace& space = *vdm.space;
  const int na = space.size();
  const int n = vdm.tree->size();
  const int vars = na * n;
  auto var = [n](int s, int v) { return s * n + v; };

  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;
  for (int s = 0; s < na; ++s) {
    std::vector<Rat> row(vars, Rat(0));
    for (int v = 0; v < n; ++v) row[var(s, v)] = 1;
    rows.push_back(std::move(row));
    rhs.push_back(Rat(1));
  }
  // Equivariance on a generating set propagates to the whole group through
  // the composition identity; the full table is re-checked below anyway.
  for (int g : space.group().generators()) {
    for (int s = 0; s < na; ++s) {
      const int t = space.act(g, s);
      const Automorphism back = vdm.at(g, s).inverse();
      for (int y = 0; y < n; ++y) {
        if (t == s && back(y) == y) continue;
        std::vector<Rat> row(vars, Rat(0));
        row[var(t, y)] += 1;
        row[var(s, back(y))] -= 1;
        rows.push_back(std::move(row));
        rhs.push_back(Rat(0));
      }
    }
  }

  const auto solution = solve_equality_feasibility(std::move(rows), std::move(rhs));
  if (!solution) return std::nullopt;

  MeasureFamily family;
  family.fibers.assign(na, std::vector<Rat>(n, Rat(0)));
  for (int s = 0; s < na; ++s) {
    for (int v = 0; v < n; ++v) family.fibers[s][v] = (*solution)[var(s, v)];
  }
  const CheckOutcome check = check_measure_family(vdm, family);
  if (!check.ok) {
    throw std::logic_error("LP point failed the full equivariance check: " + check.failure);
  }
  return family;
}

std::vector<MinimalFamilyPair> minimal_families(const VirtualDendroMorphism& vdm,
                                                long long bound) {
  const ProbSpace& space = *vdm.space;
  const int n = vdm.tree->size();

  // Orbits of the skew action on support x vertices, discovered in
  // ascending (atom, vertex) order; each is stored as its per-atom slices.
  std::map<std::pair<int, int>, int> orbit_of;
  std::vector<std::map<int, std::vector<int>>> slices;
  for (int s : space.support()) {
    for (int a = 0; a < n; ++a) {
      if (orbit_of.count({s, a})) continue;
      const int idx = static_cast<int>(slices.size());
      std::map<int, std::set<int>> slice_sets;
      std::queue<std::pair<int, int>> work;
      work.push({s, a});
      orbit_of[{s, a}] = idx;
      slice_sets[s].insert(a);
      while (!work.empty()) {
        const auto cur = work.front();
        work.pop();
        for (int g = 0; g < vdm.group().size(); ++g) {
          const auto next = skew_action(vdm, g, cur);
          if (orbit_of.emplace(next, idx).second) {
            work.push(next);
            slice_sets[next.first].insert(next.second);
          } else {
            slice_sets[next.first].insert(next.second);
          }
        }
      }
      std::map<int, std::vector<int>> slice;
      for (const auto& [atom, verts] : slice_sets) {
        slice.emplace(atom, std::vector<int>(verts.begin(), verts.end()));
      }
      slices.push_back(std::move(slice));
    }
  }

  // Group the skew orbits by the support orbit they sit over.
  const std::vector<std::vector<int>> base_orbits = space.support_orbits();
  std::vector<std::vector<int>> choices(base_orbits.size());
  for (int i = 0; i < static_cast<int>(slices.size()); ++i) {
    const int least_atom = slices[i].begin()->first;
    for (std::size_t b = 0; b < base_orbits.size(); ++b) {
      if (std::binary_search(base_orbits[b].begin(), base_orbits[b].end(), least_atom)) {
        choices[b].push_back(i);
        break;
      }
    }
  }

  long long total = 1;
  for (const auto& c : choices) {
    total *= static_cast<long long>(c.size());
    if (total > bound) {
      throw Error(ErrorKind::SearchSpaceTooLarge,
                  "minimal-family enumeration exceeds the configured bound");
    }
  }

  std::vector<MinimalFamilyPair> out;
  std::vector<std::size_t> digit(choices.size(), 0);
  while (true) {
    MinimalFamilyPair pair;
    pair.closed.kind = FamilyKind::Closed;
    pair.closed.fibers.assign(space.size(), {});
    for (std::size_t b = 0; b < choices.size(); ++b) {
      for (const auto& [atom, verts] : slices[choices[b][digit[b]]]) {
        pair.closed.fibers[atom] = verts;
      }
    }
    pair.hull.kind = FamilyKind::Subdendrite;
    pair.hull.fibers.assign(space.size(), {});
    for (int s : space.support()) {
      pair.hull.fibers[s] = dendro_hull(*vdm.tree, pair.closed.fibers[s]).vertices();
    }
    if (!check_equivariant_family(vdm, pair.closed).ok ||
        !check_equivariant_family(vdm, pair.hull).ok) {
      throw std::logic_error("skew-orbit family failed its own invariant");
    }
    out.push_back(std::move(pair));

    int pos = static_cast<int>(choices.size()) - 1;
    while (pos >= 0) {
      if (++digit[pos] < choices[pos].size()) break;
      digit[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

EquivariantFamily retraction_point_family(const VirtualDendroMorphism& vdm,
                                          const EquivariantFamily& M,
                                          const EquivariantFamily& N) {
  if (M.kind != FamilyKind::Subdendrite) {
    throw Error(ErrorKind::BadParams, "retraction target must be a subdendrite family");
  }
  if (!check_equivariant_family(vdm, M).ok || !check_equivariant_family(vdm, N).ok) {
    throw Error(ErrorKind::NotEquivariantInput,
                "retraction inputs must be equivariant families");
  }

  const ProbSpace& space = *vdm.space;
  EquivariantFamily out;
  out.kind = FamilyKind::Point;
  out.fibers.assign(space.size(), {});
  for (int s : space.support()) {
    const Subdendrite target = Subdendrite::of(*vdm.tree, M.fibers[s]);
    for (int v : N.fibers[s]) {
      if (target.contains(v)) {
        throw Error(ErrorKind::NotDisjoint,
                    "families overlap at atom " + space.atom(s) + ", vertex " + vdm.tree->id(v));
      }
    }
    int value = -1;
    for (int v : N.fibers[s]) {
      const int r = retraction(*vdm.tree, target, v);
      if (value < 0) {
        value = r;
      } else if (value != r) {
        throw Error(ErrorKind::AmbiguousRetraction,
                    "retraction is multi-valued at atom " + space.atom(s));
      }
    }
    out.fibers[s] = {value};
  }

  if (!check_equivariant_family(vdm, out).ok) {
    throw std::logic_error("retraction family failed its own invariant");
  }
  return out;
}

RestrictedMorphism restrict_to_subgroup(const VirtualDendroMorphism& vdm,
                                        const std::vector<int>& elements) {
  const FiniteGroup& grp = vdm.group();
  std::vector<int> sorted(elements);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!grp.is_subgroup(sorted)) {
    throw Error(ErrorKind::NotASubgroup, "element set is not closed under the group laws");
  }

  const int m = static_cast<int>(sorted.size());
  std::map<int, int> reindex;
  for (int i = 0; i < m; ++i) reindex[sorted[i]] = i;

  std::vector<std::string> names;
  names.reserve(m);
  for (int g : sorted) names.push_back(grp.name(g));
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) table[a][b] = reindex.at(grp.mul(sorted[a], sorted[b]));
  }

  RestrictedMorphism out;
  out.group = std::make_unique<FiniteGroup>(FiniteGroup::from_table(names, table));

  std::vector<std::string> atoms;
  std::vector<Rat> measure;
  for (int s = 0; s < vdm.space->size(); ++s) {
    atoms.push_back(vdm.space->atom(s));
    measure.push_back(vdm.space->measure(s));
  }
  std::vector<std::vector<int>> action(m);
  for (int i = 0; i < m; ++i) {
    action[i].reserve(vdm.space->size());
    for (int s = 0; s < vdm.space->size(); ++s) action[i].push_back(vdm.space->act(sorted[i], s));
  }
  out.space = std::make_unique<ProbSpace>(out.group.get(), std::move(atoms), std::move(measure),
                                          std::move(action));

  out.morphism.space = out.space.get();
  out.morphism.tree = vdm.tree;
  out.morphism.table.reserve(m);
  for (int i = 0; i < m; ++i) out.morphism.table.push_back(vdm.table[sorted[i]]);
  check_full_identity(out.morphism);
  return out;
}

}  // namespace dendro
