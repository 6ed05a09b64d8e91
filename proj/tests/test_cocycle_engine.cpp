#include <doctest.h>

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "dendro/cocycle.hpp"
#include "dendro/dendrite.hpp"
#include "dendro/error.hpp"
#include "dendro/group.hpp"
#include "dendro/prob_space.hpp"

using namespace dendro;

namespace {

bool throws_kind(ErrorKind want, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.kind() == want;
  }
  return false;
}

ProbSpace trivial_space(const FiniteGroup& grp, int atoms) {
  std::vector<std::string> names;
  std::vector<Rat> measure;
  for (int s = 0; s < atoms; ++s) {
    names.push_back("s" + std::to_string(s));
    measure.push_back(Rat(1) / Rat(atoms));
  }
  std::vector<std::vector<int>> action(grp.size());
  for (int g = 0; g < grp.size(); ++g) {
    action[g].resize(atoms);
    for (int s = 0; s < atoms; ++s) action[g][s] = s;
  }
  return ProbSpace(&grp, std::move(names), std::move(measure), std::move(action));
}

// Identity outside the listed moves; the caller promises the result is a
// bijection.
Automorphism auto_of(const Dendrite& tree,
                     const std::vector<std::pair<std::string, std::string>>& moves) {
  Automorphism a = identity_automorphism(tree);
  for (const auto& [from, to] : moves) a.map[tree.vertex(from)] = tree.vertex(to);
  return a;
}

Automorphism leaf_rotation(const Dendrite& star) {
  return auto_of(star, {{"l1", "l2"}, {"l2", "l3"}, {"l3", "l1"}});
}

Automorphism leaf_swap12(const Dendrite& star) {
  return auto_of(star, {{"l1", "l2"}, {"l2", "l1"}});
}

std::vector<int> fiber_ids(const Dendrite& tree, const std::vector<std::string>& ids) {
  std::vector<int> out;
  for (const auto& id : ids) out.push_back(tree.vertex(id));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("space construction verifies measure and action") {
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);

  const ProbSpace ok(&z2, {"s0", "s1"}, {Rat(1) / Rat(2), Rat(1) / Rat(2)},
                     {{0, 1}, {1, 0}});
  CHECK(ok.size() == 2);
  CHECK(ok.act(1, 0) == 1);
  CHECK(ok.find_atom("s1") == 1);
  CHECK(ok.find_atom("zzz") == -1);
  CHECK(ok.is_ergodic());

  CHECK(throws_kind(ErrorKind::MeasureInvalid, [&] {
    ProbSpace(&z2, {"s0", "s1"}, {Rat(1), Rat(1)}, {{0, 1}, {1, 0}});
  }));
  CHECK(throws_kind(ErrorKind::MeasureInvalid, [&] {
    ProbSpace(&z2, {"s0", "s1"}, {Rat(3) / Rat(2), Rat(-1) / Rat(2)}, {{0, 1}, {1, 0}});
  }));
  // Swapping atoms of different mass is not measure-preserving.
  CHECK(throws_kind(ErrorKind::MeasureInvalid, [&] {
    ProbSpace(&z2, {"s0", "s1"}, {Rat(1), Rat(0)}, {{0, 1}, {1, 0}});
  }));
  // Identity row must fix every atom.
  CHECK(throws_kind(ErrorKind::ActionInvalid, [&] {
    ProbSpace(&z2, {"s0", "s1"}, {Rat(1) / Rat(2), Rat(1) / Rat(2)}, {{1, 0}, {0, 1}});
  }));
  // a*a = e but the table sends both rows to the same swap.
  const FiniteGroup z4 = FiniteGroup::from_permutations({{"a", {1, 2, 3, 0}}}, 4);
  CHECK(throws_kind(ErrorKind::ActionInvalid, [&] {
    ProbSpace(&z4, {"s0", "s1"}, {Rat(1) / Rat(2), Rat(1) / Rat(2)},
              {{0, 1}, {1, 0}, {1, 0}, {1, 0}});
  }));
  CHECK(throws_kind(ErrorKind::ParseError, [&] {
    ProbSpace(&z2, {"s0", "s0"}, {Rat(1) / Rat(2), Rat(1) / Rat(2)}, {{0, 1}, {1, 0}});
  }));
  CHECK(throws_kind(ErrorKind::EmptySet, [&] { ProbSpace(&z2, {}, {}, {{}, {}}); }));
}

TEST_CASE("support orbits ignore null atoms and detect ergodicity") {
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);

  // Two swapped atoms: one orbit.
  const ProbSpace swap(&z2, {"s0", "s1"}, {Rat(1) / Rat(2), Rat(1) / Rat(2)},
                       {{0, 1}, {1, 0}});
  CHECK(swap.support_orbits() == std::vector<std::vector<int>>{{0, 1}});
  CHECK(swap.is_ergodic());

  // Trivial action on two positive atoms: two orbits, not ergodic.
  const ProbSpace split = trivial_space(z2, 2);
  CHECK(split.support_orbits() == std::vector<std::vector<int>>{{0}, {1}});
  CHECK_FALSE(split.is_ergodic());

  // A null atom is invisible to the support orbits.
  const ProbSpace with_null(&z2, {"s0", "s1", "junk"},
                            {Rat(1) / Rat(2), Rat(1) / Rat(2), Rat(0)},
                            {{0, 1, 2}, {1, 0, 2}});
  CHECK(with_null.support() == std::vector<int>{0, 1});
  CHECK(with_null.support_orbits() == std::vector<std::vector<int>>{{0, 1}});
  CHECK(with_null.is_ergodic());

  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const ProbSpace one = trivial_space(trivial, 1);
  CHECK(one.is_ergodic());
}

TEST_CASE("generator rows extend to a verified total table") {
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const Dendrite path = make_path(3);
  const ProbSpace space = trivial_space(z2, 1);
  const Automorphism flip = auto_of(path, {{"a", "c"}, {"c", "a"}});

  const VirtualDendroMorphism vdm = verify_cocycle(space, path, {{z2.find("a"), {flip}}});
  REQUIRE(static_cast<int>(vdm.table.size()) == 2);
  REQUIRE(static_cast<int>(vdm.table[0].size()) == 1);
  CHECK(vdm.at(z2.identity(), 0).is_identity());
  CHECK(vdm.at(z2.find("a"), 0) == flip);

  CHECK(skew_action(vdm, z2.find("a"), {0, path.vertex("a")}) ==
        std::pair<int, int>{0, path.vertex("c")});
  const CheckOutcome law = check_skew_action_law(vdm);
  CHECK(law.ok);
  CHECK(law.checked == 2 * 2 * 1 * 3);
}

TEST_CASE("rows that break the composition identity are rejected") {
  const Dendrite star = make_star(3);
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const ProbSpace space = trivial_space(z2, 1);

  // a has order two but the assigned value has order three.
  CHECK(throws_kind(ErrorKind::CocycleIdentityViolated, [&] {
    verify_cocycle(space, star, {{z2.find("a"), {leaf_rotation(star)}}});
  }));

  // Swapping the centre with a leaf is not an automorphism.
  CHECK(throws_kind(ErrorKind::ActionInvalid, [&] {
    verify_cocycle(space, star, {{z2.find("a"), {auto_of(star, {{"c", "l1"}, {"l1", "c"}})}}});
  }));

  // One generator of the Klein group cannot generate the other.
  const FiniteGroup klein =
      FiniteGroup::from_permutations({{"a", {1, 0, 3, 2}}, {"b", {2, 3, 0, 1}}}, 4);
  const ProbSpace kspace = trivial_space(klein, 1);
  CHECK(throws_kind(ErrorKind::IncompleteTable, [&] {
    verify_cocycle(kspace, star, {{klein.find("a"), {leaf_swap12(star)}}});
  }));

  CHECK(throws_kind(ErrorKind::BadParams, [&] {
    verify_cocycle(space, star, {{7, {leaf_swap12(star)}}});
  }));
}

namespace {

/// Star with Z/2 swapping both the two atoms and the first two leaves.
struct SwapFixture {
  FiniteGroup group = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  Dendrite star = make_star(3);
  ProbSpace space{&group,
                  {"s0", "s1"},
                  {Rat(1) / Rat(2), Rat(1) / Rat(2)},
                  {{0, 1}, {1, 0}}};
  VirtualDendroMorphism vdm;

  SwapFixture() {
    const Automorphism swap = leaf_swap12(star);
    vdm = verify_cocycle(space, star, {{group.find("a"), {swap, swap}}});
  }
};

}  // namespace

TEST_CASE("twisting conjugates fiberwise and is invertible") {
  SwapFixture fx;
  const Automorphism swap = leaf_swap12(fx.star);
  const Automorphism rot = leaf_rotation(fx.star);
  const int a = fx.group.find("a");

  const std::vector<Automorphism> ident(2, identity_automorphism(fx.star));
  const VirtualDendroMorphism same = twist(fx.vdm, ident);
  CHECK(same.table == fx.vdm.table);

  const std::vector<Automorphism> f = {identity_automorphism(fx.star), rot};
  const VirtualDendroMorphism twisted = twist(fx.vdm, f);
  // sigma'(a, s0) = f(s1)^{-1} sigma(a, s0) f(s0); both slices land on the
  // transposition fixing l1, which is still distinct from the original rows.
  CHECK(twisted.at(a, 0) == rot.inverse().compose(swap));
  CHECK(twisted.at(a, 1) == swap.compose(rot));
  CHECK_FALSE(twisted.table == fx.vdm.table);

  const std::vector<Automorphism> back = {f[0].inverse(), f[1].inverse()};
  const VirtualDendroMorphism restored = twist(twisted, back);
  CHECK(restored.table == fx.vdm.table);

  CHECK(throws_kind(ErrorKind::BadParams, [&] { twist(fx.vdm, {swap}); }));
}

TEST_CASE("cohomology search recovers a conjugating family") {
  SwapFixture fx;
  const Automorphism rot = leaf_rotation(fx.star);
  const std::vector<Automorphism> f = {identity_automorphism(fx.star), rot};
  const VirtualDendroMorphism twisted = twist(fx.vdm, f);

  const auto found = are_cohomologous(fx.vdm, twisted);
  REQUIRE(found.has_value());
  CHECK(twist(fx.vdm, *found).table == twisted.table);

  // A cocycle is cohomologous to itself through the identity family, and the
  // odometer starts there.
  const auto self = are_cohomologous(fx.vdm, fx.vdm);
  REQUIRE(self.has_value());
  for (const Automorphism& g : *self) CHECK(g.is_identity());

  CHECK(throws_kind(ErrorKind::SearchSpaceTooLarge,
                    [&] { are_cohomologous(fx.vdm, twisted, 7); }));

  // Same data over a distinct space object is a domain mismatch, not a
  // search miss.
  const ProbSpace other(&fx.group, {"s0", "s1"}, {Rat(1) / Rat(2), Rat(1) / Rat(2)},
                        {{0, 1}, {1, 0}});
  const Automorphism swap = leaf_swap12(fx.star);
  const VirtualDendroMorphism foreign =
      verify_cocycle(other, fx.star, {{fx.group.find("a"), {swap, swap}}});
  CHECK(throws_kind(ErrorKind::MismatchedTree, [&] { are_cohomologous(fx.vdm, foreign); }));
}

TEST_CASE("cocycles with different skew fixed sets are not cohomologous") {
  const Dendrite star = make_star(3);
  const FiniteGroup z3 = FiniteGroup::from_permutations({{"a", {1, 2, 0}}}, 3);
  const ProbSpace space = trivial_space(z3, 1);
  const Automorphism rot = leaf_rotation(star);

  const VirtualDendroMorphism trivial =
      verify_cocycle(space, star, {{z3.find("a"), {identity_automorphism(star)}}});
  const VirtualDendroMorphism rotating = verify_cocycle(space, star, {{z3.find("a"), {rot}}});

  // Conjugation preserves the number of skew-fixed vertices (4 vs 1 here).
  CHECK_FALSE(are_cohomologous(trivial, rotating).has_value());
}

TEST_CASE("family checks accept equivariant data and reject the rest") {
  SwapFixture fx;

  EquivariantFamily centre{FamilyKind::Point, {{fx.star.vertex("c")}, {fx.star.vertex("c")}}};
  CHECK(check_equivariant_family(fx.vdm, centre).ok);

  // l1 over s0 must ride to l2 over s1.
  EquivariantFamily riding{FamilyKind::Point,
                           {{fx.star.vertex("l1")}, {fx.star.vertex("l2")}}};
  CHECK(check_equivariant_family(fx.vdm, riding).ok);

  EquivariantFamily stuck{FamilyKind::Point, {{fx.star.vertex("l1")}, {fx.star.vertex("l1")}}};
  const CheckOutcome bad = check_equivariant_family(fx.vdm, stuck);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failure.find("not equivariant") != std::string::npos);

  EquivariantFamily pair{FamilyKind::Pair,
                         {fiber_ids(fx.star, {"l1", "l2"}), fiber_ids(fx.star, {"l1", "l2"})}};
  CHECK(check_equivariant_family(fx.vdm, pair).ok);
  pair.kind = FamilyKind::Point;  // wrong cardinality for the declared kind
  CHECK_FALSE(check_equivariant_family(fx.vdm, pair).ok);
  pair.kind = FamilyKind::Subdendrite;  // two leaves are not connected
  CHECK_FALSE(check_equivariant_family(fx.vdm, pair).ok);
  pair.kind = FamilyKind::Closed;  // but they are a perfectly good closed set
  CHECK(check_equivariant_family(fx.vdm, pair).ok);

  EquivariantFamily empty{FamilyKind::Closed, {{}, {}}};
  CHECK_FALSE(check_equivariant_family(fx.vdm, empty).ok);
  CHECK(throws_kind(ErrorKind::BadParams, [&] {
    check_equivariant_family(fx.vdm, EquivariantFamily{FamilyKind::Point, {{0}}});
  }));

  // Fibers over a null atom are ignored entirely.
  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const ProbSpace padded(&trivial, {"s0", "junk"}, {Rat(1), Rat(0)}, {{0, 1}});
  const VirtualDendroMorphism flat = verify_cocycle(padded, fx.star, {});
  EquivariantFamily partial{FamilyKind::Point, {{fx.star.vertex("c")}, {}}};
  CHECK(check_equivariant_family(flat, partial).ok);
}

TEST_CASE("measure families push forward along the cocycle") {
  SwapFixture fx;
  const int n = fx.star.size();
  const int l1 = fx.star.vertex("l1");
  const int l2 = fx.star.vertex("l2");
  const int l3 = fx.star.vertex("l3");

  std::vector<Rat> half(n, Rat(0));
  half[l1] = Rat(1) / Rat(2);
  half[l2] = Rat(1) / Rat(2);
  MeasureFamily symmetric{{half, half}};
  CHECK(check_measure_family(fx.vdm, symmetric).ok);

  std::vector<Rat> dirac(n, Rat(0));
  dirac[l3] = Rat(1);
  MeasureFamily mismatched{{half, dirac}};
  const CheckOutcome bad = check_measure_family(fx.vdm, mismatched);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failure.find("pushforward") != std::string::npos);

  std::vector<Rat> short_mass(n, Rat(0));
  short_mass[l1] = Rat(1) / Rat(2);
  CHECK_FALSE(check_measure_family(fx.vdm, MeasureFamily{{short_mass, short_mass}}).ok);

  std::vector<Rat> signed_mass(n, Rat(0));
  signed_mass[l1] = Rat(3) / Rat(2);
  signed_mass[l2] = Rat(-1) / Rat(2);
  CHECK_FALSE(check_measure_family(fx.vdm, MeasureFamily{{signed_mass, signed_mass}}).ok);

  CHECK(throws_kind(ErrorKind::BadParams,
                    [&] { check_measure_family(fx.vdm, MeasureFamily{{half}}); }));
}

TEST_CASE("point-or-pair search returns the least witness") {
  // Flip of a path fixes only the middle vertex.
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const Dendrite path = make_path(3);
  const ProbSpace space = trivial_space(z2, 1);
  const VirtualDendroMorphism flip =
      verify_cocycle(space, path, {{z2.find("a"), {auto_of(path, {{"a", "c"}, {"c", "a"}})}}});
  const auto witness = is_elementary_search(flip);
  REQUIRE(witness.has_value());
  CHECK(witness->kind == FamilyKind::Point);
  CHECK(witness->fibers == std::vector<std::vector<int>>{{path.vertex("b")}});

  // Leaf rotation fixes only the centre.
  const Dendrite star = make_star(3);
  const FiniteGroup z3 = FiniteGroup::from_permutations({{"a", {1, 2, 0}}}, 3);
  const ProbSpace sspace = trivial_space(z3, 1);
  const VirtualDendroMorphism rot =
      verify_cocycle(sspace, star, {{z3.find("a"), {leaf_rotation(star)}}});
  const auto centre = is_elementary_search(rot);
  REQUIRE(centre.has_value());
  CHECK(centre->kind == FamilyKind::Point);
  CHECK(centre->fibers == std::vector<std::vector<int>>{{star.vertex("c")}});

  // With no constraints at all the least vertex wins.
  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const ProbSpace tspace = trivial_space(trivial, 1);
  const VirtualDendroMorphism free = verify_cocycle(tspace, path, {});
  const auto least = is_elementary_search(free);
  REQUIRE(least.has_value());
  CHECK(least->fibers == std::vector<std::vector<int>>{{path.vertex("a")}});

  // A two-vertex flip has no fixed vertex; the edge pair is the witness.
  const Dendrite edge = make_path(2);
  const VirtualDendroMorphism swap2 =
      verify_cocycle(space, edge, {{z2.find("a"), {auto_of(edge, {{"a", "b"}, {"b", "a"}})}}});
  const auto pair = is_elementary_search(swap2);
  REQUIRE(pair.has_value());
  CHECK(pair->kind == FamilyKind::Pair);
  CHECK(pair->fibers == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("exact feasibility agrees with the search oracle") {
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const Dendrite path = make_path(3);
  const ProbSpace space = trivial_space(z2, 1);
  const VirtualDendroMorphism flip =
      verify_cocycle(space, path, {{z2.find("a"), {auto_of(path, {{"a", "c"}, {"c", "a"}})}}});

  const auto family = invariant_measure_lp(flip);
  REQUIRE(family.has_value());
  CHECK(check_measure_family(flip, *family).ok);
  // The flip forces equal mass on the swapped endpoints.
  CHECK(family->fibers[0][path.vertex("a")] == family->fibers[0][path.vertex("c")]);

  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const ProbSpace tspace = trivial_space(trivial, 1);
  const VirtualDendroMorphism free = verify_cocycle(tspace, path, {});
  const auto basic = invariant_measure_lp(free);
  REQUIRE(basic.has_value());
  Rat total = 0;
  for (const Rat& mass : basic->fibers[0]) total += mass;
  CHECK(total == 1);

  SwapFixture fx;
  const auto moving = invariant_measure_lp(fx.vdm);
  REQUIRE(moving.has_value());
  CHECK(check_measure_family(fx.vdm, *moving).ok);
}

TEST_CASE("minimal families enumerate one skew orbit per base orbit") {
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const Dendrite path = make_path(3);
  const ProbSpace space = trivial_space(z2, 1);
  const VirtualDendroMorphism flip =
      verify_cocycle(space, path, {{z2.find("a"), {auto_of(path, {{"a", "c"}, {"c", "a"}})}}});

  const auto families = minimal_families(flip);
  REQUIRE(families.size() == 2);
  CHECK(families[0].closed.fibers == std::vector<std::vector<int>>{fiber_ids(path, {"a", "c"})});
  CHECK(families[0].hull.fibers ==
        std::vector<std::vector<int>>{fiber_ids(path, {"a", "b", "c"})});
  CHECK(families[1].closed.fibers == std::vector<std::vector<int>>{{path.vertex("b")}});
  CHECK(families[1].hull.fibers == std::vector<std::vector<int>>{{path.vertex("b")}});
  CHECK(families[0].closed.kind == FamilyKind::Closed);
  CHECK(families[0].hull.kind == FamilyKind::Subdendrite);

  // Distinct minimal families never nest.
  for (std::size_t i = 0; i < families.size(); ++i) {
    for (std::size_t j = 0; j < families.size(); ++j) {
      if (i == j) continue;
      const auto& small = families[i].closed.fibers[0];
      const auto& big = families[j].closed.fibers[0];
      CHECK_FALSE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
  }

  const Dendrite star = make_star(3);
  const FiniteGroup z3 = FiniteGroup::from_permutations({{"a", {1, 2, 0}}}, 3);
  const ProbSpace sspace = trivial_space(z3, 1);
  const VirtualDendroMorphism rot =
      verify_cocycle(sspace, star, {{z3.find("a"), {leaf_rotation(star)}}});
  const auto star_families = minimal_families(rot);
  REQUIRE(star_families.size() == 2);
  CHECK(star_families[0].closed.fibers[0] == std::vector<int>{star.vertex("c")});
  CHECK(star_families[1].closed.fibers[0] == fiber_ids(star, {"l1", "l2", "l3"}));
  CHECK(star_families[1].hull.fibers[0] == fiber_ids(star, {"c", "l1", "l2", "l3"}));

  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const ProbSpace tspace = trivial_space(trivial, 1);
  const VirtualDendroMorphism free = verify_cocycle(tspace, path, {});
  const auto singletons = minimal_families(free);
  REQUIRE(singletons.size() == 3);
  for (int v = 0; v < 3; ++v) {
    CHECK(singletons[v].closed.fibers[0] == std::vector<int>{v});
  }
}

TEST_CASE("minimal families combine independent base orbits") {
  // Two fixed atoms; the swap acts on one fiber only.
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const Dendrite star = make_star(3);
  const ProbSpace space = trivial_space(z2, 2);
  const VirtualDendroMorphism vdm = verify_cocycle(
      space, star,
      {{z2.find("a"), {leaf_swap12(star), identity_automorphism(star)}}});

  // Over s0: {c}, {l1,l2}, {l3}; over s1: four singletons.
  const auto families = minimal_families(vdm);
  REQUIRE(families.size() == 12);
  CHECK(families[0].closed.fibers ==
        std::vector<std::vector<int>>{{star.vertex("c")}, {star.vertex("c")}});
  CHECK(families[1].closed.fibers ==
        std::vector<std::vector<int>>{{star.vertex("c")}, {star.vertex("l1")}});
  CHECK(families[11].closed.fibers ==
        std::vector<std::vector<int>>{{star.vertex("l3")}, {star.vertex("l3")}});

  CHECK(throws_kind(ErrorKind::SearchSpaceTooLarge, [&] { minimal_families(vdm, 5); }));
}

TEST_CASE("retraction of a family onto a subdendrite family is single-valued") {
  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const Dendrite path = make_path(5);
  const ProbSpace space = trivial_space(trivial, 1);
  const VirtualDendroMorphism free = verify_cocycle(space, path, {});

  EquivariantFamily M{FamilyKind::Subdendrite, {fiber_ids(path, {"a", "b"})}};
  EquivariantFamily N{FamilyKind::Point, {{path.vertex("e")}}};
  const EquivariantFamily a = retraction_point_family(free, M, N);
  CHECK(a.kind == FamilyKind::Point);
  CHECK(a.fibers == std::vector<std::vector<int>>{{path.vertex("b")}});

  CHECK(throws_kind(ErrorKind::NotDisjoint, [&] {
    retraction_point_family(free, M, EquivariantFamily{FamilyKind::Point, {{path.vertex("b")}}});
  }));
  CHECK(throws_kind(ErrorKind::BadParams, [&] {
    retraction_point_family(free, EquivariantFamily{FamilyKind::Closed, M.fibers}, N);
  }));

  // Opposite ends of a middle segment retract to different vertices.
  const Dendrite path4 = make_path(4);
  const VirtualDendroMorphism free4 = verify_cocycle(space, path4, {});
  EquivariantFamily mid{FamilyKind::Subdendrite, {fiber_ids(path4, {"b", "c"})}};
  EquivariantFamily ends{FamilyKind::Closed, {fiber_ids(path4, {"a", "d"})}};
  CHECK(throws_kind(ErrorKind::AmbiguousRetraction,
                    [&] { retraction_point_family(free4, mid, ends); }));

  // Equivariant inputs with a flip: both endpoints retract onto the middle.
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const Dendrite path3 = make_path(3);
  const ProbSpace fspace = trivial_space(z2, 1);
  const VirtualDendroMorphism flip = verify_cocycle(
      fspace, path3, {{z2.find("a"), {auto_of(path3, {{"a", "c"}, {"c", "a"}})}}});
  EquivariantFamily hub{FamilyKind::Subdendrite, {{path3.vertex("b")}}};
  EquivariantFamily rim{FamilyKind::Closed, {fiber_ids(path3, {"a", "c"})}};
  const EquivariantFamily pulled = retraction_point_family(flip, hub, rim);
  CHECK(pulled.fibers == std::vector<std::vector<int>>{{path3.vertex("b")}});

  CHECK(throws_kind(ErrorKind::NotEquivariantInput, [&] {
    retraction_point_family(flip, hub,
                            EquivariantFamily{FamilyKind::Point, {{path3.vertex("a")}}});
  }));
}

TEST_CASE("restriction to a subgroup keeps the verified table") {
  const Dendrite star = make_star(3);
  const FiniteGroup s3 =
      FiniteGroup::from_permutations({{"r", {1, 2, 0}}, {"s", {1, 0, 2}}}, 3);
  const ProbSpace space = trivial_space(s3, 1);
  const VirtualDendroMorphism vdm =
      verify_cocycle(space, star,
                     {{s3.find("r"), {leaf_rotation(star)}},
                      {s3.find("s"), {leaf_swap12(star)}}});

  const std::vector<int> rotations = s3.generated_subgroup({s3.find("r")});
  REQUIRE(rotations.size() == 3);
  const RestrictedMorphism restricted = restrict_to_subgroup(vdm, rotations);
  CHECK(restricted.morphism.group().size() == 3);
  CHECK(restricted.morphism.group().find("r") != -1);
  for (std::size_t i = 0; i < rotations.size(); ++i) {
    CHECK(restricted.morphism.table[i] == vdm.table[rotations[i]]);
  }

  const auto witness = is_elementary_search(restricted.morphism);
  REQUIRE(witness.has_value());
  CHECK(witness->fibers == std::vector<std::vector<int>>{{star.vertex("c")}});

  std::vector<int> everything(s3.size());
  for (int g = 0; g < s3.size(); ++g) everything[g] = g;
  CHECK(restrict_to_subgroup(vdm, everything).morphism.table == vdm.table);

  CHECK(throws_kind(ErrorKind::NotASubgroup,
                    [&] { restrict_to_subgroup(vdm, {s3.find("r")}); }));
}
