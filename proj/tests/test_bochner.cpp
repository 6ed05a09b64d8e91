#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dendro/bochner.hpp"
#include "dendro/bundle.hpp"
#include "dendro/cocycle.hpp"
#include "dendro/dendrite.hpp"
#include "dendro/error.hpp"
#include "dendro/group.hpp"
#include "dendro/prob_space.hpp"
#include "oracles.hpp"

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

BochnerElement all_ones(const ProbSpace& space, const LambdaTable& lambda) {
  BochnerElement u(space.size(), lambda.size());
  for (int s = 0; s < space.size(); ++s) {
    for (int i = 0; i < lambda.size(); ++i) u.set(s, i, Rat(1));
  }
  return u;
}

BochnerElement scrambled(const ProbSpace& space, const LambdaTable& lambda) {
  BochnerElement u(space.size(), lambda.size());
  for (int s = 0; s < space.size(); ++s) {
    for (int i = 0; i < lambda.size(); ++i) u.set(s, i, Rat((s * 17 + i * 5 + 3) % 7 - 3));
  }
  return u;
}

int pair_index(const LambdaTable& lambda, const Dendrite& tree, const std::string& base,
               const std::string& first, const std::string& second) {
  return lambda.index_of({tree.vertex(base), tree.vertex(first), tree.vertex(second)});
}

/// Two branch points joined by an edge, two leaves each.
Dendrite make_dumbbell() {
  return Dendrite::validate(
      {"b1", "b2", "x1", "x2", "y1", "y2"},
      {{"b1", "b2"}, {"b1", "x1"}, {"b1", "x2"}, {"b2", "y1"}, {"b2", "y2"}});
}

}  // namespace

TEST_CASE("norms take exact values on the constant element") {
  const Dendrite star = make_star(3);
  const LambdaTable lambda(star);
  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const ProbSpace space = trivial_space(trivial, 1);
  const BochnerElement u = all_ones(space, lambda);

  CHECK(norm_power_total(space, lambda, u, 1, 1) == 6);
  CHECK(norm_power_total(space, lambda, u, 2, 2) == 6);
  CHECK(norm_power_total(space, lambda, u, 2, 1) == 36);

  CHECK(bochner_norm(space, lambda, u, {false, 1}, 1) == doctest::Approx(6.0));
  CHECK(bochner_norm(space, lambda, u, {false, 2}, 2) == doctest::Approx(std::sqrt(6.0)));
  CHECK(bochner_norm(space, lambda, u, {true, 0}, 2) == doctest::Approx(std::sqrt(6.0)));

  const auto profile = fiber_profile(space, lambda, u, 1);
  REQUIRE(profile.size() == 1);
  CHECK(profile[0] == std::pair<Rat, Rat>{Rat(1), Rat(6)});

  const BochnerElement zero(space.size(), lambda.size());
  CHECK(norm_power_total(space, lambda, zero, 2, 2) == 0);
  CHECK(bochner_norm(space, lambda, zero, {false, 2}, 2) == doctest::Approx(0.0));
  CHECK(zero_on_support(space, zero));
  CHECK_FALSE(zero_on_support(space, u));

  CHECK(throws_kind(ErrorKind::BadExponent,
                    [&] { bochner_norm(space, lambda, u, {false, 2}, Rat(1) / Rat(2)); }));
  CHECK(throws_kind(ErrorKind::BadExponent,
                    [&] { bochner_norm(space, lambda, u, {false, Rat(1) / Rat(3)}, 2); }));
  CHECK(throws_kind(ErrorKind::BadExponent, [&] { norm_power_total(space, lambda, u, 1, 2); }));
  CHECK(throws_kind(ErrorKind::BadExponent, [&] { norm_power_total(space, lambda, u, 0, 1); }));
  CHECK(throws_kind(ErrorKind::BadExponent, [&] { fiber_profile(space, lambda, u, 0); }));
  CHECK(throws_kind(ErrorKind::BadParams, [&] {
    norm_power_total(space, lambda, BochnerElement(2, lambda.size()), 1, 1);
  }));
}

TEST_CASE("element arithmetic is coordinatewise") {
  BochnerElement a(1, 3);
  BochnerElement b(1, 3);
  a.set(0, 0, Rat(2));
  a.set(0, 2, Rat(-1));
  b.set(0, 0, Rat(1) / Rat(2));
  b.set(0, 1, Rat(5));

  BochnerElement sum = a;
  sum += b;
  CHECK(sum.at(0, 0) == Rat(5) / Rat(2));
  CHECK(sum.at(0, 1) == 5);
  CHECK(sum.at(0, 2) == -1);
  sum -= b;
  CHECK(sum == a);
  sum *= Rat(-3);
  CHECK(sum.at(0, 0) == -6);
  CHECK(sum.at(0, 2) == 3);
}

TEST_CASE("twisted translation moves entries along the skew action") {
  const Dendrite star = make_star(3);
  const LambdaTable lambda(star);
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const ProbSpace space(&z2, {"s0", "s1"}, {Rat(1) / Rat(2), Rat(1) / Rat(2)},
                        {{0, 1}, {1, 0}});
  const Automorphism swap = leaf_swap12(star);
  const VirtualDendroMorphism vdm =
      verify_cocycle(space, star, {{z2.find("a"), {swap, swap}}});

  BochnerElement u(space.size(), lambda.size());
  u.set(0, pair_index(lambda, star, "c", "l1", "l2"), Rat(1));

  const BochnerElement moved = bochner_act(vdm, lambda, z2.find("a"), u);
  for (int s = 0; s < 2; ++s) {
    for (int i = 0; i < lambda.size(); ++i) {
      const Rat want = (s == 1 && i == pair_index(lambda, star, "c", "l2", "l1")) ? 1 : 0;
      CHECK(moved.at(s, i) == want);
    }
  }

  CHECK(bochner_act(vdm, lambda, z2.identity(), u) == u);

  // The inverse-based formula agrees with pushing entries forward.
  const BochnerElement mixed = scrambled(space, lambda);
  for (int g = 0; g < z2.size(); ++g) {
    CHECK(bochner_act(vdm, lambda, g, mixed) ==
          oracle::act_by_pushforward(vdm, lambda, g, mixed));
  }

  const LambdaTable other(make_path(3));
  CHECK(throws_kind(ErrorKind::MismatchedTree,
                    [&] { bochner_act(vdm, other, z2.find("a"), BochnerElement(2, 0)); }));
}

TEST_CASE("twisted translation is a linear isometric action") {
  const Dendrite star = make_star(3);
  const LambdaTable lambda(star);
  const FiniteGroup s3 =
      FiniteGroup::from_permutations({{"r", {1, 2, 0}}, {"s", {1, 0, 2}}}, 3);
  const ProbSpace space = trivial_space(s3, 1);
  const VirtualDendroMorphism vdm =
      verify_cocycle(space, star,
                     {{s3.find("r"), {leaf_rotation(star)}},
                      {s3.find("s"), {leaf_swap12(star)}}});

  const BochnerElement u = scrambled(space, lambda);
  BochnerElement v = all_ones(space, lambda);
  v *= Rat(2) / Rat(3);

  for (int g = 0; g < s3.size(); ++g) {
    for (int h = 0; h < s3.size(); ++h) {
      CHECK(bochner_act(vdm, lambda, s3.mul(g, h), u) ==
            bochner_act(vdm, lambda, g, bochner_act(vdm, lambda, h, u)));
    }
  }

  for (int g = 0; g < s3.size(); ++g) {
    BochnerElement sum = u;
    sum += v;
    BochnerElement moved_sum = bochner_act(vdm, lambda, g, u);
    moved_sum += bochner_act(vdm, lambda, g, v);
    CHECK(bochner_act(vdm, lambda, g, sum) == moved_sum);

    const BochnerElement moved = bochner_act(vdm, lambda, g, u);
    CHECK(norm_power_total(space, lambda, moved, 1, 1) ==
          norm_power_total(space, lambda, u, 1, 1));
    CHECK(norm_power_total(space, lambda, moved, 2, 2) ==
          norm_power_total(space, lambda, u, 2, 2));
    CHECK(norm_power_total(space, lambda, moved, 2, 1) ==
          norm_power_total(space, lambda, u, 2, 1));
    CHECK(fiber_profile(space, lambda, moved, 1) == fiber_profile(space, lambda, u, 1));
    CHECK(fiber_profile(space, lambda, moved, 2) == fiber_profile(space, lambda, u, 2));
  }
}

TEST_CASE("fixed-subspace dimension counts the coordinate orbits") {
  const Dendrite star = make_star(3);
  const LambdaTable lambda(star);

  // Swapping two leaves pairs the six coordinates into three orbits.
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const ProbSpace zspace = trivial_space(z2, 1);
  const VirtualDendroMorphism swap_vdm =
      verify_cocycle(zspace, star, {{z2.find("a"), {leaf_swap12(star)}}});
  const auto swap_basis = invariant_vector_basis(swap_vdm, lambda);
  CHECK(swap_basis.size() == 3);
  CHECK(swap_basis.size() == oracle::invariant_dimension_by_orbits(swap_vdm, lambda));

  // The leaf rotation splits them into the two orientation classes.
  const FiniteGroup z3 = FiniteGroup::from_permutations({{"a", {1, 2, 0}}}, 3);
  const ProbSpace rspace = trivial_space(z3, 1);
  const VirtualDendroMorphism rot_vdm =
      verify_cocycle(rspace, star, {{z3.find("a"), {leaf_rotation(star)}}});
  const auto rot_basis = invariant_vector_basis(rot_vdm, lambda);
  CHECK(rot_basis.size() == 2);
  CHECK(rot_basis.size() == oracle::invariant_dimension_by_orbits(rot_vdm, lambda));

  // The full leaf symmetry is transitive on ordered distinct pairs.
  const FiniteGroup s3 =
      FiniteGroup::from_permutations({{"r", {1, 2, 0}}, {"s", {1, 0, 2}}}, 3);
  const ProbSpace fspace = trivial_space(s3, 1);
  const VirtualDendroMorphism full_vdm =
      verify_cocycle(fspace, star,
                     {{s3.find("r"), {leaf_rotation(star)}},
                      {s3.find("s"), {leaf_swap12(star)}}});
  CHECK(invariant_vector_basis(full_vdm, lambda).size() == 1);

  // No symmetry at all: every coordinate is its own orbit.
  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const ProbSpace tspace = trivial_space(trivial, 1);
  const VirtualDendroMorphism free = verify_cocycle(tspace, star, {});
  CHECK(invariant_vector_basis(free, lambda).size() == 6);

  // Basis vectors are indicators, fixed by the action, led by the least
  // untouched coordinate.
  for (const auto& vec : rot_basis) {
    for (int g = 0; g < z3.size(); ++g) {
      CHECK(equal_on_support(rspace, bochner_act(rot_vdm, lambda, g, vec), vec));
    }
  }
  CHECK(rot_basis[0].at(0, 0) == 1);
  Rat total = 0;
  for (int i = 0; i < lambda.size(); ++i) total += rot_basis[0].at(0, i) + rot_basis[1].at(0, i);
  CHECK(total == 6);  // the two orbits partition the six coordinates

  // Moving atoms double the orbits' footprint but not their count.
  const ProbSpace moving(&z2, {"s0", "s1"}, {Rat(1) / Rat(2), Rat(1) / Rat(2)},
                         {{0, 1}, {1, 0}});
  const Automorphism swap = leaf_swap12(star);
  const VirtualDendroMorphism riding =
      verify_cocycle(moving, star, {{z2.find("a"), {swap, swap}}});
  const auto riding_basis = invariant_vector_basis(riding, lambda);
  CHECK(riding_basis.size() == 6);
  CHECK(riding_basis.size() == oracle::invariant_dimension_by_orbits(riding, lambda));
}

TEST_CASE("certificate pipeline lands on the hull centers") {
  const Dendrite star = make_star(3);
  const LambdaTable lambda(star);
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const ProbSpace space = trivial_space(z2, 1);
  const VirtualDendroMorphism vdm =
      verify_cocycle(space, star, {{z2.find("a"), {leaf_swap12(star)}}});

  const EquivariantFamily family =
      elementarity_certificate(vdm, lambda, all_ones(space, lambda));
  CHECK(family.kind == FamilyKind::Point);
  CHECK(family.fibers == std::vector<std::vector<int>>{{star.vertex("c")}});

  // Every invariant basis vector certifies through the same center here.
  const FiniteGroup z3 = FiniteGroup::from_permutations({{"a", {1, 2, 0}}}, 3);
  const ProbSpace rspace = trivial_space(z3, 1);
  const VirtualDendroMorphism rot_vdm =
      verify_cocycle(rspace, star, {{z3.find("a"), {leaf_rotation(star)}}});
  for (const auto& vec : invariant_vector_basis(rot_vdm, lambda)) {
    const EquivariantFamily cert = elementarity_certificate(rot_vdm, lambda, vec);
    CHECK(cert.kind == FamilyKind::Point);
    CHECK(cert.fibers == std::vector<std::vector<int>>{{star.vertex("c")}});
  }
}

TEST_CASE("certificate returns an edge pair when the hull has even diameter") {
  const Dendrite dumbbell = make_dumbbell();
  const LambdaTable lambda(dumbbell);
  REQUIRE(lambda.size() == 12);
  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const ProbSpace space = trivial_space(trivial, 1);
  const VirtualDendroMorphism free = verify_cocycle(space, dumbbell, {});

  const EquivariantFamily family =
      elementarity_certificate(free, lambda, all_ones(space, lambda));
  CHECK(family.kind == FamilyKind::Pair);
  CHECK(family.fibers ==
        std::vector<std::vector<int>>{
            {dumbbell.vertex("b1"), dumbbell.vertex("b2")}});
}

TEST_CASE("certificate rejects unusable elements") {
  const Dendrite star = make_star(3);
  const LambdaTable lambda(star);
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const ProbSpace space = trivial_space(z2, 1);
  const VirtualDendroMorphism vdm =
      verify_cocycle(space, star, {{z2.find("a"), {leaf_swap12(star)}}});

  BochnerElement lopsided(space.size(), lambda.size());
  lopsided.set(0, pair_index(lambda, star, "c", "l1", "l2"), Rat(1));
  CHECK(throws_kind(ErrorKind::NotInvariant,
                    [&] { elementarity_certificate(vdm, lambda, lopsided); }));

  CHECK(throws_kind(ErrorKind::ZeroVector, [&] {
    elementarity_certificate(vdm, lambda, BochnerElement(space.size(), lambda.size()));
  }));

  // Two stationary atoms with different fiber maxima: no ergodicity, no
  // constant level.
  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const ProbSpace split = trivial_space(trivial, 2);
  const VirtualDendroMorphism free = verify_cocycle(split, star, {});
  BochnerElement uneven = all_ones(split, lambda);
  for (int i = 0; i < lambda.size(); ++i) uneven.set(1, i, Rat(2));
  CHECK(throws_kind(ErrorKind::NonConstantLevel,
                    [&] { elementarity_certificate(free, lambda, uneven); }));

  // One fiber centers on a vertex, the other on an edge.
  const Dendrite dumbbell = make_dumbbell();
  const LambdaTable dlambda(dumbbell);
  const VirtualDendroMorphism dfree = verify_cocycle(split, dumbbell, {});
  BochnerElement mixed = all_ones(split, dlambda);
  for (int i = 0; i < dlambda.size(); ++i) {
    if (dlambda.at(i).base != dumbbell.vertex("b1")) mixed.set(1, i, Rat(0));
  }
  CHECK(throws_kind(ErrorKind::MixedCenterKind,
                    [&] { elementarity_certificate(dfree, dlambda, mixed); }));
}

TEST_CASE("candidate boundary maps are verified slicewise") {
  const Dendrite path = make_path(5);
  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const ProbSpace space = trivial_space(trivial, 1);
  const VirtualDendroMorphism free = verify_cocycle(space, path, {});
  const ProbSpace boundary(&trivial, {"p", "q"}, {Rat(1) / Rat(2), Rat(1) / Rat(2)},
                           {{0, 1}});

  EquivariantFamily M{FamilyKind::Subdendrite,
                      {{path.vertex("b"), path.vertex("c"), path.vertex("d")}}};

  CandidateFurstenbergMap ends{{{path.vertex("b")}, {path.vertex("d")}}};
  const FurstenbergReport good = verify_furstenberg_candidate(free, boundary, ends, M);
  CHECK(good.equivariance.ok);
  CHECK(good.ends.ok);

  CandidateFurstenbergMap interior{{{path.vertex("b")}, {path.vertex("c")}}};
  const FurstenbergReport mid = verify_furstenberg_candidate(free, boundary, interior, M);
  CHECK(mid.equivariance.ok);
  CHECK_FALSE(mid.ends.ok);
  CHECK(mid.ends.failure.find("not an end") != std::string::npos);

  CandidateFurstenbergMap outside{{{path.vertex("b")}, {path.vertex("e")}}};
  CHECK_FALSE(verify_furstenberg_candidate(free, boundary, outside, M).ends.ok);

  CHECK(throws_kind(ErrorKind::BadParams, [&] {
    verify_furstenberg_candidate(free, boundary, ends,
                                 EquivariantFamily{FamilyKind::Closed, M.fibers});
  }));
  CHECK(throws_kind(ErrorKind::BadParams, [&] {
    verify_furstenberg_candidate(free, boundary, CandidateFurstenbergMap{{{0}}}, M);
  }));
  CHECK(throws_kind(ErrorKind::BadDomain, [&] {
    verify_furstenberg_candidate(free, boundary, CandidateFurstenbergMap{{{0}, {99}}}, M);
  }));

  // An equivariance failure is reported, not thrown.
  const FiniteGroup z2 = FiniteGroup::from_permutations({{"a", {1, 0}}}, 2);
  const Dendrite path3 = make_path(3);
  const ProbSpace fspace = trivial_space(z2, 1);
  const VirtualDendroMorphism flip = verify_cocycle(
      fspace, path3, {{z2.find("a"), {auto_of(path3, {{"a", "c"}, {"c", "a"}})}}});
  const ProbSpace swapped(&z2, {"p", "q"}, {Rat(1) / Rat(2), Rat(1) / Rat(2)},
                          {{0, 1}, {1, 0}});
  EquivariantFamily hub{FamilyKind::Subdendrite, {{path3.vertex("b")}}};
  CandidateFurstenbergMap stuck{{{path3.vertex("a")}, {path3.vertex("a")}}};
  const FurstenbergReport report = verify_furstenberg_candidate(flip, swapped, stuck, hub);
  CHECK_FALSE(report.equivariance.ok);
  CHECK(report.equivariance.failure.find("not equivariant") != std::string::npos);
}

TEST_CASE("pullback of the median class from a three-point boundary") {
  const Dendrite star = make_star(3);
  const LambdaTable lambda(star);
  const FiniteGroup z3 = FiniteGroup::from_permutations({{"a", {1, 2, 0}}}, 3);
  const ProbSpace space = trivial_space(z3, 1);
  const VirtualDendroMorphism vdm =
      verify_cocycle(space, star, {{z3.find("a"), {leaf_rotation(star)}}});
  const ProbSpace boundary(&z3, {"b0", "b1", "b2"},
                           {Rat(1) / Rat(3), Rat(1) / Rat(3), Rat(1) / Rat(3)},
                           {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  const CandidateFurstenbergMap phi{
      {{star.vertex("l1")}, {star.vertex("l2")}, {star.vertex("l3")}}};

  const auto [cochain, report] = pullback_class(vdm, lambda, boundary, phi);

  const BochnerElement& main = cochain.at(0, 1, 2);
  CHECK(main.at(0, pair_index(lambda, star, "c", "l1", "l2")) == 1);
  CHECK(main.at(0, pair_index(lambda, star, "c", "l1", "l3")) == -1);
  CHECK(main.at(0, pair_index(lambda, star, "c", "l2", "l1")) == -1);
  CHECK(main.at(0, pair_index(lambda, star, "c", "l2", "l3")) == 1);
  CHECK(main.at(0, pair_index(lambda, star, "c", "l3", "l1")) == 1);
  CHECK(main.at(0, pair_index(lambda, star, "c", "l3", "l2")) == -1);

  BochnerElement negated = cochain.at(1, 0, 2);
  negated *= Rat(-1);
  CHECK(equal_on_support(space, main, negated));
  CHECK(zero_on_support(space, cochain.at(0, 0, 1)));

  CHECK(report.alternating.ok);
  CHECK(report.alternating.checked == 27);
  CHECK(report.invariance.ok);
  CHECK(report.coboundary.ok);
  CHECK(report.coboundary.checked == 81);
  CHECK_FALSE(report.identically_zero);
  CHECK_FALSE(report.small_essential_images);
  CHECK(report.dichotomy_consistent);

  // A constant map collapses everything to zero, consistently.
  const CandidateFurstenbergMap centre{
      {{star.vertex("c")}, {star.vertex("c")}, {star.vertex("c")}}};
  const auto [zero_table, zero_report] = pullback_class(vdm, lambda, boundary, centre);
  CHECK(zero_report.identically_zero);
  CHECK(zero_report.small_essential_images);
  CHECK(zero_report.dichotomy_consistent);
  CHECK(zero_on_support(space, zero_table.at(0, 1, 2)));

  // Non-equivariant candidates are refused outright.
  const CandidateFurstenbergMap crooked{
      {{star.vertex("l1")}, {star.vertex("l1")}, {star.vertex("l1")}}};
  CHECK(throws_kind(ErrorKind::NotEquivariant,
                    [&] { pullback_class(vdm, lambda, boundary, crooked); }));
}

TEST_CASE("pullback dichotomy flags collinear three-point images") {
  // Three distinct collinear values whose middle point is regular: every
  // triple is supported over the degree-2 median, so the branch-pair class
  // vanishes while the image is large and the two dichotomy booleans
  // disagree. (With the middle point at a branch vertex the class would
  // survive — the spider keeps its branch point off the chosen arc.)
  const Dendrite spider = Dendrite::validate(
      {"c", "l1", "l2", "m", "l3"}, {{"c", "l1"}, {"c", "l2"}, {"c", "m"}, {"m", "l3"}});
  const LambdaTable lambda(spider);
  REQUIRE(lambda.size() == 6);
  const FiniteGroup trivial = FiniteGroup::from_permutations({}, 1);
  const ProbSpace space = trivial_space(trivial, 1);
  const VirtualDendroMorphism free = verify_cocycle(space, spider, {});
  const ProbSpace boundary(&trivial, {"b0", "b1", "b2"},
                           {Rat(1) / Rat(3), Rat(1) / Rat(3), Rat(1) / Rat(3)},
                           {{0, 1, 2}});

  const CandidateFurstenbergMap collinear{
      {{spider.vertex("c")}, {spider.vertex("m")}, {spider.vertex("l3")}}};
  const auto [table, report] = pullback_class(free, lambda, boundary, collinear);
  CHECK(report.identically_zero);
  CHECK_FALSE(report.small_essential_images);
  CHECK_FALSE(report.dichotomy_consistent);
  CHECK(report.alternating.ok);
  CHECK(report.coboundary.ok);

  // Distinct points around the branch vertex do carry the class: the same
  // image size with a branch median lands on the consistent side.
  const CandidateFurstenbergMap around{
      {{spider.vertex("l1")}, {spider.vertex("l2")}, {spider.vertex("l3")}}};
  const auto [branch_table, branch_report] = pullback_class(free, lambda, boundary, around);
  CHECK_FALSE(branch_report.identically_zero);
  CHECK_FALSE(branch_report.small_essential_images);
  CHECK(branch_report.dichotomy_consistent);

  // A two-point image stays on the vanishing side.
  const ProbSpace two(&trivial, {"b0", "b1"}, {Rat(1) / Rat(2), Rat(1) / Rat(2)}, {{0, 1}});
  const CandidateFurstenbergMap pair{{{spider.vertex("l1")}, {spider.vertex("l2")}}};
  const auto [small_table, small_report] = pullback_class(free, lambda, two, pair);
  CHECK(small_report.identically_zero);
  CHECK(small_report.small_essential_images);
  CHECK(small_report.dichotomy_consistent);
}
