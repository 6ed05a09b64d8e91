#ifndef DENDRO_COCYCLE_HPP
#define DENDRO_COCYCLE_HPP

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dendro/dendrite.hpp"
#include "dendro/median_cocycle.hpp"
#include "dendro/prob_space.hpp"
#include "dendro/rational.hpp"

namespace dendro {

/// Measurable cocycle over a finite measured group space, valued in the
/// automorphisms of a fixed tree. The table is total and verified against
/// the composition identity sigma(g1 g2, s) = sigma(g1, g2.s) o sigma(g2, s).
struct VirtualDendroMorphism {
  const ProbSpace* space = nullptr;
  const Dendrite* tree = nullptr;
  std::vector<std::vector<Automorphism>> table;  // [element][atom]

  const FiniteGroup& group() const { return space->group(); }
  const Automorphism& at(int g, int s) const { return table[g][s]; }
};

enum class FamilyKind { Point, Pair, Closed, Subdendrite };

/// Fiberwise vertex sets over the atoms; fibers at zero-measure atoms are
/// left empty and ignored by every check (almost-everywhere semantics).
struct EquivariantFamily {
  FamilyKind kind = FamilyKind::Closed;
  std::vector<std::vector<int>> fibers;  // per atom, sorted vertex indices

  bool operator==(const EquivariantFamily&) const = default;
};

/// Fiberwise probability vectors over the vertices, one per atom.
struct MeasureFamily {
  std::vector<std::vector<Rat>> fibers;
};

/// Builds the total table from rows given on any generating subset (the
/// identity row is implied), deriving the rest through the composition
/// identity, then verifies the identity on the full table.
VirtualDendroMorphism verify_cocycle(const ProbSpace& space, const Dendrite& tree,
                                     const std::vector<std::pair<int, std::vector<Automorphism>>>& given);

/// g.(s, a) = (g.s, sigma(g,s)a).
std::pair<int, int> skew_action(const VirtualDendroMorphism& vdm, int g, std::pair<int, int> sa);

/// Exhaustively confirms that skew_action is a group action on atoms x vertices.
CheckOutcome check_skew_action_law(const VirtualDendroMorphism& vdm);

/// Conjugate cocycle sigma'(g,s) = f(g.s)^{-1} sigma(g,s) f(s); f is total.
VirtualDendroMorphism twist(const VirtualDendroMorphism& vdm, const std::vector<Automorphism>& f);

/// Exhaustive search for a conjugating family; the search space has size
/// |Aut(X)|^|atoms| and is refused above the bound.
std::optional<std::vector<Automorphism>> are_cohomologous(const VirtualDendroMorphism& first,
                                                          const VirtualDendroMorphism& second,
                                                          long long bound = 1000000);

CheckOutcome check_equivariant_family(const VirtualDendroMorphism& vdm,
                                      const EquivariantFamily& family);
CheckOutcome check_measure_family(const VirtualDendroMorphism& vdm, const MeasureFamily& family);

/// Searches for an equivariant family of 1- or 2-point fibers by seeding
/// each support orbit and propagating along the skew action. Point
/// witnesses win over Pair witnesses; ties break lexicographically by
/// (atom order, vertex identifier).
std::optional<EquivariantFamily> is_elementary_search(const VirtualDendroMorphism& vdm);

/// Decides existence of an equivariant family of probability vectors by
/// exact rational LP feasibility; returns the solver's basic point.
std::optional<MeasureFamily> invariant_measure_lp(const VirtualDendroMorphism& vdm);

struct MinimalFamilyPair {
  EquivariantFamily closed;  // minimal equivariant closed family
  EquivariantFamily hull;    // fiberwise dendro-hull, kind Subdendrite
};

/// All minimal equivariant closed families over the support: one skew-orbit
/// choice per support orbit, combined across orbits. Refuses to enumerate
/// more than `bound` families.
std::vector<MinimalFamilyPair> minimal_families(const VirtualDendroMorphism& vdm,
                                                long long bound = 1000000);

/// a_s := retraction of N_s onto the subdendrite M_s, which must be
/// single-valued; the resulting point family is equivariant by construction
/// and re-checked before returning.
EquivariantFamily retraction_point_family(const VirtualDendroMorphism& vdm,
                                          const EquivariantFamily& M, const EquivariantFamily& N);

/// Owns the subgroup and restricted space that the morphism points into.
struct RestrictedMorphism {
  std::unique_ptr<FiniteGroup> group;
  std::unique_ptr<ProbSpace> space;
  VirtualDendroMorphism morphism;
};

RestrictedMorphism restrict_to_subgroup(const VirtualDendroMorphism& vdm,
                                        const std::vector<int>& elements);

}  // namespace dendro

#endif
