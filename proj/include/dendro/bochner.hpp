#ifndef DENDRO_BOCHNER_HPP
#define DENDRO_BOCHNER_HPP

#include <utility>
#include <vector>

#include "dendro/bundle.hpp"
#include "dendro/cocycle.hpp"
#include "dendro/rational.hpp"

namespace dendro {

/// Element of the finite Bochner space: one rational per (atom, branch-pair)
/// coordinate. Dense storage; the meaning of coordinate i is fixed by the
/// LambdaTable the element was built against.
class BochnerElement {
public:
  BochnerElement(int atoms, int lambda_size)
      : values_(atoms, std::vector<Rat>(lambda_size, Rat(0))) {}

  int atoms() const { return static_cast<int>(values_.size()); }
  int lambda_size() const { return values_.empty() ? 0 : static_cast<int>(values_[0].size()); }

  const Rat& at(int s, int i) const { return values_[s][i]; }
  void set(int s, int i, Rat v) { values_[s][i] = std::move(v); }

  bool operator==(const BochnerElement&) const = default;

  BochnerElement& operator+=(const BochnerElement& other);
  BochnerElement& operator-=(const BochnerElement& other);
  BochnerElement& operator*=(const Rat& scale);

private:
  std::vector<std::vector<Rat>> values_;
};

bool zero_on_support(const ProbSpace& space, const BochnerElement& u);
bool equal_on_support(const ProbSpace& space, const BochnerElement& a, const BochnerElement& b);

struct NormExponent {
  bool is_infinity = false;
  Rat value = 1;
};

/// L^q(l^p) norm with the measure weights, as a float. Throws BadExponent
/// below 1.
double bochner_norm(const ProbSpace& space, const LambdaTable& lambda, const BochnerElement& u,
                    const NormExponent& q, const Rat& p);

/// Exact companion of the norm for integer exponents with p | q: the sum
/// over the support of mu(s) * (sum_a |u(s,a)|^p)^(q/p). Monotone in the
/// norm, so exact equality here is exact equality of norms.
Rat norm_power_total(const ProbSpace& space, const LambdaTable& lambda, const BochnerElement& u,
                     int q, int p);

/// Sorted multiset of (atom measure, fiber |.|^p power sum) over the
/// support. Two elements with equal profiles have equal L^q(l^p) norms for
/// every q, including infinity — the exact route for non-integral q/p.
std::vector<std::pair<Rat, Rat>> fiber_profile(const ProbSpace& space, const LambdaTable& lambda,
                                               const BochnerElement& u, int p);

/// Twisted translation: (g.u)(s)(a) = u(g^{-1}.s)(sigma(g^{-1},s)(a));
/// equivalently each entry (t,b) moves to (g.t, sigma(g,t)b).
BochnerElement bochner_act(const VirtualDendroMorphism& vdm, const LambdaTable& lambda, int g,
                           const BochnerElement& u);

/// Basis of the fixed subspace: the action permutes support x branch-pair
/// coordinates, so fixed vectors are spanned by orbit indicators, one per
/// orbit, ordered by least coordinate.
std::vector<BochnerElement> invariant_vector_basis(const VirtualDendroMorphism& vdm,
                                                   const LambdaTable& lambda);

/// Runs the level-set pipeline on a fixed nonzero element: top level sets,
/// their projections to branch points, the hulls, and the hull centers;
/// returns the resulting Point or Pair family (checked equivariant).
EquivariantFamily elementarity_certificate(const VirtualDendroMorphism& vdm,
                                           const LambdaTable& lambda, const BochnerElement& u);

/// phi[b][s] = vertex assigned to (boundary point, atom).
struct CandidateFurstenbergMap {
  std::vector<std::vector<int>> assignment;
};

struct FurstenbergReport {
  CheckOutcome equivariance;  // phi(g.b, g.s) == sigma(g,s) phi(b,s)
  CheckOutcome ends;          // each slice value is an end of the fiber of M
};

/// Report-only verification of a candidate boundary map against a
/// subdendrite family; the boundary is any measured space of the same group.
FurstenbergReport verify_furstenberg_candidate(const VirtualDendroMorphism& vdm,
                                               const ProbSpace& boundary,
                                               const CandidateFurstenbergMap& phi,
                                               const EquivariantFamily& M);

/// table[(b0*|B| + b1)*|B| + b2] = the pulled-back element of that triple.
struct PullbackCochain {
  int boundary_size = 0;
  std::vector<BochnerElement> table;

  const BochnerElement& at(int b0, int b1, int b2) const {
    return table[(b0 * boundary_size + b1) * boundary_size + b2];
  }
};

struct PullbackReport {
  CheckOutcome alternating;
  CheckOutcome invariance;
  CheckOutcome coboundary;
  bool identically_zero = false;        // over support atoms and triples
  bool small_essential_images = false;  // every slice image has <= 2 points
  bool dichotomy_consistent = false;    // the two booleans above agree
};

/// Builds the full pulled-back cochain table omega(phi_s(b0), phi_s(b1),
/// phi_s(b2)) and verifies alternation, invariance, the coboundary identity,
/// and the vanishing dichotomy. Requires phi equivariant (NotEquivariant).
std::pair<PullbackCochain, PullbackReport> pullback_class(const VirtualDendroMorphism& vdm,
                                                          const LambdaTable& lambda,
                                                          const ProbSpace& boundary,
                                                          const CandidateFurstenbergMap& phi);

}  // namespace dendro

#endif
