#ifndef DENDRO_MEDIAN_COCYCLE_HPP
#define DENDRO_MEDIAN_COCYCLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "dendro/bundle.hpp"
#include "dendro/dendrite.hpp"

namespace dendro {

enum class BundleDomain { DoubleBundle, BranchPairs };

/// Integer-valued function on the double bundle (or its branch-pair part),
/// stored sparsely; zero entries are never kept.
class SparseBundleFunction {
public:
  SparseBundleFunction(const Dendrite* tree, BundleDomain domain)
      : tree_(tree), domain_(domain) {}

  const Dendrite& tree() const { return *tree_; }
  BundleDomain domain() const { return domain_; }

  void add(int base, int first, int second, int delta);
  int value(int base, int first, int second) const;
  bool is_zero() const { return entries_.empty(); }
  int support_size() const { return static_cast<int>(entries_.size()); }
  const std::map<std::tuple<int, int, int>, int>& entries() const { return entries_; }

  void add_all(const SparseBundleFunction& other, int scale);

  /// Keep only entries whose base is a branch point (components are already
  /// distinct for every stored entry).
  SparseBundleFunction restricted_to_branch_pairs() const;

  /// (g.f)(x, C, C') = f applied to the g-preimage; equivalently each stored
  /// entry moves forward along g.
  SparseBundleFunction pushforward(const Automorphism& g) const;

  int l1_norm() const;
  int l2_norm_squared() const;
  int linf_norm() const;

  bool operator==(const SparseBundleFunction& other) const {
    return entries_ == other.entries_;
  }

private:
  const Dendrite* tree_;
  BundleDomain domain_;
  std::map<std::tuple<int, int, int>, int> entries_;
};

/// Arc indicator alpha(p,q): +1 on (a, C_p, C_q) and -1 on (a, C_q, C_p)
/// for every vertex a strictly between p and q, where C_p, C_q are the
/// components of X \ {a} holding p and q.
SparseBundleFunction alpha(const Dendrite& tree, int p, int q);

/// Median cocycle: the cyclic alpha sum of a triple, restricted to branch
/// pairs. Checks the two structural invariants (values bounded by 2 in
/// absolute value, support contained in the fiber over the median) before
/// returning.
SparseBundleFunction omega(const Dendrite& tree, int p, int q, int r);

using OmegaProvider = std::function<SparseBundleFunction(const Dendrite&, int, int, int)>;

struct CoboundaryMode {
  bool exhaustive = true;
  std::uint64_t seed = 0;
  long long samples = 0;
};

struct CheckOutcome {
  bool ok = true;
  long long checked = 0;
  std::string failure;  // human-readable description of the first violation
};

/// Verifies the alternating-sum identity of omega over quadruples of
/// vertices, either all of them or a seeded sample.
CheckOutcome check_coboundary(const Dendrite& tree, const CoboundaryMode& mode,
                              const OmegaProvider& provider = omega);

/// Verifies omega(g p, g q, g r) == g . omega(p, q, r) for every
/// automorphism g and every vertex triple.
CheckOutcome check_equivariance(const Dendrite& tree);

}  // namespace dendro

#endif
