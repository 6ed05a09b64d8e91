#ifndef DENDRO_BUNDLE_HPP
#define DENDRO_BUNDLE_HPP

#include <map>
#include <tuple>
#include <vector>

#include "dendro/dendrite.hpp"

namespace dendro {

/// Connected component of X minus {base}, labeled by the unique neighbor
/// of base it contains.
struct Component {
  int base = -1;
  int label = -1;
  std::vector<int> members;  // ascending vertex indices
};

/// (x, C): a point together with one component of its complement.
struct BundlePoint {
  int base = -1;
  int label = -1;
  auto operator<=>(const BundlePoint&) const = default;
};

/// Fibered square of the fundamental bundle; equal labels are allowed.
struct DoubleBundlePoint {
  int base = -1;
  int first = -1;
  int second = -1;
  auto operator<=>(const DoubleBundlePoint&) const = default;
};

/// Double-bundle point over a branch vertex with distinct components.
struct LambdaIndex {
  int base = -1;
  int first = -1;
  int second = -1;
  auto operator<=>(const LambdaIndex&) const = default;
};

std::vector<Component> components_at(const Dendrite& tree, int x);

/// All of Bund(X): one point per (vertex, neighbor) pair.
std::vector<BundlePoint> bundle_points(const Dendrite& tree);

/// All of Bund^2(X), equal component pairs included.
std::vector<DoubleBundlePoint> double_bundle_points(const Dendrite& tree);

/// Lambda(X): ordered distinct component pairs over the branch points,
/// sorted by (base id, first id, second id).
std::vector<LambdaIndex> lambda_index(const Dendrite& tree);

BundlePoint act_bundle(const Dendrite& tree, const Automorphism& g, const BundlePoint& pt);
DoubleBundlePoint act_bundle(const Dendrite& tree, const Automorphism& g,
                             const DoubleBundlePoint& pt);
LambdaIndex act_bundle(const Dendrite& tree, const Automorphism& g, const LambdaIndex& pt);

/// Indexed Lambda(X) with position lookup, for cocycle tables and Bochner
/// coordinates. Keeps its own copy of the tree.
class LambdaTable {
public:
  explicit LambdaTable(const Dendrite& tree);

  const Dendrite& tree() const { return tree_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const LambdaIndex& at(int i) const { return entries_[i]; }
  int index_of(const LambdaIndex& lam) const;  // throws BadDomain if absent

  /// Position of g applied to entry i.
  int act(const Automorphism& g, int i) const;

private:
  Dendrite tree_;
  std::vector<LambdaIndex> entries_;
  std::map<std::tuple<int, int, int>, int> position_;
};

}  // namespace dendro

#endif
