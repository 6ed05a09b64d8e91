#include "dendro/bundle.hpp"

#include <algorithm>
#include <queue>

#include "dendro/error.hpp"

namespace dendro {

std::vector<Component> components_at(const Dendrite& tree, int x) {
  std::vector<Component> out;
  std::vector<char> seen(tree.size(), 0);
  seen[x] = 1;
  for (int nb : tree.neighbors(x)) {
    Component comp;
    comp.base = x;
    comp.label = nb;
    std::queue<int> work;
    work.push(nb);
    seen[nb] = 1;
    while (!work.empty()) {
      const int v = work.front();
      work.pop();
      comp.members.push_back(v);
      for (int w : tree.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          work.push(w);
        }
      }
    }
    std::sort(comp.members.begin(), comp.members.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<BundlePoint> bundle_points(const Dendrite& tree) {
  std::vector<BundlePoint> out;
  for (int x = 0; x < tree.size(); ++x) {
    for (int nb : tree.neighbors(x)) out.push_back({x, nb});
  }
  return out;
}

std::vector<DoubleBundlePoint> double_bundle_points(const Dendrite& tree) {
  std::vector<DoubleBundlePoint> out;
  for (int x = 0; x < tree.size(); ++x) {
    for (int a : tree.neighbors(x)) {
      for (int b : tree.neighbors(x)) out.push_back({x, a, b});
    }
  }
  return out;
}

std::vector<LambdaIndex> lambda_index(const Dendrite& tree) {
  std::vector<LambdaIndex> out;
  for (int x : tree.branch_points()) {
    for (int a : tree.neighbors(x)) {
      for (int b : tree.neighbors(x)) {
        if (a != b) out.push_back({x, a, b});
      }
    }
  }
  auto by_id = [&tree](const LambdaIndex& l, const LambdaIndex& r) {
    return std::make_tuple(tree.id(l.base), tree.id(l.first), tree.id(l.second)) <
           std::make_tuple(tree.id(r.base), tree.id(r.first), tree.id(r.second));
  };
  std::sort(out.begin(), out.end(), by_id);
  return out;
}

// An automorphism sends the component of X \ {x} containing neighbor n to
// the component of X \ {g(x)} containing g(n), so labels just map through g.
BundlePoint act_bundle(const Dendrite& tree, const Automorphism& g, const BundlePoint& pt) {
  (void)tree;
  return {g(pt.base), g(pt.label)};
}

DoubleBundlePoint act_bundle(const Dendrite& tree, const Automorphism& g,
                             const DoubleBundlePoint& pt) {
  (void)tree;
  return {g(pt.base), g(pt.first), g(pt.second)};
}

LambdaIndex act_bundle(const Dendrite& tree, const Automorphism& g, const LambdaIndex& pt) {
  (void)tree;
  return {g(pt.base), g(pt.first), g(pt.second)};
}

LambdaTable::LambdaTable(const Dendrite& tree) : tree_(tree), entries_(lambda_index(tree)) {
  for (int i = 0; i < static_cast<int>(entries_.size()); ++i) {
    const auto& lam = entries_[i];
    position_[{lam.base, lam.first, lam.second}] = i;
  }
}

int LambdaTable::index_of(const LambdaIndex& lam) const {
  auto it = position_.find({lam.base, lam.first, lam.second});
  if (it == position_.end()) {
    throw Error(ErrorKind::BadDomain, "point is not in the branch-pair table");
  }
  return it->second;
}

int LambdaTable::act(const Automorphism& g, int i) const {
  return index_of(act_bundle(tree_, g, entries_[i]));
}

}  // namespace dendro
