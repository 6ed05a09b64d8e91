#include "dendro/median_cocycle.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dendro/error.hpp"

namespace dendro {

void SparseBundleFunction::add(int base, int first, int second, int delta) {
  if (delta == 0) return;
  const std::tuple<int, int, int> key{base, first, second};
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, delta);
    return;
  }
  it->second += delta;
  if (it->second == 0) entries_.erase(it);
}

int SparseBundleFunction::value(int base, int first, int second) const {
  auto it = entries_.find({base, first, second});
  return it == entries_.end() ? 0 : it->second;
}

void SparseBundleFunction::add_all(const SparseBundleFunction& other, int scale) {
  for (const auto& [key, v] : other.entries_) {
    add(std::get<0>(key), std::get<1>(key), std::get<2>(key), scale * v);
  }
}

SparseBundleFunction SparseBundleFunction::restricted_to_branch_pairs() const {
  SparseBundleFunction out(tree_, BundleDomain::BranchPairs);
  for (const auto& [key, v] : entries_) {
    if (tree_->degree(std::get<0>(key)) >= 3) {
      out.add(std::get<0>(key), std::get<1>(key), std::get<2>(key), v);
    }
  }
  return out;
}

SparseBundleFunction SparseBundleFunction::pushforward(const Automorphism& g) const {
  SparseBundleFunction out(tree_, domain_);
  for (const auto& [key, v] : entries_) {
    out.add(g(std::get<0>(key)), g(std::get<1>(key)), g(std::get<2>(key)), v);
  }
  return out;
}

int SparseBundleFunction::l1_norm() const {
  int total = 0;
  for (const auto& [key, v] : entries_) total += std::abs(v);
  return total;
}

int SparseBundleFunction::l2_norm_squared() const {
  int total = 0;
  for (const auto& [key, v] : entries_) total += v * v;
  return total;
}

int SparseBundleFunction::linf_norm() const {
  int best = 0;
  for (const auto& [key, v] : entries_) best = std::max(best, std::abs(v));
  return best;
}

SparseBundleFunction alpha(const Dendrite& tree, int p, int q) {
  SparseBundleFunction out(&tree, BundleDomain::DoubleBundle);
  if (p == q) return out;
  const std::vector<int> path = arc(tree, p, q);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const int a = path[i];
    const int towards_p = tree.step_towards(a, p);
    const int towards_q = tree.step_towards(a, q);
    out.add(a, towards_p, towards_q, +1);
    out.add(a, towards_q, towards_p, -1);
  }
  return out;
}

SparseBundleFunction omega(const Dendrite& tree, int p, int q, int r) {
  SparseBundleFunction sum = alpha(tree, p, q);
  sum.add_all(alpha(tree, q, r), 1);
  sum.add_all(alpha(tree, r, p), 1);
  SparseBundleFunction out = sum.restricted_to_branch_pairs();

  const int m = median(tree, p, q, r);
  for (const auto& [key, v] : out.entries()) {
    if (std::abs(v) > 2) {
      throw std::logic_error("median cocycle produced a value of modulus > 2");
    }
    if (std::get<0>(key) != m) {
      throw std::logic_error("median cocycle support escaped the median fiber");
    }
  }
  return out;
}

namespace {

std::string describe_quadruple(const Dendrite& tree, int p, int q, int r, int w) {
  std::ostringstream os;
  os << "(" << tree.id(p) << "," << tree.id(q) << "," << tree.id(r) << "," << tree.id(w) << ")";
  return os.str();
}

bool coboundary_vanishes(const Dendrite& tree, const OmegaProvider& provider, int p, int q,
                         int r, int w) {
  SparseBundleFunction total = provider(tree, q, r, w);
  total.add_all(provider(tree, p, r, w), -1);
  total.add_all(provider(tree, p, q, w), 1);
  total.add_all(provider(tree, p, q, r), -1);
  return total.is_zero();
}

}  // namespace

CheckOutcome check_coboundary(const Dendrite& tree, const CoboundaryMode& mode,
                              const OmegaProvider& provider) {
  CheckOutcome outcome;
  const int n = tree.size();
  if (mode.exhaustive) {
    if (n > 10) {
      throw Error(ErrorKind::TooLarge, "exhaustive coboundary check is capped at 10 vertices");
    }
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        for (int r = 0; r < n; ++r) {
          for (int w = 0; w < n; ++w) {
            ++outcome.checked;
            if (!coboundary_vanishes(tree, provider, p, q, r, w)) {
              outcome.ok = false;
              outcome.failure =
                  "alternating sum is nonzero at " + describe_quadruple(tree, p, q, r, w);
              return outcome;
            }
          }
        }
      }
    }
    return outcome;
  }

  std::mt19937_64 rng(mode.seed);
  for (long long i = 0; i < mode.samples; ++i) {
    const int p = static_cast<int>(rng() % n);
    const int q = static_cast<int>(rng() % n);
    const int r = static_cast<int>(rng() % n);
    const int w = static_cast<int>(rng() % n);
    ++outcome.checked;
    if (!coboundary_vanishes(tree, provider, p, q, r, w)) {
      outcome.ok = false;
      outcome.failure = "alternating sum is nonzero at " + describe_quadruple(tree, p, q, r, w);
      return outcome;
    }
  }
  return outcome;
}

CheckOutcome check_equivariance(const Dendrite& tree) {
  CheckOutcome outcome;
  const int n = tree.size();
  const std::vector<Automorphism> autos = automorphisms(tree);

  // Large symmetric trees have thousands of automorphisms; compute each of
  // the n^3 cocycle values once instead of once per automorphism.
  std::vector<SparseBundleFunction> table;
  table.reserve(static_cast<std::size_t>(n) * n * n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      for (int r = 0; r < n; ++r) table.push_back(omega(tree, p, q, r));
    }
  }
  auto at = [&](int p, int q, int r) -> const SparseBundleFunction& {
    return table[(static_cast<std::size_t>(p) * n + q) * n + r];
  };

  for (const Automorphism& g : autos) {
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        for (int r = 0; r < n; ++r) {
          ++outcome.checked;
          const SparseBundleFunction moved = at(p, q, r).pushforward(g);
          const SparseBundleFunction& direct = at(g(p), g(q), g(r));
          if (!(moved == direct)) {
            outcome.ok = false;
            std::ostringstream os;
            os << "cocycle is not equivariant at (" << tree.id(p) << "," << tree.id(q) << ","
               << tree.id(r) << ") under some automorphism";
            outcome.failure = os.str();
            return outcome;
          }
        }
      }
    }
  }
  return outcome;
}

}  // namespace dendro
