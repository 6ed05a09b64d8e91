#ifndef DENDRO_PROB_SPACE_HPP
#define DENDRO_PROB_SPACE_HPP

#include <string>
#include <vector>

#include "dendro/group.hpp"
#include "dendro/rational.hpp"

namespace dendro {

/// Finite measured group space: named atoms, exact rational measure summing
/// to 1, and a measure-preserving action given by a full table.
class ProbSpace {
public:
  /// action[g][s] = index of g.s; verified to be a measure-preserving group
  /// action. The group reference must outlive the space.
  ProbSpace(const FiniteGroup* group, std::vector<std::string> atoms, std::vector<Rat> measure,
            std::vector<std::vector<int>> action);

  const FiniteGroup& group() const { return *group_; }
  int size() const { return static_cast<int>(atoms_.size()); }
  const std::string& atom(int s) const { return atoms_[s]; }
  int find_atom(const std::string& name) const;  // -1 when absent
  const Rat& measure(int s) const { return measure_[s]; }
  int act(int g, int s) const { return action_[g][s]; }

  /// Atoms of positive measure, ascending.
  const std::vector<int>& support() const { return support_; }
  bool in_support(int s) const { return measure_[s] > 0; }

  /// Orbits of the support under the action, each sorted, ordered by least
  /// atom. (Positive-measure atoms never reach zero-measure ones: the
  /// action preserves measure.)
  std::vector<std::vector<int>> support_orbits() const;

  /// True iff the positive-measure atoms form a single orbit.
  bool is_ergodic() const { return support_orbits().size() == 1; }

private:
  const FiniteGroup* group_;
  std::vector<std::string> atoms_;
  std::vector<Rat> measure_;
  std::vector<std::vector<int>> action_;
  std::vector<int> support_;
};

}  // namespace dendro

#endif
