#ifndef DENDRO_GROUP_HPP
#define DENDRO_GROUP_HPP

#include <string>
#include <utility>
#include <vector>

namespace dendro {

/// Finite group with named elements and a fully verified multiplication
/// table. Element 0 is always the identity.
class FiniteGroup {
public:
  /// Builds from an explicit table; table[a][b] is the index of a*b.
  /// Verifies identity, inverses, and associativity.
  static FiniteGroup from_table(std::vector<std::string> names,
                                std::vector<std::vector<int>> table);

  /// Closes a set of named permutations of {0..degree-1} under composition.
  /// Elements are named by their first (shortest, generator-ordered) word;
  /// the identity is named "e".
  static FiniteGroup from_permutations(
      const std::vector<std::pair<std::string, std::vector<int>>>& generators, int degree);

  int size() const { return static_cast<int>(names_.size()); }
  int identity() const { return 0; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::string& name(int a) const { return names_[a]; }
  int find(const std::string& name) const;  // -1 when absent

  /// Deterministic generating set: greedily take the first element (in index
  /// order) outside the closure of what has been taken so far.
  const std::vector<int>& generators() const { return generators_; }

  /// Closure of the given elements under product and inverse, sorted.
  std::vector<int> generated_subgroup(std::vector<int> seed) const;

  bool is_subgroup(const std::vector<int>& elements) const;

  /// Left cosets of a subgroup, each sorted, ordered by least representative.
  std::vector<std::vector<int>> left_cosets(const std::vector<int>& subgroup) const;

private:
  FiniteGroup() = default;
  void validate_laws() const;
  void compute_inverses();
  void compute_generators();

  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
};

}  // namespace dendro

#endif
