#ifndef DENDRO_SIMPLEX_HPP
#define DENDRO_SIMPLEX_HPP

#include <optional>
#include <vector>

#include "dendro/rational.hpp"

namespace dendro {

/// Decides feasibility of {A x = b, x >= 0} over the rationals and returns
/// a basic feasible point when one exists. Phase-I simplex with Bland's
/// rule, so termination is guaranteed and no tolerances are involved.
std::optional<std::vector<Rat>> solve_equality_feasibility(std::vector<std::vector<Rat>> rows,
                                                           std::vector<Rat> rhs);

}  // namespace dendro

#endif
