#include "dendro/simplex.hpp"

#include <stdexcept>

namespace dendro {

std::optional<std::vector<Rat>> solve_equality_feasibility(std::vector<std::vector<Rat>> rows,
                                                           std::vector<Rat> rhs) {
  const int m = static_cast<int>(rows.size());
  if (static_cast<int>(rhs.size()) != m) {
    throw std::invalid_argument("row/rhs shape mismatch");
  }
  const int n = m == 0 ? 0 : static_cast<int>(rows[0].size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("ragged constraint matrix");
    }
  }
  if (m == 0) return std::vector<Rat>(n, Rat(0));

  // Phase I: append one artificial variable per row and minimize their sum.
  for (int i = 0; i < m; ++i) {
    if (rhs[i] < 0) {
      rhs[i] = -rhs[i];
      for (Rat& v : rows[i]) v = -v;
    }
    for (int k = 0; k < m; ++k) rows[i].push_back(Rat(i == k ? 1 : 0));
  }
  const int total = n + m;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  auto reduced_cost = [&](int j) {
    Rat c = j >= n ? 1 : 0;
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= n) c -= rows[i][j];
    }
    return c;
  };

  while (true) {
    int entering = -1;
    for (int j = 0; j < total; ++j) {
      if (reduced_cost(j) < 0) {
        entering = j;  // Bland: first improving column
        break;
      }
    }
    if (entering < 0) break;

    int leaving = -1;
    Rat best_ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (rows[i][entering] <= 0) continue;
      const Rat ratio = rhs[i] / rows[i][entering];
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) {
      // Unbounded phase-I objective cannot happen (it is bounded below by
      // zero); reaching this means the tableau is corrupt.
      throw std::logic_error("phase-I simplex found an unbounded direction");
    }

    const Rat pivot = rows[leaving][entering];
    for (Rat& v : rows[leaving]) v /= pivot;
    rhs[leaving] /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leaving) continue;
      const Rat factor = rows[i][entering];
      if (factor == 0) continue;
      for (int j = 0; j < total; ++j) rows[i][j] -= factor * rows[leaving][j];
      rhs[i] -= factor * rhs[leaving];
    }
    basis[leaving] = entering;
  }

  Rat objective = 0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= n) objective += rhs[i];
  }
  if (objective != 0) return std::nullopt;

  std::vector<Rat> x(n, Rat(0));
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = rhs[i];
  }
  return x;
}

}  // namespace dendro
