#include "dendro/prob_space.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "dendro/error.hpp"

namespace dendro {

ProbSpace::ProbSpace(const FiniteGroup* group, std::vector<std::string> atoms,
                     std::vector<Rat> measure, std::vector<std::vector<int>> action)
    : group_(group),
      atoms_(std::move(atoms)),
      measure_(std::move(measure)),
      action_(std::move(action)) {
  const int n = size();
  if (n == 0) throw Error(ErrorKind::EmptySet, "space has no atoms");
  std::set<std::string> seen(atoms_.begin(), atoms_.end());
  if (static_cast<int>(seen.size()) != n) {
    throw Error(ErrorKind::ParseError, "atom names are not distinct");
  }

  if (static_cast<int>(measure_.size()) != n) {
    throw Error(ErrorKind::MeasureInvalid, "measure does not cover every atom");
  }
  Rat total = 0;
  for (const Rat& m : measure_) {
    if (m < 0) throw Error(ErrorKind::MeasureInvalid, "negative atom measure");
    total += m;
  }
  if (total != 1) throw Error(ErrorKind::MeasureInvalid, "measure does not sum to 1");

  if (static_cast<int>(action_.size()) != group_->size()) {
    throw Error(ErrorKind::ActionInvalid, "action table does not cover every element");
  }
  for (const auto& row : action_) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorKind::ActionInvalid, "action row does not cover every atom");
    }
    for (int v : row) {
      if (v < 0 || v >= n) throw Error(ErrorKind::ActionInvalid, "action image is not an atom");
    }
  }
  for (int s = 0; s < n; ++s) {
    if (action_[group_->identity()][s] != s) {
      throw Error(ErrorKind::ActionInvalid, "identity element moves atom " + atoms_[s]);
    }
  }
  for (int a = 0; a < group_->size(); ++a) {
    for (int b = 0; b < group_->size(); ++b) {
      const int ab = group_->mul(a, b);
      for (int s = 0; s < n; ++s) {
        if (action_[ab][s] != action_[a][action_[b][s]]) {
          throw Error(ErrorKind::ActionInvalid,
                      "action law fails at (" + group_->name(a) + "," + group_->name(b) + "," +
                          atoms_[s] + ")");
        }
      }
    }
  }
  for (int g = 0; g < group_->size(); ++g) {
    for (int s = 0; s < n; ++s) {
      if (measure_[action_[g][s]] != measure_[s]) {
        throw Error(ErrorKind::MeasureInvalid,
                    "action does not preserve measure at (" + group_->name(g) + "," + atoms_[s] +
                        ")");
      }
    }
  }

  for (int s = 0; s < n; ++s) {
    if (measure_[s] > 0) support_.push_back(s);
  }
}

int ProbSpace::find_atom(const std::string& name) const {
  for (int s = 0; s < size(); ++s) {
    if (atoms_[s] == name) return s;
  }
  return -1;
}

std::vector<std::vector<int>> ProbSpace::support_orbits() const {
  std::vector<std::vector<int>> orbits;
  std::vector<char> placed(size(), 0);
  for (int s : support_) {
    if (placed[s]) continue;
    std::set<int> orbit;
    std::queue<int> work;
    work.push(s);
    orbit.insert(s);
    while (!work.empty()) {
      const int cur = work.front();
      work.pop();
      for (int g = 0; g < group_->size(); ++g) {
        const int img = action_[g][cur];
        if (orbit.insert(img).second) work.push(img);
      }
    }
    std::vector<int> sorted(orbit.begin(), orbit.end());
    for (int x : sorted) placed[x] = 1;
    orbits.push_back(std::move(sorted));
  }
  return orbits;
}

}  // namespace dendro
