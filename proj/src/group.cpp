#include "dendro/group.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "dendro/error.hpp"

namespace dendro {

namespace {

bool is_permutation(const std::vector<int>& p, int degree) {
  if (static_cast<int>(p.size()) != degree) return false;
  std::vector<char> hit(degree, 0);
  for (int v : p) {
    if (v < 0 || v >= degree || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
  std::vector<int> out(f.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
  return out;
}

}  // namespace

int FiniteGroup::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i) {
    if (names_[i] == name) return i;
  }
  return -1;
}

void FiniteGroup::validate_laws() const {
  const int n = size();
  if (n == 0) throw Error(ErrorKind::GroupLawViolated, "group has no elements");
  if (static_cast<int>(table_.size()) != n) {
    throw Error(ErrorKind::GroupLawViolated, "multiplication table has the wrong shape");
  }
  std::set<std::string> seen(names_.begin(), names_.end());
  if (static_cast<int>(seen.size()) != n) {
    throw Error(ErrorKind::ParseError, "group element names are not distinct");
  }
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorKind::GroupLawViolated, "multiplication table has the wrong shape");
    }
    for (int v : row) {
      if (v < 0 || v >= n) {
        throw Error(ErrorKind::GroupLawViolated, "table entry is not an element");
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    if (table_[0][a] != a || table_[a][0] != a) {
      throw Error(ErrorKind::GroupLawViolated,
                  "element 0 (" + names_[0] + ") is not a two-sided identity");
    }
  }
  for (int a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (int b = 0; b < n; ++b) {
      if (table_[a][b] == 0 && table_[b][a] == 0) has_inverse = true;
    }
    if (!has_inverse) {
      throw Error(ErrorKind::GroupLawViolated, "element " + names_[a] + " has no inverse");
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          throw Error(ErrorKind::GroupLawViolated,
                      "associativity fails at (" + names_[a] + "," + names_[b] + "," +
                          names_[c] + ")");
        }
      }
    }
  }
}

void FiniteGroup::compute_inverses() {
  inverse_.assign(size(), 0);
  for (int a = 0; a < size(); ++a) {
    for (int b = 0; b < size(); ++b) {
      if (table_[a][b] == 0) {
        inverse_[a] = b;
        break;
      }
    }
  }
}

void FiniteGroup::compute_generators() {
  generators_.clear();
  std::vector<int> closure = generated_subgroup({});
  while (static_cast<int>(closure.size()) < size()) {
    int next = -1;
    for (int a = 0; a < size(); ++a) {
      if (!std::binary_search(closure.begin(), closure.end(), a)) {
        next = a;
        break;
      }
    }
    generators_.push_back(next);
    closure = generated_subgroup(generators_);
  }
}

FiniteGroup FiniteGroup::from_table(std::vector<std::string> names,
                                    std::vector<std::vector<int>> table) {
  FiniteGroup g;
  g.names_ = std::move(names);
  g.table_ = std::move(table);

  // Reorder so the identity sits at index 0.
  const int n = g.size();
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b) {
      if (a >= static_cast<int>(g.table_.size()) ||
          b >= static_cast<int>(g.table_[a].size()) || g.table_[a][b] != b) {
        ok = false;
        break;
      }
    }
    if (ok) e = a;
  }
  if (e < 0) throw Error(ErrorKind::GroupLawViolated, "table has no identity element");
  if (e != 0) {
    std::vector<int> perm(n);  // old index -> new index
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::swap(perm[0], perm[e]);
    std::vector<std::string> names2(n);
    std::vector<std::vector<int>> table2(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) names2[perm[a]] = g.names_[a];
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) table2[perm[a]][perm[b]] = perm[g.table_[a][b]];
    }
    g.names_ = std::move(names2);
    g.table_ = std::move(table2);
  }

  g.validate_laws();
  g.compute_inverses();
  g.compute_generators();
  return g;
}

FiniteGroup FiniteGroup::from_permutations(
    const std::vector<std::pair<std::string, std::vector<int>>>& generators, int degree) {
  if (degree <= 0) throw Error(ErrorKind::BadParams, "permutation degree must be positive");
  for (const auto& [gname, perm] : generators) {
    if (!is_permutation(perm, degree)) {
      throw Error(ErrorKind::ParseError,
                  "generator " + gname + " is not a permutation of the stated degree");
    }
  }

  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;

  std::map<std::vector<int>, int> index_of;
  std::vector<std::vector<int>> perms;
  std::vector<std::string> names;
  perms.push_back(id);
  names.push_back("e");
  index_of[id] = 0;

  std::queue<int> work;
  work.push(0);
  while (!work.empty()) {
    const int cur = work.front();
    work.pop();
    for (const auto& [gname, gperm] : generators) {
      const std::vector<int> next = compose(perms[cur], gperm);
      if (index_of.count(next)) continue;
      const int idx = static_cast<int>(perms.size());
      index_of[next] = idx;
      perms.push_back(next);
      names.push_back(cur == 0 ? gname : names[cur] + gname);
      work.push(idx);
    }
  }

  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[a][b] = index_of.at(compose(perms[a], perms[b]));
  }

  FiniteGroup g;
  g.names_ = std::move(names);
  g.table_ = std::move(table);
  g.validate_laws();
  g.compute_inverses();
  g.compute_generators();
  return g;
}

std::vector<int> FiniteGroup::generated_subgroup(std::vector<int> seed) const {
  std::set<int> closure{0};
  for (int a : seed) {
    if (a < 0 || a >= size()) {
      throw Error(ErrorKind::BadParams, "subgroup seed is not an element");
    }
    closure.insert(a);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> snapshot(closure.begin(), closure.end());
    for (int a : snapshot) {
      if (closure.insert(inverse_[a]).second) grew = true;
      for (int b : snapshot) {
        if (closure.insert(table_[a][b]).second) grew = true;
      }
    }
  }
  return {closure.begin(), closure.end()};
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elements) const {
  std::set<int> set(elements.begin(), elements.end());
  if (!set.count(0)) return false;
  for (int a : set) {
    if (a < 0 || a >= size()) return false;
    if (!set.count(inverse_[a])) return false;
    for (int b : set) {
      if (!set.count(table_[a][b])) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> FiniteGroup::left_cosets(const std::vector<int>& subgroup) const {
  if (!is_subgroup(subgroup)) {
    throw Error(ErrorKind::NotASubgroup, "coset base is not a subgroup");
  }
  std::vector<std::vector<int>> cosets;
  std::vector<char> placed(size(), 0);
  for (int g = 0; g < size(); ++g) {
    if (placed[g]) continue;
    std::vector<int> coset;
    for (int h : subgroup) coset.push_back(table_[g][h]);
    std::sort(coset.begin(), coset.end());
    for (int x : coset) placed[x] = 1;
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

}  // namespace dendro
