#include "dendro/dendrite.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>

namespace dendro {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::SingletonTree: return "SingletonTree";
    case ErrorKind::EmptyTree: return "EmptyTree";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::InvalidSubdendrite: return "InvalidSubdendrite";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::MismatchedTree: return "MismatchedTree";
    case ErrorKind::BadDomain: return "BadDomain";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::GroupLawViolated: return "GroupLawViolated";
    case ErrorKind::MeasureInvalid: return "MeasureInvalid";
    case ErrorKind::ActionInvalid: return "ActionInvalid";
    case ErrorKind::CocycleIdentityViolated: return "CocycleIdentityViolated";
    case ErrorKind::IncompleteTable: return "IncompleteTable";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::NotDisjoint: return "NotDisjoint";
    case ErrorKind::AmbiguousRetraction: return "AmbiguousRetraction";
    case ErrorKind::NotEquivariantInput: return "NotEquivariantInput";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NonConstantLevel: return "NonConstantLevel";
    case ErrorKind::MixedCenterKind: return "MixedCenterKind";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::OracleDisagreement: return "OracleDisagreement";
  }
  return "UnknownError";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::BadParams:
    case ErrorKind::BadDomain:
    case ErrorKind::BadExponent:
    case ErrorKind::UnknownVertex:
      return 2;
    case ErrorKind::OracleDisagreement:
      return 3;
    default:
      return 1;
  }
}

const char* point_class_name(PointClass cls) {
  switch (cls) {
    case PointClass::End: return "End";
    case PointClass::Regular: return "Regular";
    case PointClass::Branch: return "Branch";
  }
  return "?";
}

// ---------------------------------------------------------------------
// Dendrite

Dendrite Dendrite::validate(std::vector<std::string> vertices,
                            std::vector<std::pair<std::string, std::string>> edges) {
  if (vertices.empty()) {
    throw Error(ErrorKind::EmptyTree, "a dendrite has at least one point");
  }
  Dendrite tree;
  tree.ids_ = std::move(vertices);
  // Indices ascend with identifiers, so index order and identifier order
  // agree everywhere downstream (tie-breaks, canonical listings).
  std::sort(tree.ids_.begin(), tree.ids_.end());
  for (int i = 0; i < tree.size(); ++i) {
    if (!tree.index_.emplace(tree.ids_[i], i).second) {
      throw Error(ErrorKind::DuplicateVertex, tree.ids_[i]);
    }
  }
  tree.adj_.resize(tree.size());

  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    int u = tree.vertex(a);
    int v = tree.vertex(b);
    if (u == v) {
      throw Error(ErrorKind::CycleDetected, "self-loop at " + a);
    }
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::CycleDetected, "repeated edge {" + a + "," + b + "}");
    }
    tree.adj_[u].push_back(v);
    tree.adj_[v].push_back(u);
  }

  if (static_cast<int>(seen.size()) != tree.size() - 1) {
    // |E| > |V|-1 on a simple graph forces a cycle once connectivity holds;
    // check connectivity first so the report names the right invariant.
    if (static_cast<int>(seen.size()) < tree.size() - 1) {
      throw Error(ErrorKind::DisconnectedGraph, "too few edges for a tree");
    }
  }

  // BFS connectivity + first-move table in one pass per root.
  std::vector<int> reach;
  std::vector<char> visited(tree.size(), 0);
  reach.push_back(0);
  visited[0] = 1;
  for (size_t head = 0; head < reach.size(); ++head) {
    for (int nb : tree.adj_[reach[head]]) {
      if (!visited[nb]) {
        visited[nb] = 1;
        reach.push_back(nb);
      }
    }
  }
  if (static_cast<int>(reach.size()) != tree.size()) {
    throw Error(ErrorKind::DisconnectedGraph, "graph has more than one component");
  }
  if (static_cast<int>(seen.size()) != tree.size() - 1) {
    throw Error(ErrorKind::CycleDetected, "edge count exceeds |V|-1");
  }

  for (auto& nbs : tree.adj_) {
    std::sort(nbs.begin(), nbs.end(),
              [&](int a, int b) { return tree.ids_[a] < tree.ids_[b]; });
  }
  for (const auto& [u, v] : seen) {
    auto e = std::minmax(u, v, [&](int a, int b) { return tree.ids_[a] < tree.ids_[b]; });
    tree.edges_.emplace_back(e.first, e.second);
  }
  std::sort(tree.edges_.begin(), tree.edges_.end(),
            [&](const auto& a, const auto& b) {
              return std::pair(tree.ids_[a.first], tree.ids_[a.second]) <
                     std::pair(tree.ids_[b.first], tree.ids_[b.second]);
            });

  // First move from every root, filled along the BFS tree.
  tree.step_.assign(tree.size(), std::vector<int>(tree.size(), -1));
  for (int root = 0; root < tree.size(); ++root) {
    auto& row = tree.step_[root];
    std::deque<int> queue{root};
    std::vector<char> done(tree.size(), 0);
    done[root] = 1;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      for (int nb : tree.adj_[cur]) {
        if (done[nb]) continue;
        done[nb] = 1;
        row[nb] = (cur == root) ? nb : row[cur];
        queue.push_back(nb);
      }
    }
  }
  return tree;
}

int Dendrite::vertex(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorKind::UnknownVertex, id);
  }
  return it->second;
}

std::optional<int> Dendrite::find_vertex(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Dendrite::adjacent(int u, int v) const {
  const auto& nbs = adj_[u];
  return std::find(nbs.begin(), nbs.end(), v) != nbs.end();
}

int Dendrite::step_towards(int from, int to) const {
  if (from == to) {
    throw Error(ErrorKind::BadParams, "step_towards requires distinct vertices");
  }
  return step_[from][to];
}

std::vector<int> Dendrite::branch_points() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v) {
    if (degree(v) >= 3) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------
// Subdendrite

Subdendrite Subdendrite::of(const Dendrite& tree, std::vector<int> vertices) {
  if (vertices.empty()) {
    throw Error(ErrorKind::EmptySet, "subdendrite must be nonempty");
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  for (int v : vertices) {
    if (v < 0 || v >= tree.size()) {
      throw Error(ErrorKind::InvalidSubdendrite, "vertex index out of range");
    }
  }
  // Connectivity of the induced subgraph.
  std::set<int> pending(vertices.begin(), vertices.end());
  std::deque<int> queue{vertices.front()};
  pending.erase(vertices.front());
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int nb : tree.neighbors(cur)) {
      auto it = pending.find(nb);
      if (it != pending.end()) {
        pending.erase(it);
        queue.push_back(nb);
      }
    }
  }
  if (!pending.empty()) {
    throw Error(ErrorKind::InvalidSubdendrite,
                "induced subgraph is not connected (vertex " +
                    tree.id(*pending.begin()) + " separated)");
  }
  Subdendrite sub;
  sub.verts_ = std::move(vertices);
  return sub;
}

bool Subdendrite::contains(int v) const {
  return std::binary_search(verts_.begin(), verts_.end(), v);
}

// ---------------------------------------------------------------------
// Automorphism

Automorphism Automorphism::compose(const Automorphism& other) const {
  Automorphism out;
  out.map.resize(map.size());
  for (size_t i = 0; i < map.size(); ++i) {
    out.map[i] = map[other.map[i]];
  }
  return out;
}

Automorphism Automorphism::inverse() const {
  Automorphism out;
  out.map.resize(map.size());
  for (size_t i = 0; i < map.size(); ++i) {
    out.map[map[i]] = static_cast<int>(i);
  }
  return out;
}

bool Automorphism::is_identity() const {
  for (size_t i = 0; i < map.size(); ++i) {
    if (map[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Automorphism identity_automorphism(const Dendrite& tree) {
  Automorphism g;
  g.map.resize(tree.size());
  std::iota(g.map.begin(), g.map.end(), 0);
  return g;
}

bool is_automorphism(const Dendrite& tree, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != tree.size()) return false;
  std::vector<char> hit(tree.size(), 0);
  for (int img : perm) {
    if (img < 0 || img >= tree.size() || hit[img]) return false;
    hit[img] = 1;
  }
  for (const auto& [u, v] : tree.edges()) {
    if (!tree.adjacent(perm[u], perm[v])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------
// Arcs, hulls, medians

std::vector<int> arc(const Dendrite& tree, int x, int y) {
  if (x < 0 || x >= tree.size() || y < 0 || y >= tree.size()) {
    throw Error(ErrorKind::UnknownVertex, "arc endpoint out of range");
  }
  std::vector<int> path{x};
  int cur = x;
  while (cur != y) {
    cur = tree.step_towards(cur, y);
    path.push_back(cur);
  }
  return path;
}

Subdendrite dendro_hull(const Dendrite& tree, const std::vector<int>& points) {
  if (points.empty()) {
    throw Error(ErrorKind::EmptySet, "hull of the empty set");
  }
  for (int v : points) {
    if (v < 0 || v >= tree.size()) {
      throw Error(ErrorKind::UnknownVertex, "hull point out of range");
    }
  }
  // Peel leaves not in the set; what survives is the smallest connected
  // superset.
  std::vector<char> keep(tree.size(), 1), marked(tree.size(), 0);
  std::vector<int> deg(tree.size());
  for (int v = 0; v < tree.size(); ++v) deg[v] = tree.degree(v);
  for (int v : points) marked[v] = 1;

  std::deque<int> queue;
  for (int v = 0; v < tree.size(); ++v) {
    if (deg[v] <= 1 && !marked[v]) queue.push_back(v);
  }
  while (!queue.empty()) {
    int leaf = queue.front();
    queue.pop_front();
    keep[leaf] = 0;
    for (int nb : tree.neighbors(leaf)) {
      if (!keep[nb]) continue;
      if (--deg[nb] <= 1 && !marked[nb]) queue.push_back(nb);
    }
  }
  std::vector<int> verts;
  for (int v = 0; v < tree.size(); ++v) {
    if (keep[v]) verts.push_back(v);
  }
  return Subdendrite::of(tree, std::move(verts));
}

Classification classify(const Dendrite& tree, int x) {
  if (tree.size() < 2) {
    throw Error(ErrorKind::SingletonTree, "point classes need >= 2 vertices");
  }
  if (x < 0 || x >= tree.size()) {
    throw Error(ErrorKind::UnknownVertex, "classify vertex out of range");
  }
  Classification c;
  c.order = tree.degree(x);
  c.cls = c.order == 1 ? PointClass::End
                       : (c.order == 2 ? PointClass::Regular : PointClass::Branch);
  return c;
}

int retraction(const Dendrite& tree, const Subdendrite& m, int x) {
  for (int v : m.vertices()) {
    if (v < 0 || v >= tree.size()) {
      throw Error(ErrorKind::InvalidSubdendrite, "subdendrite does not fit the tree");
    }
  }
  if (x < 0 || x >= tree.size()) {
    throw Error(ErrorKind::UnknownVertex, "retraction point out of range");
  }
  if (m.contains(x)) return x;
  // Walk towards any anchor; the first vertex of m hit is the gate of x's
  // component of X minus m, hence lies on every arc from x into m.
  int cur = x;
  int anchor = m.vertices().front();
  while (!m.contains(cur)) {
    cur = tree.step_towards(cur, anchor);
  }
  return cur;
}

namespace {

std::vector<int> bfs_distances(const Dendrite& tree, int source) {
  std::vector<int> dist(tree.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int nb : tree.neighbors(cur)) {
      if (dist[nb] < 0) {
        dist[nb] = dist[cur] + 1;
        queue.push_back(nb);
      }
    }
  }
  return dist;
}

}  // namespace

int median(const Dendrite& tree, int p, int q, int r) {
  if (p < 0 || p >= tree.size() || q < 0 || q >= tree.size() || r < 0 || r >= tree.size()) {
    throw Error(ErrorKind::UnknownVertex, "median argument out of range");
  }
  // 1-median of three points on a tree; the distance-sum minimizer is the
  // unique vertex on all three pairwise arcs.
  auto dp = bfs_distances(tree, p);
  auto dq = bfs_distances(tree, q);
  auto dr = bfs_distances(tree, r);
  int best = 0;
  long long best_sum = -1;
  int best_count = 0;
  for (int v = 0; v < tree.size(); ++v) {
    long long sum = static_cast<long long>(dp[v]) + dq[v] + dr[v];
    if (best_sum < 0 || sum < best_sum) {
      best_sum = sum;
      best = v;
      best_count = 1;
    } else if (sum == best_sum) {
      ++best_count;
    }
  }
  if (best_count != 1) {
    throw std::logic_error("tree median is not unique");
  }
  return best;
}

// ---------------------------------------------------------------------
// Jordan center

namespace {

CenterResult peel_to_center(const Dendrite& tree, const std::vector<int>& verts) {
  std::vector<int> alive = verts;
  std::vector<char> in(tree.size(), 0);
  std::vector<int> deg(tree.size(), 0);
  for (int v : alive) in[v] = 1;
  for (int v : alive) {
    for (int nb : tree.neighbors(v)) {
      if (in[nb]) ++deg[v];
    }
  }
  while (alive.size() > 2) {
    std::vector<int> leaves;
    for (int v : alive) {
      if (deg[v] <= 1) leaves.push_back(v);
    }
    for (int leaf : leaves) {
      in[leaf] = 0;
      for (int nb : tree.neighbors(leaf)) {
        if (in[nb]) --deg[nb];
      }
    }
    std::vector<int> next;
    for (int v : alive) {
      if (in[v]) next.push_back(v);
    }
    alive = std::move(next);
  }
  CenterResult res;
  if (alive.size() == 1) {
    res.is_edge = false;
    res.v1 = alive[0];
  } else {
    res.is_edge = true;
    int a = alive[0], b = alive[1];
    if (tree.id(b) < tree.id(a)) std::swap(a, b);
    res.v1 = a;
    res.v2 = b;
  }
  return res;
}

}  // namespace

CenterResult jordan_center(const Dendrite& tree) {
  std::vector<int> all(tree.size());
  std::iota(all.begin(), all.end(), 0);
  return peel_to_center(tree, all);
}

CenterResult jordan_center(const Dendrite& tree, const Subdendrite& sub) {
  return peel_to_center(tree, sub.vertices());
}

// ---------------------------------------------------------------------
// suppress_regular

SuppressResult suppress_regular(const Dendrite& tree) {
  if (tree.size() < 2) {
    throw Error(ErrorKind::SingletonTree, "nothing to smooth in a singleton");
  }
  std::vector<int> kept;
  for (int v = 0; v < tree.size(); ++v) {
    if (tree.degree(v) != 2) kept.push_back(v);
  }
  std::vector<std::string> ids;
  ids.reserve(kept.size());
  for (int v : kept) ids.push_back(tree.id(v));

  // Walk each chain of regular vertices between kept endpoints.
  std::set<std::pair<std::string, std::string>> edge_set;
  std::vector<char> is_kept(tree.size(), 0);
  for (int v : kept) is_kept[v] = 1;
  for (int v : kept) {
    for (int nb : tree.neighbors(v)) {
      int prev = v, cur = nb;
      while (!is_kept[cur]) {
        for (int next : tree.neighbors(cur)) {
          if (next != prev) {
            prev = cur;
            cur = next;
            break;
          }
        }
      }
      auto e = std::minmax(tree.id(v), tree.id(cur));
      edge_set.insert(e);
    }
  }
  SuppressResult out{
      Dendrite::validate(ids, {edge_set.begin(), edge_set.end()}), {}};
  for (int v : kept) out.vertex_map.emplace(tree.id(v), tree.id(v));
  return out;
}

// ---------------------------------------------------------------------
// automorphisms

namespace {

void extend_automorphism(const Dendrite& tree, std::vector<int>& image,
                         std::vector<char>& used, int v,
                         std::vector<Automorphism>& out) {
  if (v == tree.size()) {
    out.push_back(Automorphism{image});
    return;
  }
  for (int target = 0; target < tree.size(); ++target) {
    if (used[target] || tree.degree(target) != tree.degree(v)) continue;
    bool ok = true;
    for (int nb : tree.neighbors(v)) {
      if (nb < v && !tree.adjacent(image[nb], target)) {
        ok = false;
        break;
      }
    }
    // Non-neighbors already placed must stay non-adjacent; degrees make
    // the edge count match, so preserved adjacency is enough.
    if (!ok) continue;
    image[v] = target;
    used[target] = 1;
    extend_automorphism(tree, image, used, v + 1, out);
    used[target] = 0;
    image[v] = -1;
  }
}

}  // namespace

std::vector<Automorphism> automorphisms(const Dendrite& tree, int max_vertices) {
  if (tree.size() > max_vertices) {
    throw Error(ErrorKind::TooLarge,
                "automorphism enumeration capped at " + std::to_string(max_vertices) +
                    " vertices");
  }
  std::vector<Automorphism> out;
  std::vector<int> image(tree.size(), -1);
  std::vector<char> used(tree.size(), 0);
  extend_automorphism(tree, image, used, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------
// generators

namespace {

std::string letter_name(int i) {
  std::string name;
  int n = i;
  do {
    name.insert(name.begin(), static_cast<char>('a' + n % 26));
    n = n / 26 - 1;
  } while (n >= 0);
  return name;
}

}  // namespace

Dendrite make_path(int n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "path needs >= 1 vertex");
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < n; ++i) ids.push_back(letter_name(i));
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(ids[i], ids[i + 1]);
  return Dendrite::validate(ids, edges);
}

Dendrite make_star(int leaves) {
  if (leaves < 1) throw Error(ErrorKind::BadParams, "star needs >= 1 leaf");
  std::vector<std::string> ids{"c"};
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i <= leaves; ++i) {
    ids.push_back("l" + std::to_string(i));
    edges.emplace_back("c", ids.back());
  }
  return Dendrite::validate(ids, edges);
}

Dendrite make_random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::BadParams, "random tree needs >= 1 vertex");
  std::mt19937_64 rng(seed);
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i <= n; ++i) ids.push_back("v" + std::to_string(i));
  for (int i = 1; i < n; ++i) {
    // modulo draw keeps the stream portable across standard libraries
    int parent = static_cast<int>(rng() % static_cast<std::uint64_t>(i));
    edges.emplace_back(ids[parent], ids[i]);
  }
  return Dendrite::validate(ids, edges);
}

Dendrite make_wazewski_approx(int degree, int depth) {
  if (degree < 3 || depth < 0) {
    throw Error(ErrorKind::BadParams, "need degree >= 3 and depth >= 0");
  }
  std::vector<std::string> ids{"v1", "v2"};
  std::set<std::pair<std::string, std::string>> edges{{"v1", "v2"}};
  std::map<std::string, int> child_count;
  for (int round = 0; round < depth; ++round) {
    std::vector<std::pair<std::string, std::string>> snapshot(edges.begin(), edges.end());
    for (const auto& [u, w] : snapshot) {
      std::string mid = u + "." + std::to_string(++child_count[u]);
      ids.push_back(mid);
      edges.erase({u, w});
      edges.insert({std::min(u, mid), std::max(u, mid)});
      edges.insert({std::min(mid, w), std::max(mid, w)});
      for (int k = 0; k < degree - 2; ++k) {
        std::string child = mid + "." + std::to_string(++child_count[mid]);
        ids.push_back(child);
        edges.insert({std::min(mid, child), std::max(mid, child)});
      }
    }
  }
  return Dendrite::validate(ids, {edges.begin(), edges.end()});
}

}  // namespace dendro
