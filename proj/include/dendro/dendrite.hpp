#ifndef DENDRO_DENDRITE_HPP
#define DENDRO_DENDRITE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dendro/error.hpp"

namespace dendro {

enum class PointClass { End, Regular, Branch };

const char* point_class_name(PointClass cls);

struct Classification {
  int order = 0;  // Menger-Urysohn order = vertex degree
  PointClass cls = PointClass::End;
};

/// Finite tree model of a dendrite. Immutable after construction; vertex
/// identifiers from the input are kept verbatim and all public operations
/// work on dense vertex indices in input order.
class Dendrite {
public:
  /// Checks the tree invariants (unique identifiers, connected, acyclic)
  /// and builds the lookup tables. Throws DuplicateVertex, UnknownVertex,
  /// CycleDetected, DisconnectedGraph or EmptyTree.
  static Dendrite validate(std::vector<std::string> vertices,
                           std::vector<std::pair<std::string, std::string>> edges);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::string& id(int v) const { return ids_[v]; }
  const std::vector<std::string>& ids() const { return ids_; }
  int vertex(const std::string& id) const;  // throws UnknownVertex
  std::optional<int> find_vertex(const std::string& id) const;

  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  /// Edges as index pairs (u, v) with id(u) < id(v) lexicographically,
  /// sorted by that key. Matches the canonical file format ordering.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool adjacent(int u, int v) const;

  /// Neighbor of `from` on the arc towards `to`. Requires from != to.
  int step_towards(int from, int to) const;

  std::vector<int> branch_points() const;  // degree >= 3, ascending index

private:
  Dendrite() = default;

  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> step_;  // step_[a][b], -1 when a == b
};

/// Connected nonempty vertex subset of a parent tree.
class Subdendrite {
public:
  /// Validates connectivity; throws EmptySet or InvalidSubdendrite.
  static Subdendrite of(const Dendrite& tree, std::vector<int> vertices);

  const std::vector<int>& vertices() const { return verts_; }  // ascending
  int size() const { return static_cast<int>(verts_.size()); }
  bool contains(int v) const;

private:
  Subdendrite() = default;
  std::vector<int> verts_;
};

/// Edge-preserving vertex bijection.
struct Automorphism {
  std::vector<int> map;  // vertex index -> vertex index

  int operator()(int v) const { return map[v]; }
  int size() const { return static_cast<int>(map.size()); }

  /// (a.compose(b))(x) = a(b(x))
  Automorphism compose(const Automorphism& other) const;
  Automorphism inverse() const;
  bool is_identity() const;

  bool operator==(const Automorphism& other) const { return map == other.map; }
  bool operator<(const Automorphism& other) const { return map < other.map; }
};

Automorphism identity_automorphism(const Dendrite& tree);
bool is_automorphism(const Dendrite& tree, const std::vector<int>& perm);

/// Either a single vertex or a single edge; edge endpoints are ordered so
/// that id(v1) < id(v2).
struct CenterResult {
  bool is_edge = false;
  int v1 = -1;
  int v2 = -1;
};

// -- operations --------------------------------------------------------

/// Unique simple path from x to y, both endpoints included; arc(x, x) = [x].
std::vector<int> arc(const Dendrite& tree, int x, int y);

/// Smallest subdendrite containing all of `points` (throws EmptySet).
Subdendrite dendro_hull(const Dendrite& tree, const std::vector<int>& points);

/// Menger-Urysohn order and point class. Requires at least two vertices.
Classification classify(const Dendrite& tree, int x);

/// First-point retraction onto m: identity on m, otherwise the unique
/// vertex of m lying on every arc from x into m.
int retraction(const Dendrite& tree, const Subdendrite& m, int x);

/// The unique vertex on all three pairwise arcs.
int median(const Dendrite& tree, int p, int q, int r);

CenterResult jordan_center(const Dendrite& tree);
CenterResult jordan_center(const Dendrite& tree, const Subdendrite& sub);

struct SuppressResult {
  Dendrite core;
  /// old id -> new id for the vertices that survive smoothing (branch
  /// points and ends); smoothed regular vertices are absent.
  std::map<std::string, std::string> vertex_map;
};

/// Smooths every degree-2 vertex, merging its two edges. Requires >= 2
/// vertices.
SuppressResult suppress_regular(const Dendrite& tree);

inline constexpr int kAutomorphismSizeBound = 10;

/// Complete automorphism list, sorted lexicographically by vertex map
/// (identity first). Throws TooLarge above `max_vertices`.
std::vector<Automorphism> automorphisms(const Dendrite& tree,
                                        int max_vertices = kAutomorphismSizeBound);

// -- generators ---------------------------------------------------------

Dendrite make_path(int n);               // vertices a, b, c, ...
Dendrite make_star(int leaves);          // center "c", leaves "l1".."lk"
Dendrite make_random_tree(int n, std::uint64_t seed);  // vertices v1..vn
/// Midpoint-sprouting approximant: after `depth` rounds every internal
/// vertex has degree `degree`. New vertices are named "<parent>.k".
Dendrite make_wazewski_approx(int degree, int depth);

}  // namespace dendro

#endif
