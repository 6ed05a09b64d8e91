#ifndef DENDRO_GENERATE_HPP
#define DENDRO_GENERATE_HPP

#include <cstdint>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "dendro/dendrite.hpp"

namespace dendro {

struct NamedTree {
  std::string name;
  Dendrite tree;
};

/// Deterministic tree corpus: paths, stars, seeded random trees, and
/// midpoint-sprouting approximants, filtered to at most `max_vertices`.
std::vector<NamedTree> standard_tree_corpus(int max_vertices);

/// One instance document per call, deterministic in (kind, seed).
/// Kinds: star-z2, path-z2, star-rot, random-cocycle, random-boundary,
/// tree-path-N, tree-star-K, tree-random-N, tree-wazewski-D-R.
nlohmann::ordered_json gen_document(const std::string& kind, std::uint64_t seed);

/// Streams of deterministic random instances for the bulk checks; entry i
/// depends only on (seed, i).
std::vector<nlohmann::ordered_json> instance_corpus(int count, std::uint64_t seed);
std::vector<nlohmann::ordered_json> boundary_instance_corpus(int count, std::uint64_t seed);

/// Uniformly seeded automorphism per atom, for conjugation experiments.
std::vector<Automorphism> random_automorphism_family(const Dendrite& tree, int atoms,
                                                     std::mt19937_64& rng);

}  // namespace dendro

#endif
