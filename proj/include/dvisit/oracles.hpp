#pragma once

// Brute-force reference implementations and seeded generators. Nothing here
// calls into the visit generator; the only engine entry point used is the
// declarative check_visit predicate.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "dvisit/coloring.hpp"
#include "dvisit/tree.hpp"

namespace dvisit::oracle {

constexpr std::size_t max_all_visits_nodes = 25;
constexpr std::size_t max_exhaustive_nodes = 7;

/// Every list accepted by check_visit, ordered by length. Grows accepted
/// lists one node at a time, which relies on accepted lists being closed
/// under nonempty prefixes; all_visits_exhaustive checks that assumption on
/// tiny trees. Throws TreeTooLarge above 25 nodes.
std::vector<std::vector<ColorWord>> all_visits(const ColorTree& tree, const PriorityList& priority,
                                               const ColorWord& root);

/// Tries every repetition-free list of tree nodes. Throws TreeTooLarge above
/// 7 nodes.
std::vector<std::vector<ColorWord>> all_visits_exhaustive(const ColorTree& tree, const PriorityList& priority,
                                                          const ColorWord& root);

/// Nodes mu with check_visit(entries * <mu>) true.
std::vector<ColorWord> valid_extensions(const ColorTree& tree, std::span<const ColorWord> entries,
                                        const PriorityList& priority, const ColorWord& root);

/// Sort the bases, keep those whose c-child exists, index.
std::optional<ColorWord> naive_nth_expansion(const ColorTree& tree, std::span<const ColorWord> bases,
                                             std::size_t n, Color c);

/// The restricted subtree above `root`, by breadth-first search.
std::set<ColorWord> restricted_subtree(const ColorTree& tree, const PriorityList& priority, const ColorWord& root);

struct TreeGenParams {
  std::size_t k = 2;
  std::size_t max_depth = 4;
  std::size_t max_nodes = 16;
  /// Probability that a node gets a child of color c; one entry per color,
  /// or a single entry applied to all colors.
  std::vector<double> branching = {0.5};
  std::uint64_t seed = 0;
};

/// Finite tree grown breadth-first in lexicographic order; deterministic in
/// the seed. Always passes validate_tree.
ColorTree random_tree(const TreeGenParams& params);

/// Random parameters spanning chains, stars, complete and sparse trees.
TreeGenParams random_tree_params(std::mt19937_64& rng, std::size_t max_k, std::size_t max_nodes);

/// Random duplicate-free ordering of a random subset of {0, ..., k-1}.
PriorityList random_priority(std::mt19937_64& rng, std::size_t k, bool allow_partial = true);

/// Independent uniform color for every pair below n.
ColoringTable random_coloring_table(std::uint64_t seed, std::size_t k, std::size_t n);
Coloring random_coloring(std::uint64_t seed, std::size_t k, std::size_t n);

/// rel[x][y] for x < y < n, computed straight from the recursive definition
/// x < y and for all z < x: rel[z][x] implies c{z,x} = c{z,y}.
std::vector<std::vector<bool>> erdos_relation_by_formula(const Coloring& coloring, std::size_t n);

/// Uniform double in [0, 1) from the top 53 bits, stable across platforms.
double unit(std::mt19937_64& rng);
/// Uniform integer in [0, bound).
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace dvisit::oracle
