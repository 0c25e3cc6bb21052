#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dvisit/coloring.hpp"
#include "dvisit/tree.hpp"
#include "dvisit/visit.hpp"

namespace dvisit {

/// Tree on {0, ..., size-1} in which every node has at most one child per
/// color and every descendant y of the i-child of x satisfies c({x,y}) = i.
class ErdosTree {
 public:
  /// The singleton tree {0}.
  explicit ErdosTree(std::size_t k);

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return parent_.size(); }

  std::optional<Node> parent(Node n) const;
  /// Color of the edge from n to its parent; empty for the root.
  std::optional<Color> edge_color(Node n) const;
  std::optional<Node> child(Node n, Color c) const;
  std::size_t depth(Node n) const;
  /// Proper ancestor relation.
  bool is_ancestor(Node x, Node y) const;

  /// Descends from the root following c({x, n}) and hangs n off the first
  /// node lacking a child of that color. Throws NonContiguousInsert unless
  /// n == size().
  void insert(Node n, const Coloring& coloring);

 private:
  static constexpr Node none = std::numeric_limits<Node>::max();

  std::size_t k_;
  std::vector<Node> parent_;
  std::vector<Color> edge_color_;
  std::vector<Node> children_;  // size() * k, `none` when absent
};

ErdosTree insert(ErdosTree tree, Node n, const Coloring& coloring);
ErdosTree build_erdos(const Coloring& coloring, std::size_t n);

/// Node <-> color-word bijection; the word of a node is the sequence of edge
/// colors on its root path.
class WordIndex {
 public:
  WordIndex() = default;
  explicit WordIndex(std::vector<ColorWord> words);

  const ColorWord& word(Node n) const { return words_.at(n); }
  /// Throws WordNotInIndex.
  Node node(const ColorWord& w) const;
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::vector<ColorWord> words_;
  std::map<ColorWord, Node> nodes_;
};

std::pair<ColorTree, WordIndex> to_word_tree(const ErdosTree& tree);

bool check_erdos_property(const ErdosTree& tree, const Coloring& coloring);

struct HomogeneousReport {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<Node> branch;
  /// h[i] collects the branch nodes whose next branch edge has color i.
  std::vector<std::vector<Node>> h;
  bool verified = false;

  std::vector<std::size_t> sizes() const;
  std::size_t largest() const;
};

/// Throws WordNotInIndex, or InvalidInput if the words are not a chain.
HomogeneousReport extract_homogeneous(const ErdosTree& tree, std::span<const ColorWord> branch_words,
                                      const WordIndex& index, const Coloring& coloring);

struct PipelineResult {
  ErdosTree tree;
  HomogeneousReport report;
  Visit visit;
};

/// build_erdos -> to_word_tree -> enumerate_visit from the root ->
/// branch_approx -> extract_homogeneous. `priority` must list all k colors.
PipelineResult homog_pipeline(const Coloring& coloring, std::size_t n, std::size_t budget,
                              const PriorityList& priority);

struct HorizonComparison {
  /// The smaller run's branch is a prefix of the larger run's branch.
  bool branch_is_prefix = false;
  /// max |H_i| did not shrink. Only meaningful when branch_is_prefix.
  bool monotone = false;
};

HorizonComparison compare_horizons(const HomogeneousReport& smaller, const HomogeneousReport& larger);

std::string report_to_json(const HomogeneousReport& report);
std::string erdos_to_dot(const ErdosTree& tree, const HomogeneousReport& report);

}  // namespace dvisit
