#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dvisit/tree.hpp"

namespace dvisit {

/// A (possibly truncated) enumeration of the complete visit of `tree` from
/// `root` under `priority`.
struct Visit {
  ColorTree tree;
  PriorityList priority;
  ColorWord root;
  std::vector<ColorWord> order;
  /// The visit reached completeness before the budget ran out.
  bool terminated = false;
};

/// Every c-child (in the tree) of an entry of L is itself in L.
/// Throws EntryNotInTree.
bool is_c_complete(const ColorTree& tree, std::span<const ColorWord> entries, Color c);
bool is_D_complete(const ColorTree& tree, std::span<const ColorWord> entries, const PriorityList& priority);

/// The n-th (0-based) word base*<c> present in the tree, with bases taken
/// from M in lexicographic order. Throws EntryNotInTree.
std::optional<ColorWord> nth_expansion(const ColorTree& tree, std::span<const ColorWord> bases, std::size_t n,
                                       Color c);

/// Declarative visit predicate, decided by searching every admissible split
/// of the list. Intended as a reference on small inputs.
bool check_visit(const ColorTree& tree, std::span<const ColorWord> entries, const PriorityList& priority,
                 const ColorWord& root);

/// Empty means the visit is complete; otherwise the unique next entry.
using Extension = std::optional<ColorWord>;

/// Lazily produces the complete visit one entry at a time.
///
/// The generator keeps a stack of frames, one per nested sub-visit. A frame
/// for priority <d0, ..., d_{h-1}> first runs the inner visit with
/// <d1, ..., d_{h-1}> from the same root; the entries that inner visit
/// produced (a contiguous slice of the output, since sub-visits are emitted
/// contiguously) form the base list M. The frame then walks M in
/// lexicographic order and, for every base with a d0-child, runs a full
/// sub-visit with the rotated priority <d1, ..., d_{h-1}, d0> from that
/// child. A frame finishes when its scan of M is exhausted.
///
/// Each call to next() does finitely many membership probes, so this works
/// on oracle-backed infinite trees as long as callers bound the budget.
class VisitEnumerator {
 public:
  /// Throws RootNotInTree, or ColorOutOfRange if the priority exceeds k.
  VisitEnumerator(ColorTree tree, PriorityList priority, ColorWord root);

  Extension next();

  const std::vector<ColorWord>& order() const noexcept { return order_; }
  bool complete() const noexcept { return started_ && frames_.empty() && exhausted_; }

 private:
  enum class Phase { inner, expand };
  struct Frame {
    PriorityList priority;
    std::size_t start;
    Phase phase = Phase::inner;
    std::vector<std::size_t> bases;  // indices into order_, lex sorted
    std::size_t cursor = 0;
  };

  void open(const PriorityList& priority, ColorWord root);

  ColorTree tree_;
  PriorityList priority_;
  ColorWord root_;
  std::vector<ColorWord> order_;
  std::vector<Frame> frames_;
  bool started_ = false;
  bool exhausted_ = false;
};

/// One step past a given visit. Replays the generator over `entries` and
/// throws InvalidVisit if they diverge.
Extension extend_visit(const ColorTree& tree, std::span<const ColorWord> entries, const PriorityList& priority,
                       const ColorWord& root);

/// Runs the enumerator until completion or `budget` entries.
Visit enumerate_visit(const ColorTree& tree, const PriorityList& priority, const ColorWord& root,
                      std::size_t budget);

/// Indices m such that every later entry is a proper descendant of order[m].
/// The last index is always present.
std::vector<std::size_t> stable_indices(std::span<const ColorWord> order);

/// The root-to-node chain of the deepest horizon-stable entry, root first.
std::vector<ColorWord> branch_approx(std::span<const ColorWord> order);

struct ColorCensus {
  std::vector<std::size_t> counts;

  std::size_t total() const noexcept;
  std::size_t operator[](Color c) const { return counts.at(c); }
  friend bool operator==(const ColorCensus&, const ColorCensus&) = default;
};

/// Counts edges parent -> child whose parent appears earlier in the list,
/// keyed by the child's last letter.
ColorCensus visit_census(std::size_t k, std::span<const ColorWord> order);
/// Counts the letters of consecutive pairs of a chain.
ColorCensus branch_census(std::size_t k, std::span<const ColorWord> chain);

std::string visit_trace_json(const Visit& visit);
std::string visit_to_dot(const Visit& visit);

}  // namespace dvisit
