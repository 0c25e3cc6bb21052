#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dvisit/error.hpp"

namespace dvisit {

using Color = std::uint32_t;

enum class Order { less, equal, greater };

/// A node of a k-ary color tree, identified with its path from the root.
class ColorWord {
 public:
  ColorWord() = default;
  ColorWord(std::initializer_list<Color> letters) : letters_(letters) {}
  explicit ColorWord(std::vector<Color> letters) : letters_(std::move(letters)) {}

  const std::vector<Color>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Color operator[](std::size_t i) const { return letters_[i]; }
  Color back() const { return letters_.back(); }

  ColorWord child(Color c) const;
  ColorWord parent() const;
  ColorWord prefix(std::size_t length) const;

  /// Reflexive prefix relation: `this` is a prefix of `other`.
  bool is_prefix_of(const ColorWord& other) const noexcept;
  bool is_proper_prefix_of(const ColorWord& other) const noexcept {
    return size() < other.size() && is_prefix_of(other);
  }

  std::string str() const;

  friend bool operator==(const ColorWord&, const ColorWord&) = default;
  friend std::strong_ordering operator<=>(const ColorWord& a, const ColorWord& b);

 private:
  std::vector<Color> letters_;
};

std::ostream& operator<<(std::ostream& os, const ColorWord& w);

/// Sequence lexicographic order; a proper prefix precedes its extensions.
Order lex_compare(const ColorWord& a, const ColorWord& b) noexcept;

struct ColorWordHash {
  std::size_t operator()(const ColorWord& w) const noexcept;
};

/// Ordered, duplicate-free list of colors, lowest priority first.
class PriorityList {
 public:
  PriorityList() = default;
  /// Throws DuplicateColor or ColorOutOfRange.
  PriorityList(std::vector<Color> colors, std::size_t k);

  /// <0, 1, ..., k-1>
  static PriorityList identity(std::size_t k);

  const std::vector<Color>& colors() const noexcept { return colors_; }
  std::size_t size() const noexcept { return colors_.size(); }
  bool empty() const noexcept { return colors_.empty(); }
  Color lowest() const { return colors_.front(); }
  bool contains(Color c) const noexcept;

  /// <d1, ..., d_{h-1}>
  PriorityList without_lowest() const;
  /// <d1, ..., d_{h-1}, d0>
  PriorityList rotated() const;

  std::string str() const;

  friend bool operator==(const PriorityList&, const PriorityList&) = default;
  friend auto operator<=>(const PriorityList&, const PriorityList&) = default;

 private:
  struct Unchecked {};
  PriorityList(std::vector<Color> colors, Unchecked) : colors_(std::move(colors)) {}
  std::vector<Color> colors_;
};

/// Prefix-closed set of color words over k colors, either an explicit finite
/// node set or a pure membership predicate (possibly infinite).
class ColorTree {
 public:
  using Membership = std::function<bool(const ColorWord&)>;

  /// Oracle-backed tree. The predicate must be pure, accept the empty word
  /// and be prefix-closed; none of this is checked.
  static ColorTree from_oracle(std::size_t k, Membership membership);

  std::size_t k() const noexcept { return k_; }
  bool contains(const ColorWord& w) const;
  bool is_finite() const noexcept { return nodes_ != nullptr; }

  /// Explicit node set in lexicographic order. Only for finite trees.
  const std::set<ColorWord>& nodes() const;

  /// All words over k colors.
  static ColorTree all_words(std::size_t k);
  /// All words over k colors of length at most depth (finite).
  static ColorTree full(std::size_t k, std::size_t depth);

 private:
  friend ColorTree validate_tree(std::set<ColorWord> nodes, std::size_t k);
  ColorTree() = default;

  std::size_t k_ = 0;
  Membership membership_;
  std::shared_ptr<const std::set<ColorWord>> nodes_;
};

class NotPrefixClosedError : public Error {
 public:
  explicit NotPrefixClosedError(ColorWord witness);
  const ColorWord& witness() const noexcept { return witness_; }

 private:
  ColorWord witness_;
};

/// Builds a finite tree after checking root, prefix closure and color range.
/// Throws MissingRoot, NotPrefixClosedError or ColorOutOfRange.
ColorTree validate_tree(std::set<ColorWord> nodes, std::size_t k);
ColorTree validate_tree(const std::vector<ColorWord>& nodes, std::size_t k);

/// Present children in increasing color order. Throws NodeNotInTree.
std::vector<std::pair<Color, ColorWord>> children(const ColorTree& tree, const ColorWord& node);

/// Membership in the subtree of `tree` above `root` whose letters past root
/// all belong to `priority`. Throws RootNotInTree.
bool in_restricted(const ColorTree& tree, const PriorityList& priority, const ColorWord& root,
                   const ColorWord& node);

/// `{"k": <int>, "nodes": [[...], ...]}`
ColorTree load_tree_json(const std::string& text);
ColorTree load_tree_file(const std::string& path);
std::string tree_to_json(const ColorTree& tree);

/// Parses "1,0,2" (or the empty string) into a word.
ColorWord parse_word(const std::string& text);
/// Parses "0,1" into a color list.
std::vector<Color> parse_color_list(const std::string& text);

}  // namespace dvisit
