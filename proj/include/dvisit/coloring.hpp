#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "dvisit/tree.hpp"

namespace dvisit {

using Node = std::uint64_t;

/// Total k-coloring of unordered pairs of distinct naturals.
class Coloring {
 public:
  /// `fn` is called with (min, max) only.
  using Fn = std::function<Color(Node lo, Node hi)>;

  Coloring(std::size_t k, Fn fn, std::string name = {});

  std::size_t k() const noexcept { return k_; }
  const std::string& name() const noexcept { return name_; }

  /// Color of {x, y}. Throws InvalidInput when x == y and ColorOutOfRange
  /// if the underlying function leaves [0, k).
  Color operator()(Node x, Node y) const;

 private:
  std::size_t k_;
  Fn fn_;
  std::string name_;
};

/// Explicit pair -> color table; pairs are stored as (min, max).
struct ColoringTable {
  std::size_t k = 0;
  std::map<std::pair<Node, Node>, Color> pairs;
};

class TableIncompleteError : public Error {
 public:
  TableIncompleteError(Node x, Node y);
  std::pair<Node, Node> pair() const noexcept { return pair_; }

 private:
  std::pair<Node, Node> pair_;
};

/// Queries outside the table throw TableIncompleteError.
Coloring table_coloring(ColoringTable table, std::string name = "table");

/// `{"k": ..., "pairs": [[x, y, color], ...]}`
ColoringTable load_table_json(const std::string& text);
ColoringTable load_table_file(const std::string& path);
std::string table_to_json(const ColoringTable& table);

}  // namespace dvisit
