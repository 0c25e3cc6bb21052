#include "dvisit/tree.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace dvisit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingRoot: return "MissingRoot";
    case ErrorKind::NotPrefixClosed: return "NotPrefixClosed";
    case ErrorKind::ColorOutOfRange: return "ColorOutOfRange";
    case ErrorKind::DuplicateColor: return "DuplicateColor";
    case ErrorKind::NodeNotInTree: return "NodeNotInTree";
    case ErrorKind::EntryNotInTree: return "EntryNotInTree";
    case ErrorKind::RootNotInTree: return "RootNotInTree";
    case ErrorKind::InvalidVisit: return "InvalidVisit";
    case ErrorKind::TreeTooLarge: return "TreeTooLarge";
    case ErrorKind::NonContiguousInsert: return "NonContiguousInsert";
    case ErrorKind::WordNotInIndex: return "WordNotInIndex";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorKind::TableIncomplete: return "TableIncomplete";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Error";
}

// ColorWord

ColorWord ColorWord::child(Color c) const {
  std::vector<Color> next(letters_);
  next.push_back(c);
  return ColorWord(std::move(next));
}

ColorWord ColorWord::parent() const {
  if (letters_.empty()) throw Error(ErrorKind::InvalidInput, "the root has no parent");
  return prefix(letters_.size() - 1);
}

ColorWord ColorWord::prefix(std::size_t length) const {
  length = std::min(length, letters_.size());
  return ColorWord(std::vector<Color>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(length)));
}

bool ColorWord::is_prefix_of(const ColorWord& other) const noexcept {
  return size() <= other.size() && std::equal(letters_.begin(), letters_.end(), other.letters_.begin());
}

std::string ColorWord::str() const {
  std::string out = "<";
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(letters_[i]);
  }
  out += '>';
  return out;
}

std::strong_ordering operator<=>(const ColorWord& a, const ColorWord& b) {
  switch (lex_compare(a, b)) {
    case Order::less: return std::strong_ordering::less;
    case Order::equal: return std::strong_ordering::equal;
    case Order::greater: return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const ColorWord& w) { return os << w.str(); }

Order lex_compare(const ColorWord& a, const ColorWord& b) noexcept {
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (a[i] < b[i]) return Order::less;
    if (a[i] > b[i]) return Order::greater;
  }
  if (a.size() < b.size()) return Order::less;
  if (a.size() > b.size()) return Order::greater;
  return Order::equal;
}

std::size_t ColorWordHash::operator()(const ColorWord& w) const noexcept {
  // FNV-1a over the letters
  std::uint64_t h = 1469598103934665603ull;
  for (Color c : w.letters()) {
    h ^= c + 1;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// PriorityList

PriorityList::PriorityList(std::vector<Color> colors, std::size_t k) : colors_(std::move(colors)) {
  std::vector<bool> seen(k, false);
  for (Color c : colors_) {
    if (c >= k)
      throw Error(ErrorKind::ColorOutOfRange,
                  "priority color " + std::to_string(c) + " is not below k=" + std::to_string(k));
    if (seen[c]) throw Error(ErrorKind::DuplicateColor, "priority lists color " + std::to_string(c) + " twice");
    seen[c] = true;
  }
}

PriorityList PriorityList::identity(std::size_t k) {
  std::vector<Color> colors(k);
  for (std::size_t i = 0; i < k; ++i) colors[i] = static_cast<Color>(i);
  return PriorityList(std::move(colors), Unchecked{});
}

bool PriorityList::contains(Color c) const noexcept {
  return std::find(colors_.begin(), colors_.end(), c) != colors_.end();
}

PriorityList PriorityList::without_lowest() const {
  if (colors_.empty()) return *this;
  return PriorityList(std::vector<Color>(colors_.begin() + 1, colors_.end()), Unchecked{});
}

PriorityList PriorityList::rotated() const {
  if (colors_.empty()) return *this;
  std::vector<Color> next(colors_.begin() + 1, colors_.end());
  next.push_back(colors_.front());
  return PriorityList(std::move(next), Unchecked{});
}

std::string PriorityList::str() const { return ColorWord(colors_).str(); }

// ColorTree

ColorTree ColorTree::from_oracle(std::size_t k, Membership membership) {
  ColorTree tree;
  tree.k_ = k;
  tree.membership_ = std::move(membership);
  return tree;
}

bool ColorTree::contains(const ColorWord& w) const {
  if (nodes_) return nodes_->count(w) != 0;
  for (Color c : w.letters())
    if (c >= k_) return false;
  return membership_(w);
}

const std::set<ColorWord>& ColorTree::nodes() const {
  if (!nodes_) throw Error(ErrorKind::InvalidInput, "oracle-backed tree has no explicit node set");
  return *nodes_;
}

ColorTree ColorTree::all_words(std::size_t k) {
  return from_oracle(k, [](const ColorWord&) { return true; });
}

ColorTree ColorTree::full(std::size_t k, std::size_t depth) {
  std::set<ColorWord> nodes{ColorWord{}};
  std::vector<ColorWord> layer{ColorWord{}};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<ColorWord> next;
    for (const auto& w : layer)
      for (std::size_t c = 0; c < k; ++c) next.push_back(w.child(static_cast<Color>(c)));
    nodes.insert(next.begin(), next.end());
    layer = std::move(next);
  }
  return validate_tree(std::move(nodes), k);
}

NotPrefixClosedError::NotPrefixClosedError(ColorWord witness)
    : Error(ErrorKind::NotPrefixClosed, "prefix " + witness.str() + " is missing"), witness_(std::move(witness)) {}

ColorTree validate_tree(std::set<ColorWord> nodes, std::size_t k) {
  if (!nodes.count(ColorWord{})) throw Error(ErrorKind::MissingRoot, "the empty word is not a node");
  for (const auto& w : nodes) {
    for (Color c : w.letters())
      if (c >= k)
        throw Error(ErrorKind::ColorOutOfRange,
                    "letter " + std::to_string(c) + " in " + w.str() + " is not below k=" + std::to_string(k));
    // The parent check suffices: by induction every prefix is then present.
    if (!w.empty() && !nodes.count(w.parent())) {
      // report the shortest absent prefix
      for (std::size_t len = 1; len < w.size(); ++len) {
        ColorWord p = w.prefix(len);
        if (!nodes.count(p)) throw NotPrefixClosedError(std::move(p));
      }
    }
  }
  ColorTree tree;
  tree.k_ = k;
  tree.nodes_ = std::make_shared<const std::set<ColorWord>>(std::move(nodes));
  auto shared = tree.nodes_;
  tree.membership_ = [shared](const ColorWord& w) { return shared->count(w) != 0; };
  return tree;
}

ColorTree validate_tree(const std::vector<ColorWord>& nodes, std::size_t k) {
  return validate_tree(std::set<ColorWord>(nodes.begin(), nodes.end()), k);
}

std::vector<std::pair<Color, ColorWord>> children(const ColorTree& tree, const ColorWord& node) {
  if (!tree.contains(node)) throw Error(ErrorKind::NodeNotInTree, node.str());
  std::vector<std::pair<Color, ColorWord>> out;
  for (std::size_t c = 0; c < tree.k(); ++c) {
    ColorWord child = node.child(static_cast<Color>(c));
    if (tree.contains(child)) out.emplace_back(static_cast<Color>(c), std::move(child));
  }
  return out;
}

bool in_restricted(const ColorTree& tree, const PriorityList& priority, const ColorWord& root,
                   const ColorWord& node) {
  if (!tree.contains(root)) throw Error(ErrorKind::RootNotInTree, root.str());
  if (!root.is_prefix_of(node)) return false;
  for (std::size_t i = root.size(); i < node.size(); ++i)
    if (!priority.contains(node[i])) return false;
  return tree.contains(node);
}

// JSON

ColorTree load_tree_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("tree JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("k") || !j.contains("nodes") || !j["k"].is_number_unsigned() ||
      !j["nodes"].is_array())
    throw Error(ErrorKind::InvalidInput, R"(tree JSON must look like {"k": <int>, "nodes": [[...], ...]})");
  const auto k = j["k"].get<std::size_t>();
  std::set<ColorWord> nodes;
  for (const auto& node : j["nodes"]) {
    if (!node.is_array()) throw Error(ErrorKind::InvalidInput, "each node must be an array of color indices");
    std::vector<Color> letters;
    for (const auto& c : node) {
      if (!c.is_number_unsigned()) throw Error(ErrorKind::InvalidInput, "color indices must be naturals");
      letters.push_back(c.get<Color>());
    }
    nodes.insert(ColorWord(std::move(letters)));
  }
  return validate_tree(std::move(nodes), k);
}

ColorTree load_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open tree file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_tree_json(buf.str());
}

std::string tree_to_json(const ColorTree& tree) {
  nlohmann::json j;
  j["k"] = tree.k();
  j["nodes"] = nlohmann::json::array();
  for (const auto& w : tree.nodes()) j["nodes"].push_back(w.letters());
  return j.dump();
}

ColorWord parse_word(const std::string& text) { return ColorWord(parse_color_list(text)); }

std::vector<Color> parse_color_list(const std::string& text) {
  std::vector<Color> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::InvalidInput, "expected comma-separated naturals, got '" + text + "'");
    out.push_back(static_cast<Color>(std::stoul(item)));
  }
  return out;
}

}  // namespace dvisit
