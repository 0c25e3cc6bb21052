#include "dvisit/erdos.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace dvisit {

ErdosTree::ErdosTree(std::size_t k) : k_(k), parent_{none}, edge_color_{0}, children_(k, none) {
  if (k == 0) throw Error(ErrorKind::InvalidInput, "an Erdos tree needs at least one color");
}

std::optional<Node> ErdosTree::parent(Node n) const {
  const Node p = parent_.at(n);
  if (p == none) return std::nullopt;
  return p;
}

std::optional<Color> ErdosTree::edge_color(Node n) const {
  if (parent_.at(n) == none) return std::nullopt;
  return edge_color_[n];
}

std::optional<Node> ErdosTree::child(Node n, Color c) const {
  if (n >= size() || c >= k_) return std::nullopt;
  const Node ch = children_[n * k_ + c];
  if (ch == none) return std::nullopt;
  return ch;
}

std::size_t ErdosTree::depth(Node n) const {
  std::size_t d = 0;
  for (Node p = parent_.at(n); p != none; p = parent_[p]) ++d;
  return d;
}

bool ErdosTree::is_ancestor(Node x, Node y) const {
  if (y >= size()) return false;
  for (Node p = parent_[y]; p != none; p = parent_[p])
    if (p == x) return true;
  return false;
}

void ErdosTree::insert(Node n, const Coloring& coloring) {
  if (n != size())
    throw Error(ErrorKind::NonContiguousInsert,
                "next node must be " + std::to_string(size()) + ", got " + std::to_string(n));
  if (coloring.k() != k_)
    throw Error(ErrorKind::InvalidInput, "coloring has " + std::to_string(coloring.k()) + " colors, tree has " +
                                             std::to_string(k_));
  Node x = 0;
  Color c = coloring(x, n);
  while (children_[x * k_ + c] != none) {
    x = children_[x * k_ + c];
    c = coloring(x, n);
  }
  children_[x * k_ + c] = n;
  parent_.push_back(x);
  edge_color_.push_back(c);
  children_.resize(children_.size() + k_, none);
}

ErdosTree insert(ErdosTree tree, Node n, const Coloring& coloring) {
  tree.insert(n, coloring);
  return tree;
}

ErdosTree build_erdos(const Coloring& coloring, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "horizon must be at least 1");
  ErdosTree tree(coloring.k());
  for (Node m = 1; m < n; ++m) tree.insert(m, coloring);
  return tree;
}

WordIndex::WordIndex(std::vector<ColorWord> words) : words_(std::move(words)) {
  for (Node n = 0; n < words_.size(); ++n) nodes_.emplace(words_[n], n);
}

Node WordIndex::node(const ColorWord& w) const {
  auto it = nodes_.find(w);
  if (it == nodes_.end()) throw Error(ErrorKind::WordNotInIndex, w.str());
  return it->second;
}

std::pair<ColorTree, WordIndex> to_word_tree(const ErdosTree& tree) {
  std::vector<ColorWord> words(tree.size());
  // parents precede children numerically
  for (Node n = 1; n < tree.size(); ++n) words[n] = words[*tree.parent(n)].child(*tree.edge_color(n));
  ColorTree word_tree = validate_tree(words, tree.k());
  return {std::move(word_tree), WordIndex(std::move(words))};
}

bool check_erdos_property(const ErdosTree& tree, const Coloring& coloring) {
  for (Node y = 1; y < tree.size(); ++y) {
    // Walk up from y; `via` is the child of `x` on the path to y.
    Node via = y;
    for (auto x = tree.parent(y); x; via = *x, x = tree.parent(*x)) {
      if (*x >= via) return false;
      const Color i = *tree.edge_color(via);
      if (tree.child(*x, i) != via) return false;
      if (coloring(*x, y) != i) return false;
    }
  }
  return true;
}

std::vector<std::size_t> HomogeneousReport::sizes() const {
  std::vector<std::size_t> out;
  for (const auto& set : h) out.push_back(set.size());
  return out;
}

std::size_t HomogeneousReport::largest() const {
  std::size_t best = 0;
  for (const auto& set : h) best = std::max(best, set.size());
  return best;
}

HomogeneousReport extract_homogeneous(const ErdosTree& tree, std::span<const ColorWord> branch_words,
                                      const WordIndex& index, const Coloring& coloring) {
  HomogeneousReport report;
  report.k = tree.k();
  report.n = tree.size();
  report.h.assign(tree.k(), {});
  for (std::size_t i = 0; i < branch_words.size(); ++i) {
    if (i > 0 && !(branch_words[i - 1].is_prefix_of(branch_words[i]) &&
                   branch_words[i].size() == branch_words[i - 1].size() + 1))
      throw Error(ErrorKind::InvalidInput, "branch words must form a chain of consecutive prefixes");
    report.branch.push_back(index.node(branch_words[i]));
  }
  for (std::size_t i = 0; i + 1 < report.branch.size(); ++i) {
    const Color c = *tree.edge_color(report.branch[i + 1]);
    report.h[c].push_back(report.branch[i]);
  }
  report.verified = true;
  for (Color c = 0; c < report.h.size() && report.verified; ++c) {
    const auto& set = report.h[c];
    for (std::size_t a = 0; a < set.size() && report.verified; ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b)
        if (coloring(set[a], set[b]) != c) {
          report.verified = false;
          break;
        }
  }
  return report;
}

PipelineResult homog_pipeline(const Coloring& coloring, std::size_t n, std::size_t budget,
                              const PriorityList& priority) {
  if (priority.size() != coloring.k())
    throw Error(ErrorKind::InvalidInput, "priority " + priority.str() + " must list all " +
                                             std::to_string(coloring.k()) + " colors");
  ErdosTree tree = build_erdos(coloring, n);
  auto [word_tree, index] = to_word_tree(tree);
  Visit visit = enumerate_visit(word_tree, priority, ColorWord{}, budget);
  const auto branch = branch_approx(visit.order);
  HomogeneousReport report = extract_homogeneous(tree, branch, index, coloring);
  return PipelineResult{std::move(tree), std::move(report), std::move(visit)};
}

HorizonComparison compare_horizons(const HomogeneousReport& smaller, const HomogeneousReport& larger) {
  HorizonComparison out;
  out.branch_is_prefix = smaller.branch.size() <= larger.branch.size() &&
                         std::equal(smaller.branch.begin(), smaller.branch.end(), larger.branch.begin());
  out.monotone = larger.largest() >= smaller.largest();
  return out;
}

std::string report_to_json(const HomogeneousReport& report) {
  nlohmann::ordered_json j;
  j["k"] = report.k;
  j["N"] = report.n;
  j["branch"] = report.branch;
  j["H"] = report.h;
  j["verified"] = report.verified;
  nlohmann::ordered_json census = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < report.h.size(); ++c) census[std::to_string(c)] = report.h[c].size();
  j["census"] = std::move(census);
  return j.dump() + "\n";
}

std::string erdos_to_dot(const ErdosTree& tree, const HomogeneousReport& report) {
  static constexpr const char* palette[] = {"lightblue", "salmon", "palegreen", "khaki", "plum", "lightgray"};
  std::vector<std::optional<Color>> member(tree.size());
  for (Color c = 0; c < report.h.size(); ++c)
    for (Node x : report.h[c])
      if (x < tree.size()) member[x] = c;
  std::vector<bool> on_branch(tree.size(), false);
  for (Node x : report.branch)
    if (x < tree.size()) on_branch[x] = true;

  std::ostringstream out;
  out << "digraph erdos {\n  node [shape=circle, fontsize=10];\n";
  for (Node n = 0; n < tree.size(); ++n) {
    out << "  n" << n << " [label=\"" << n << "\"";
    if (member[n]) out << ", style=filled, fillcolor=" << palette[*member[n] % std::size(palette)];
    if (on_branch[n]) out << ", penwidth=2, color=red";
    out << "];\n";
  }
  for (Node n = 1; n < tree.size(); ++n) {
    const Node p = *tree.parent(n);
    out << "  n" << p << " -> n" << n << " [label=\"" << *tree.edge_color(n) << "\"";
    if (on_branch[p] && on_branch[n]) out << ", color=red, penwidth=2";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace dvisit
