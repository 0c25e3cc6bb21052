#include "dvisit/oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "dvisit/visit.hpp"

namespace dvisit::oracle {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  // rejection sampling keeps this exact and library independent
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do r = rng();
  while (r >= limit);
  return r % bound;
}

namespace {

const std::set<ColorWord>& finite_nodes(const ColorTree& tree, std::size_t cap) {
  if (!tree.is_finite()) throw Error(ErrorKind::InvalidInput, "exhaustive oracles need an explicit finite tree");
  if (tree.nodes().size() > cap)
    throw Error(ErrorKind::TreeTooLarge,
                std::to_string(tree.nodes().size()) + " nodes, limit is " + std::to_string(cap));
  return tree.nodes();
}

bool by_length_then_entries(const std::vector<ColorWord>& a, const std::vector<ColorWord>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<ColorWord> valid_extensions(const ColorTree& tree, std::span<const ColorWord> entries,
                                        const PriorityList& priority, const ColorWord& root) {
  std::vector<ColorWord> out;
  std::vector<ColorWord> candidate(entries.begin(), entries.end());
  candidate.emplace_back();
  for (const auto& mu : tree.nodes()) {
    candidate.back() = mu;
    if (check_visit(tree, candidate, priority, root)) out.push_back(mu);
  }
  return out;
}

std::vector<std::vector<ColorWord>> all_visits(const ColorTree& tree, const PriorityList& priority,
                                               const ColorWord& root) {
  const auto& nodes = finite_nodes(tree, max_all_visits_nodes);
  constexpr std::size_t max_results = 100000;
  std::vector<std::vector<ColorWord>> found;
  std::vector<std::vector<ColorWord>> pending;
  for (const auto& w : nodes) {
    std::vector<ColorWord> single{w};
    if (check_visit(tree, single, priority, root)) pending.push_back(std::move(single));
  }
  while (!pending.empty()) {
    auto list = std::move(pending.back());
    pending.pop_back();
    for (const auto& mu : valid_extensions(tree, list, priority, root)) {
      if (std::find(list.begin(), list.end(), mu) != list.end()) continue;
      auto longer = list;
      longer.push_back(mu);
      pending.push_back(std::move(longer));
    }
    found.push_back(std::move(list));
    if (found.size() > max_results) throw Error(ErrorKind::TreeTooLarge, "too many visits to enumerate");
  }
  std::sort(found.begin(), found.end(), by_length_then_entries);
  return found;
}

std::vector<std::vector<ColorWord>> all_visits_exhaustive(const ColorTree& tree, const PriorityList& priority,
                                                          const ColorWord& root) {
  const auto& node_set = finite_nodes(tree, max_exhaustive_nodes);
  const std::vector<ColorWord> nodes(node_set.begin(), node_set.end());
  std::vector<std::vector<ColorWord>> found;
  std::vector<ColorWord> current;
  std::vector<bool> used(nodes.size(), false);
  std::function<void()> extend = [&] {
    if (!current.empty() && check_visit(tree, current, priority, root)) found.push_back(current);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      current.push_back(nodes[i]);
      extend();
      current.pop_back();
      used[i] = false;
    }
  };
  extend();
  std::sort(found.begin(), found.end(), by_length_then_entries);
  return found;
}

std::optional<ColorWord> naive_nth_expansion(const ColorTree& tree, std::span<const ColorWord> bases,
                                             std::size_t n, Color c) {
  std::vector<std::vector<Color>> sorted;
  for (const auto& w : bases) {
    if (!tree.contains(w)) throw Error(ErrorKind::EntryNotInTree, w.str());
    sorted.push_back(w.letters());
  }
  std::sort(sorted.begin(), sorted.end());
  std::vector<ColorWord> expansions;
  for (auto letters : sorted) {
    letters.push_back(c);
    ColorWord candidate(std::move(letters));
    if (tree.contains(candidate)) expansions.push_back(std::move(candidate));
  }
  if (n < expansions.size()) return expansions[n];
  return std::nullopt;
}

std::set<ColorWord> restricted_subtree(const ColorTree& tree, const PriorityList& priority, const ColorWord& root) {
  std::set<ColorWord> out;
  if (!tree.contains(root)) return out;
  std::deque<ColorWord> queue{root};
  while (!queue.empty()) {
    ColorWord w = std::move(queue.front());
    queue.pop_front();
    for (Color c : priority.colors()) {
      ColorWord child = w.child(c);
      if (tree.contains(child)) queue.push_back(std::move(child));
    }
    out.insert(std::move(w));
  }
  return out;
}

ColorTree random_tree(const TreeGenParams& params) {
  std::mt19937_64 rng(params.seed);
  std::set<ColorWord> nodes{ColorWord{}};
  std::deque<ColorWord> queue{ColorWord{}};
  auto probability = [&](std::size_t c) {
    if (params.branching.empty()) return 0.0;
    return params.branching.size() == 1 ? params.branching[0] : params.branching.at(c);
  };
  while (!queue.empty()) {
    ColorWord w = std::move(queue.front());
    queue.pop_front();
    if (w.size() >= params.max_depth) continue;
    for (std::size_t c = 0; c < params.k; ++c) {
      if (nodes.size() >= params.max_nodes) break;
      if (unit(rng) < probability(c)) {
        ColorWord child = w.child(static_cast<Color>(c));
        nodes.insert(child);
        queue.push_back(std::move(child));
      }
    }
  }
  return validate_tree(std::move(nodes), params.k);
}

TreeGenParams random_tree_params(std::mt19937_64& rng, std::size_t max_k, std::size_t max_nodes) {
  TreeGenParams p;
  p.k = 1 + below(rng, max_k);
  p.max_nodes = 1 + below(rng, max_nodes);
  p.seed = rng();
  switch (below(rng, 5)) {
    case 0:  // chain in one color
      p.max_depth = below(rng, max_nodes + 1);
      p.branching.assign(p.k, 0.0);
      p.branching[below(rng, p.k)] = 1.0;
      break;
    case 1:  // star
      p.max_depth = 1;
      p.branching = {1.0};
      break;
    case 2:  // complete
      p.max_depth = below(rng, 5);
      p.branching = {1.0};
      break;
    case 3:  // per-color skew
      p.max_depth = 1 + below(rng, 10);
      p.branching.clear();
      for (std::size_t c = 0; c < p.k; ++c) p.branching.push_back(unit(rng));
      break;
    default:
      p.max_depth = 1 + below(rng, 8);
      p.branching = {0.2 + 0.7 * unit(rng)};
      break;
  }
  return p;
}

PriorityList random_priority(std::mt19937_64& rng, std::size_t k, bool allow_partial) {
  std::vector<Color> colors(k);
  std::iota(colors.begin(), colors.end(), Color{0});
  for (std::size_t i = k; i > 1; --i) std::swap(colors[i - 1], colors[below(rng, i)]);
  const std::size_t keep = allow_partial ? below(rng, k + 1) : k;
  colors.resize(keep);
  return PriorityList(std::move(colors), k);
}

ColoringTable random_coloring_table(std::uint64_t seed, std::size_t k, std::size_t n) {
  std::mt19937_64 rng(seed);
  ColoringTable table;
  table.k = k;
  for (Node x = 0; x < n; ++x)
    for (Node y = x + 1; y < n; ++y) table.pairs.emplace(std::make_pair(x, y), static_cast<Color>(below(rng, k)));
  return table;
}

Coloring random_coloring(std::uint64_t seed, std::size_t k, std::size_t n) {
  return table_coloring(random_coloring_table(seed, k, n), "random:" + std::to_string(seed));
}

std::vector<std::vector<bool>> erdos_relation_by_formula(const Coloring& coloring, std::size_t n) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (Node x = 0; x < n; ++x)
    for (Node y = x + 1; y < n; ++y) {
      bool holds = true;
      for (Node z = 0; z < x && holds; ++z)
        if (rel[z][x] && coloring(z, x) != coloring(z, y)) holds = false;
      rel[x][y] = holds;
    }
  return rel;
}

}  // namespace dvisit::oracle
