#include "dvisit/visit.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_set>
#include <utility>

#include <json.hpp>

namespace dvisit {

namespace {

void require_entries_in_tree(const ColorTree& tree, std::span<const ColorWord> entries) {
  for (const auto& w : entries)
    if (!tree.contains(w)) throw Error(ErrorKind::EntryNotInTree, w.str());
}

bool c_complete_unchecked(const ColorTree& tree, std::span<const ColorWord> entries,
                          const std::unordered_set<ColorWord, ColorWordHash>& members, Color c) {
  for (const auto& w : entries) {
    ColorWord child = w.child(c);
    if (tree.contains(child) && !members.count(child)) return false;
  }
  return true;
}

bool d_complete_unchecked(const ColorTree& tree, std::span<const ColorWord> entries, const PriorityList& priority) {
  if (priority.empty()) return true;
  std::unordered_set<ColorWord, ColorWordHash> members(entries.begin(), entries.end());
  for (Color c : priority.colors())
    if (!c_complete_unchecked(tree, entries, members, c)) return false;
  return true;
}

}  // namespace

bool is_c_complete(const ColorTree& tree, std::span<const ColorWord> entries, Color c) {
  require_entries_in_tree(tree, entries);
  std::unordered_set<ColorWord, ColorWordHash> members(entries.begin(), entries.end());
  return c_complete_unchecked(tree, entries, members, c);
}

bool is_D_complete(const ColorTree& tree, std::span<const ColorWord> entries, const PriorityList& priority) {
  require_entries_in_tree(tree, entries);
  return d_complete_unchecked(tree, entries, priority);
}

std::optional<ColorWord> nth_expansion(const ColorTree& tree, std::span<const ColorWord> bases, std::size_t n,
                                       Color c) {
  require_entries_in_tree(tree, bases);
  std::vector<const ColorWord*> sorted;
  sorted.reserve(bases.size());
  for (const auto& w : bases) sorted.push_back(&w);
  std::sort(sorted.begin(), sorted.end(),
            [](const ColorWord* a, const ColorWord* b) { return lex_compare(*a, *b) == Order::less; });
  for (const ColorWord* base : sorted) {
    ColorWord candidate = base->child(c);
    if (!tree.contains(candidate)) continue;
    if (n == 0) return candidate;
    --n;
  }
  return std::nullopt;
}

// Declarative checker

namespace {

class VisitChecker {
 public:
  VisitChecker(const ColorTree& tree, std::span<const ColorWord> entries) : tree_(tree), entries_(entries) {}

  /// entries_[begin, end) is a visit under `priority` from `root`.
  bool is_visit(std::size_t begin, std::size_t end, const PriorityList& priority, const ColorWord& root) {
    if (begin >= end || entries_[begin] != root) return false;
    auto key = std::make_tuple(begin, end, priority.colors());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = priority.empty() ? end - begin == 1 : split_exists(begin, end, priority, root);
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  // entries = M * L_0 * ... * L_{n-1}
  bool split_exists(std::size_t begin, std::size_t end, const PriorityList& priority, const ColorWord& root) {
    const PriorityList inner = priority.without_lowest();
    for (std::size_t mid = begin + 1; mid <= end; ++mid) {
      if (!is_visit(begin, mid, inner, root)) continue;
      if (mid == end) return true;
      const auto bases = entries_.subspan(begin, mid - begin);
      if (!d_complete_unchecked(tree_, bases, inner)) continue;
      if (segments_from(bases, mid, end, priority)) return true;
    }
    return false;
  }

  // Can entries_[pos, end) be cut into L_j * L_{j+1} * ... for j starting at 0?
  bool segments_from(std::span<const ColorWord> bases, std::size_t first, std::size_t end,
                     const PriorityList& priority) {
    const Color low = priority.lowest();
    const PriorityList rotated = priority.rotated();
    std::map<std::pair<std::size_t, std::size_t>, bool> memo;
    std::function<bool(std::size_t, std::size_t)> from = [&](std::size_t pos, std::size_t j) -> bool {
      if (auto it = memo.find({pos, j}); it != memo.end()) return it->second;
      bool ok = false;
      const auto head = nth_expansion(tree_, bases, j, low);
      if (head && entries_[pos] == *head) {
        for (std::size_t q = pos + 1; q <= end && !ok; ++q) {
          if (!is_visit(pos, q, rotated, *head)) continue;
          if (q == end)
            ok = true;
          else if (d_complete_unchecked(tree_, entries_.subspan(pos, q - pos), rotated))
            ok = from(q, j + 1);
        }
      }
      memo[{pos, j}] = ok;
      return ok;
    };
    return from(first, 0);
  }

  const ColorTree& tree_;
  std::span<const ColorWord> entries_;
  std::map<std::tuple<std::size_t, std::size_t, std::vector<Color>>, bool> memo_;
};

}  // namespace

bool check_visit(const ColorTree& tree, std::span<const ColorWord> entries, const PriorityList& priority,
                 const ColorWord& root) {
  if (entries.empty() || !tree.contains(root)) return false;
  for (const auto& w : entries)
    if (!tree.contains(w)) return false;
  for (Color c : priority.colors())
    if (c >= tree.k()) return false;
  VisitChecker checker(tree, entries);
  return checker.is_visit(0, entries.size(), priority, root);
}

// Generator

VisitEnumerator::VisitEnumerator(ColorTree tree, PriorityList priority, ColorWord root)
    : tree_(std::move(tree)), priority_(std::move(priority)), root_(std::move(root)) {
  if (!tree_.contains(root_)) throw Error(ErrorKind::RootNotInTree, root_.str());
  for (Color c : priority_.colors())
    if (c >= tree_.k())
      throw Error(ErrorKind::ColorOutOfRange,
                  "priority color " + std::to_string(c) + " is not below k=" + std::to_string(tree_.k()));
}

// Pushes the frames of a fresh visit from `root` (one per nonempty tail of
// the priority) and emits the root, which is where every such visit starts.
void VisitEnumerator::open(const PriorityList& priority, ColorWord root) {
  const std::size_t start = order_.size();
  PriorityList p = priority;
  while (!p.empty()) {
    frames_.push_back(Frame{p, start, Phase::inner, {}, 0});
    p = p.without_lowest();
  }
  order_.push_back(std::move(root));
}

Extension VisitEnumerator::next() {
  if (!started_) {
    started_ = true;
    open(priority_, root_);
    return order_.back();
  }
  while (!frames_.empty()) {
    Frame& top = frames_.back();
    if (top.phase == Phase::inner) {
      // The inner visit just finished: its output is the base list.
      top.bases.resize(order_.size() - top.start);
      for (std::size_t i = 0; i < top.bases.size(); ++i) top.bases[i] = top.start + i;
      std::sort(top.bases.begin(), top.bases.end(), [this](std::size_t a, std::size_t b) {
        return lex_compare(order_[a], order_[b]) == Order::less;
      });
      top.phase = Phase::expand;
    }
    const Color low = top.priority.lowest();
    while (top.cursor < top.bases.size()) {
      ColorWord candidate = order_[top.bases[top.cursor++]].child(low);
      if (tree_.contains(candidate)) {
        PriorityList rotated = top.priority.rotated();
        open(rotated, std::move(candidate));  // invalidates `top`
        return order_.back();
      }
    }
    frames_.pop_back();
  }
  exhausted_ = true;
  return std::nullopt;
}

Extension extend_visit(const ColorTree& tree, std::span<const ColorWord> entries, const PriorityList& priority,
                       const ColorWord& root) {
  if (entries.empty()) throw Error(ErrorKind::InvalidVisit, "a visit has at least its root");
  VisitEnumerator gen(tree, priority, root);
  for (const auto& expected : entries) {
    auto produced = gen.next();
    if (!produced || *produced != expected)
      throw Error(ErrorKind::InvalidVisit, "entry " + expected.str() + " does not continue the visit from " +
                                               root.str() + " under " + priority.str());
  }
  return gen.next();
}

Visit enumerate_visit(const ColorTree& tree, const PriorityList& priority, const ColorWord& root,
                      std::size_t budget) {
  if (budget == 0) throw Error(ErrorKind::InvalidInput, "budget must be at least 1");
  VisitEnumerator gen(tree, priority, root);
  Visit visit{tree, priority, root, {}, false};
  while (gen.order().size() < budget) {
    if (!gen.next()) {
      visit.terminated = true;
      break;
    }
  }
  // A run that fills the budget exactly may still be complete.
  if (!visit.terminated && !gen.next()) visit.terminated = true;
  visit.order.assign(gen.order().begin(), gen.order().begin() + static_cast<std::ptrdiff_t>(
                                                                    std::min(budget, gen.order().size())));
  return visit;
}

// Stability

std::vector<std::size_t> stable_indices(std::span<const ColorWord> order) {
  std::vector<std::size_t> out;
  if (order.empty()) return out;
  // Sweep from the end keeping the longest common prefix and the minimum
  // length of all later entries.
  const ColorWord* reference = &order.back();
  std::size_t common = order.back().size();
  std::size_t shortest = order.back().size();
  out.push_back(order.size() - 1);
  for (std::size_t m = order.size() - 1; m-- > 0;) {
    const ColorWord& w = order[m];
    if (w.size() <= common && w.size() < shortest &&
        std::equal(w.letters().begin(), w.letters().end(), reference->letters().begin()))
      out.push_back(m);
    std::size_t i = 0;
    while (i < common && i < w.size() && w[i] == (*reference)[i]) ++i;
    common = i;
    shortest = std::min(shortest, w.size());
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<ColorWord> branch_approx(std::span<const ColorWord> order) {
  std::vector<ColorWord> out;
  if (order.empty()) return out;
  // The stable entries form a chain ending at the last one.
  const ColorWord& deepest = order[stable_indices(order).back()];
  for (std::size_t len = order.front().size(); len <= deepest.size(); ++len) out.push_back(deepest.prefix(len));
  return out;
}

std::size_t ColorCensus::total() const noexcept {
  std::size_t t = 0;
  for (auto n : counts) t += n;
  return t;
}

ColorCensus visit_census(std::size_t k, std::span<const ColorWord> order) {
  ColorCensus census{std::vector<std::size_t>(k, 0)};
  std::unordered_set<ColorWord, ColorWordHash> seen;
  for (const auto& w : order) {
    if (!w.empty() && seen.count(w.parent()) && w.back() < k) ++census.counts[w.back()];
    seen.insert(w);
  }
  return census;
}

ColorCensus branch_census(std::size_t k, std::span<const ColorWord> chain) {
  ColorCensus census{std::vector<std::size_t>(k, 0)};
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const auto& w = chain[i];
    if (w.size() == chain[i - 1].size() + 1 && w.back() < k) ++census.counts[w.back()];
  }
  return census;
}

// Export

std::string visit_trace_json(const Visit& visit) {
  nlohmann::ordered_json j;
  j["k"] = visit.tree.k();
  j["priority"] = visit.priority.colors();
  j["root"] = visit.root.letters();
  auto order = nlohmann::ordered_json::array();
  for (const auto& w : visit.order) order.push_back(w.letters());
  j["order"] = std::move(order);
  j["terminated"] = visit.terminated;
  j["stable"] = stable_indices(visit.order);
  auto branch = nlohmann::ordered_json::array();
  for (const auto& w : branch_approx(visit.order)) branch.push_back(w.letters());
  j["branch"] = std::move(branch);
  return j.dump() + "\n";
}

std::string visit_to_dot(const Visit& visit) {
  std::map<ColorWord, std::size_t> index;
  for (std::size_t i = 0; i < visit.order.size(); ++i) index.emplace(visit.order[i], i);
  const auto stable = stable_indices(visit.order);
  std::vector<bool> is_stable(visit.order.size(), false);
  for (auto m : stable) is_stable[m] = true;
  std::set<ColorWord> on_branch;
  for (const auto& w : branch_approx(visit.order)) on_branch.insert(w);

  std::ostringstream out;
  out << "digraph visit {\n  node [shape=circle, fontsize=10];\n";
  for (std::size_t i = 0; i < visit.order.size(); ++i) {
    const auto& w = visit.order[i];
    out << "  n" << i << " [label=\"" << i << "\\n" << w.str() << "\"";
    if (is_stable[i]) out << ", peripheries=2";
    if (on_branch.count(w)) out << ", color=red, fontcolor=red";
    out << "];\n";
  }
  for (std::size_t i = 0; i < visit.order.size(); ++i) {
    const auto& w = visit.order[i];
    if (w.size() <= visit.root.size()) continue;
    auto parent = index.find(w.parent());
    if (parent == index.end()) continue;
    out << "  n" << parent->second << " -> n" << i << " [label=\"" << w.back() << "\"";
    if (on_branch.count(w) && on_branch.count(parent->first)) out << ", color=red, penwidth=2";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace dvisit
