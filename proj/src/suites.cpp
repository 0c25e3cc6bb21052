#include "dvisit/suites.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <unordered_set>

#include "dvisit/dsl.hpp"
#include "dvisit/erdos.hpp"
#include "dvisit/oracles.hpp"
#include "dvisit/visit.hpp"

namespace dvisit {

namespace {

using Failure = std::optional<std::string>;

std::string words(std::span<const ColorWord> list) {
  std::string out = "[";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ' ';
    out += list[i].str();
  }
  return out + "]";
}

Failure visit_properties(const ColorTree& tree, const PriorityList& priority, const ColorWord& root) {
  const Visit v = enumerate_visit(tree, priority, root, tree.nodes().size());
  std::unordered_set<ColorWord, ColorWordHash> seen;
  for (const auto& w : v.order)
    if (!seen.insert(w).second) return "repeated entry " + w.str();
  for (std::size_t i = 0; i < v.order.size(); ++i) {
    const auto& w = v.order[i];
    if (!in_restricted(tree, priority, root, w)) return "entry outside the restricted subtree " + w.str();
    for (std::size_t len = root.size(); len < w.size(); ++len)
      if (!seen.count(w.prefix(len))) return "not prefix-closed above the root at " + w.str();
    if (i > 0) {
      const auto parent = std::find(v.order.begin(), v.order.begin() + static_cast<std::ptrdiff_t>(i), w.parent());
      if (parent == v.order.begin() + static_cast<std::ptrdiff_t>(i)) return "parent of " + w.str() + " comes later";
    }
  }
  if (!v.terminated) return std::string("finite visit did not terminate");
  if (!is_D_complete(tree, v.order, priority)) return std::string("terminated visit is not complete");
  const auto expected = oracle::restricted_subtree(tree, priority, root);
  if (std::set<ColorWord>(v.order.begin(), v.order.end()) != expected)
    return "entry set differs from the restricted subtree";

  if (tree.nodes().size() > oracle::max_all_visits_nodes) return std::nullopt;
  for (std::size_t len = 1; len <= v.order.size(); ++len)
    if (!check_visit(tree, std::span(v.order).first(len), priority, root))
      return "checker rejects generator prefix of length " + std::to_string(len);
  const auto all = oracle::all_visits(tree, priority, root);
  if (all.empty() || all.back() != v.order) return "largest accepted list differs from the generator run";
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i + 1 < all.size() && !std::equal(all[i].begin(), all[i].end(), all[i + 1].begin()))
      return "accepted lists not totally ordered by prefix: " + words(all[i]) + " vs " + words(all[i + 1]);
    const auto ext = oracle::valid_extensions(tree, all[i], priority, root);
    const std::size_t want = i + 1 < all.size() ? 1 : 0;
    if (ext.size() != want)
      return std::to_string(ext.size()) + " one-node extensions of " + words(all[i]) + ", expected " +
             std::to_string(want);
  }
  return std::nullopt;
}

// Drops leaves while the failure persists.
ColorTree shrink_tree(ColorTree tree, const ColorWord& keep,
                      const std::function<Failure(const ColorTree&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    const auto& nodes = tree.nodes();
    for (const auto& w : nodes) {
      if (w.empty() || w == keep || w.is_prefix_of(keep)) continue;
      bool leaf = true;
      for (std::size_t c = 0; c < tree.k() && leaf; ++c)
        if (nodes.count(w.child(static_cast<Color>(c)))) leaf = false;
      if (!leaf) continue;
      std::set<ColorWord> smaller = nodes;
      smaller.erase(w);
      ColorTree candidate = validate_tree(std::move(smaller), tree.k());
      bool still_fails = false;
      try {
        still_fails = fails(candidate).has_value();
      } catch (const std::exception&) {
        still_fails = true;
      }
      if (still_fails) {
        tree = std::move(candidate);
        progress = true;
        break;
      }
    }
  }
  return tree;
}

SuiteResult visits_suite(std::uint64_t seed, std::size_t cases) {
  SuiteResult result{"visits", true, 0, {}};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const ColorTree tree = oracle::random_tree(oracle::random_tree_params(rng, 3, oracle::max_all_visits_nodes));
    const PriorityList priority = oracle::random_priority(rng, tree.k());
    const std::vector<ColorWord> nodes(tree.nodes().begin(), tree.nodes().end());
    const ColorWord root = nodes[oracle::below(rng, nodes.size())];
    ++result.cases;
    auto check = [&](const ColorTree& t) -> Failure {
      try {
        return visit_properties(t, priority, root);
      } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
      }
    };
    if (auto failure = check(tree)) {
      const ColorTree small = shrink_tree(tree, root, check);
      result.passed = false;
      result.counterexample = *check(small) + "\n  tree: " + tree_to_json(small) + "\n  priority: " +
                              priority.str() + "\n  root: " + root.str();
      return result;
    }
  }
  return result;
}

SuiteResult expansion_suite(std::uint64_t seed, std::size_t cases) {
  SuiteResult result{"expansion", true, 0, {}};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const ColorTree tree = oracle::random_tree(oracle::random_tree_params(rng, 4, 40));
    std::vector<ColorWord> nodes(tree.nodes().begin(), tree.nodes().end());
    for (std::size_t j = nodes.size(); j > 1; --j) std::swap(nodes[j - 1], nodes[oracle::below(rng, j)]);
    nodes.resize(oracle::below(rng, nodes.size() + 1));
    for (int q = 0; q < 20; ++q) {
      const std::size_t n = oracle::below(rng, nodes.size() + 2);
      const auto c = static_cast<Color>(oracle::below(rng, tree.k()));
      ++result.cases;
      const auto fast = nth_expansion(tree, nodes, n, c);
      const auto slow = oracle::naive_nth_expansion(tree, nodes, n, c);
      if (fast != slow) {
        result.passed = false;
        result.counterexample = "nth_expansion disagrees with the naive oracle\n  tree: " + tree_to_json(tree) +
                                "\n  bases: " + words(nodes) + "\n  n=" + std::to_string(n) +
                                " c=" + std::to_string(c);
        return result;
      }
    }
  }
  return result;
}

Failure erdos_properties(const Coloring& coloring, std::size_t n) {
  const ErdosTree tree = build_erdos(coloring, n);
  if (!check_erdos_property(tree, coloring)) return std::string("Erdos property fails");
  for (Node m = 1; m < n; ++m)
    if (!tree.parent(m) || *tree.parent(m) >= m) return "parent of " + std::to_string(m) + " does not precede it";
  auto [words, index] = to_word_tree(tree);
  for (Node m = 0; m < n; ++m)
    if (index.node(index.word(m)) != m) return "word index is not a bijection at " + std::to_string(m);
  if (n <= 20) {
    const auto rel = oracle::erdos_relation_by_formula(coloring, n);
    for (Node x = 0; x < n; ++x)
      for (Node y = x + 1; y < n; ++y)
        if (rel[x][y] != tree.is_ancestor(x, y))
          return "formula and descent disagree on (" + std::to_string(x) + "," + std::to_string(y) + ")";
  }
  return std::nullopt;
}

SuiteResult erdos_suite(std::uint64_t seed, std::size_t cases) {
  SuiteResult result{"erdos", true, 0, {}};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const std::size_t k = 2 + oracle::below(rng, 3);
    const std::size_t n = 1 + oracle::below(rng, 64);
    const std::uint64_t table_seed = rng();
    const Coloring coloring = oracle::random_coloring(table_seed, k, n);
    ++result.cases;
    if (auto failure = erdos_properties(coloring, n)) {
      std::size_t smallest = n;
      for (std::size_t m = 1; m < n; ++m)
        if (erdos_properties(coloring, m)) {
          smallest = m;
          break;
        }
      result.passed = false;
      result.counterexample = *erdos_properties(coloring, smallest) + "\n  coloring: random table seed " +
                              std::to_string(table_seed) + " k=" + std::to_string(k) +
                              "\n  horizon: " + std::to_string(smallest);
      return result;
    }
  }
  return result;
}

SuiteResult homog_suite(std::uint64_t seed, std::size_t cases) {
  SuiteResult result{"homog", true, 0, {}};
  std::mt19937_64 rng(seed);
  const char* builtins[] = {"sum-mod", "diff-mod", "block:3", "constant:0"};
  const char* exprs[] = {"(x + y) % 2", "x * y % 3", "if y - x < 3 then 0 else 1", "min(x, y) % 4", "max(x,y)/5"};
  for (std::size_t i = 0; i < cases; ++i) {
    const std::size_t k = 2 + oracle::below(rng, 3);
    const std::size_t n = 1 + oracle::below(rng, 200);
    const std::size_t budget = 1 + oracle::below(rng, 4000);
    std::optional<Coloring> coloring;
    switch (i % 3) {
      case 0: coloring = oracle::random_coloring(rng(), k, n); break;
      case 1: coloring = builtin(builtins[oracle::below(rng, std::size(builtins))], k); break;
      default: coloring = DslColoring(parse(exprs[oracle::below(rng, std::size(exprs))]), k).to_coloring(); break;
    }
    ++result.cases;
    const auto run = homog_pipeline(*coloring, n, budget, PriorityList::identity(k));
    if (!run.report.verified) {
      result.passed = false;
      result.counterexample = "extracted set is not monochromatic\n  coloring: " + coloring->name() +
                              " k=" + std::to_string(k) + " N=" + std::to_string(n) +
                              " budget=" + std::to_string(budget);
      return result;
    }
  }
  return result;
}

std::string random_expression(std::mt19937_64& rng, int depth) {
  const auto pick = oracle::below(rng, depth <= 0 ? 3 : 9);
  auto sub = [&] { return random_expression(rng, depth - 1); };
  switch (pick) {
    case 0: return std::to_string(oracle::below(rng, 20));
    case 1: return "x";
    case 2: return "y";
    case 3: {
      static const char* ops[] = {"+", "-", "*", "/", "%"};
      return "(" + sub() + " " + ops[oracle::below(rng, 5)] + " " + sub() + ")";
    }
    case 4: return "min(" + sub() + ", " + sub() + ")";
    case 5: return "max(" + sub() + ", " + sub() + ")";
    case 6: return "-" + sub();
    case 7: {
      static const char* cmps[] = {"<", "<=", "==", "!="};
      return "(" + sub() + " " + cmps[oracle::below(rng, 4)] + " " + sub() + ")";
    }
    default: return "(if " + sub() + " < " + sub() + " then " + sub() + " else " + sub() + ")";
  }
}

std::string random_tokens(std::mt19937_64& rng) {
  static const char* tokens[] = {"x", "y", "1", "0", "42", "+", "-", "*", "/", "%", "(", ")", ",", "<", "<=",
                                 "==", "!=", "if", "then", "else", "min", "max", "z", "=", "!", "#"};
  std::string out;
  const auto len = oracle::below(rng, 16);
  for (std::uint64_t i = 0; i < len; ++i) {
    out += tokens[oracle::below(rng, std::size(tokens))];
    out += ' ';
  }
  return out;
}

SuiteResult dsl_suite(std::uint64_t seed, std::size_t cases) {
  SuiteResult result{"dsl", true, 0, {}};
  std::mt19937_64 rng(seed);
  auto fail = [&](std::string what) {
    result.passed = false;
    result.counterexample = std::move(what);
    return result;
  };
  for (std::size_t i = 0; i < cases; ++i) {
    ++result.cases;
    const std::string source = random_expression(rng, 4);
    std::optional<Expr> expr;
    try {
      expr = parse(source);
    } catch (const DslError& e) {
      // generated text can divide by a constant zero, which is rejected on load
      if (e.kind() == ErrorKind::DivisionByZero) continue;
      return fail("generated expression failed to parse: " + source + "\n  " + e.what());
    }
    const std::string once = expr->pretty();
    if (parse(once).pretty() != once) return fail("pretty-printing is not a fixpoint for " + source);
    const std::size_t k = 1 + oracle::below(rng, 5);
    const DslColoring coloring(*expr, k);
    for (int q = 0; q < 10; ++q) {
      const Node x = oracle::below(rng, 1000), y = oracle::below(rng, 1000);
      if (x == y) continue;
      const Color a = coloring(x, y);
      if (a >= k) return fail("color out of range for " + source);
      if (a != coloring(y, x)) return fail("asymmetric coloring " + source);
      if (a != coloring(x, y)) return fail("nondeterministic coloring " + source);
    }
    const std::string noise = random_tokens(rng);
    try {
      (void)parse(noise);
    } catch (const DslError&) {
    } catch (const std::exception& e) {
      return fail("parser threw a non-syntax error on '" + noise + "': " + e.what());
    }
  }
  return result;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"visits", "expansion", "erdos", "homog", "dsl"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t cases) {
  if (name == "visits") return visits_suite(seed, cases);
  if (name == "expansion") return expansion_suite(seed, cases);
  if (name == "erdos") return erdos_suite(seed, cases);
  if (name == "homog") return homog_suite(seed, cases);
  if (name == "dsl") return dsl_suite(seed, cases);
  throw Error(ErrorKind::InvalidInput, "unknown suite '" + name + "'");
}

}  // namespace dvisit
