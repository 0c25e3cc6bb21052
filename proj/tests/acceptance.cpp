// Acceptance run: one line per criterion, nonzero exit if any fails.
//
//   acceptance <path to dvisit> <work dir>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dvisit/dsl.hpp"
#include "dvisit/erdos.hpp"
#include "dvisit/oracles.hpp"
#include "dvisit/visit.hpp"

using namespace dvisit;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;
using Words = std::vector<ColorWord>;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;
  std::string failure;

  void fail(const std::string& why) {
    if (passed) failure = why;
    passed = false;
  }
};

struct Sample {
  ColorTree tree;
  PriorityList priority;
  ColorWord root;
};

// The shared random corpus for the first two criteria.
std::vector<Sample> tree_corpus(std::size_t count, std::size_t max_k, std::size_t max_nodes, std::uint64_t seed,
                                bool random_root) {
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  while (out.size() < count) {
    oracle::TreeGenParams p = oracle::random_tree_params(rng, max_k, max_nodes);
    if (oracle::below(rng, 3) != 0) {
      // bushy trees near the node cap
      p.max_nodes = max_nodes / 2 + oracle::below(rng, max_nodes - max_nodes / 2 + 1);
      p.max_depth = 2 + oracle::below(rng, 8);
      p.branching = {0.45 + 0.55 * oracle::unit(rng)};
    }
    ColorTree t = oracle::random_tree(p);
    PriorityList d = oracle::random_priority(rng, t.k(), oracle::below(rng, 4) == 0);
    ColorWord root;
    if (random_root && oracle::below(rng, 4) == 0) {
      const std::vector<ColorWord> nodes(t.nodes().begin(), t.nodes().end());
      root = nodes[oracle::below(rng, nodes.size())];
    }
    out.push_back(Sample{std::move(t), std::move(d), std::move(root)});
  }
  return out;
}

std::string describe(const Sample& s) {
  std::ostringstream out;
  out << "tree " << tree_to_json(s.tree) << " priority " << s.priority.str() << " root " << s.root.str();
  return out.str();
}

bool is_prefix(const Words& a, const Words& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

Outcome criterion_subtree(const std::vector<Sample>& corpus) {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  std::size_t truncated = 0;
  for (const auto& s : corpus) {
    const std::size_t budget = oracle::below(rng, 4) == 0 ? 1 + oracle::below(rng, 20) : 1000;
    const Visit v = enumerate_visit(s.tree, s.priority, s.root, budget);
    if (!v.terminated) ++truncated;
    std::set<ColorWord> seen;
    for (const auto& w : v.order) {
      if (!seen.insert(w).second) o.fail("duplicate entry " + w.str() + " in " + describe(s));
      if (!s.root.is_prefix_of(w)) o.fail("entry " + w.str() + " not above the root in " + describe(s));
      else if (w != s.root && !seen.count(w.parent())) o.fail("parent of " + w.str() + " missing in " + describe(s));
      if (!in_restricted(s.tree, s.priority, s.root, w)) o.fail("entry " + w.str() + " outside the restricted subtree");
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 30.0) o.fail("took " + std::to_string(elapsed) + " s");
  o.detail = std::to_string(corpus.size()) + " trees (" + std::to_string(truncated) + " truncated), " +
             std::to_string(elapsed) + " s";
  return o;
}

Outcome criterion_complete(const std::vector<Sample>& corpus) {
  Outcome o;
  std::size_t terminated = 0;
  for (const auto& s : corpus) {
    const Visit v = enumerate_visit(s.tree, s.priority, s.root, 1000);
    if (!v.terminated) continue;
    ++terminated;
    if (!is_D_complete(s.tree, v.order, s.priority)) o.fail("terminated visit not complete: " + describe(s));
    if (std::set<ColorWord>(v.order.begin(), v.order.end()) != oracle::restricted_subtree(s.tree, s.priority, s.root))
      o.fail("entry set differs from the restricted subtree: " + describe(s));
  }
  if (terminated < corpus.size()) o.fail("only " + std::to_string(terminated) + " runs terminated");
  o.detail = std::to_string(terminated) + " terminated visits checked";
  return o;
}

Outcome criterion_oracle_chain() {
  Outcome o;
  const auto corpus = tree_corpus(120, 3, 25, 303, false);
  double slowest = 0;
  for (const auto& s : corpus) {
    const auto start = Clock::now();
    const auto visits = oracle::all_visits(s.tree, s.priority, s.root);
    const Visit full = enumerate_visit(s.tree, s.priority, s.root, 1000);
    for (std::size_t i = 0; i + 1 < visits.size(); ++i) {
      if (!is_prefix(visits[i], visits[i + 1])) o.fail("visits not prefix ordered: " + describe(s));
      const auto ext = oracle::valid_extensions(s.tree, visits[i], s.priority, s.root);
      if (ext.size() != 1 || ext[0] != visits[i + 1].back())
        o.fail(std::to_string(ext.size()) + " extensions of a non-maximal visit: " + describe(s));
    }
    if (visits.empty() || visits.back() != full.order) o.fail("maximum differs from the generator: " + describe(s));
    else if (!oracle::valid_extensions(s.tree, visits.back(), s.priority, s.root).empty())
      o.fail("maximal visit is extendable: " + describe(s));
    slowest = std::max(slowest, seconds_since(start));
  }
  if (slowest >= 10.0) o.fail("slowest instance took " + std::to_string(slowest) + " s");
  o.detail = std::to_string(corpus.size()) + " trees, slowest " + std::to_string(slowest) + " s";
  return o;
}

Outcome criterion_expansion() {
  Outcome o;
  std::mt19937_64 rng(404);
  std::size_t queries = 0, present = 0;
  while (queries < 12000) {
    const ColorTree t = oracle::random_tree(oracle::random_tree_params(rng, 4, 40));
    std::vector<ColorWord> nodes(t.nodes().begin(), t.nodes().end());
    for (int q = 0; q < 20; ++q, ++queries) {
      std::vector<ColorWord> bases;
      for (const auto& w : nodes)
        if (oracle::below(rng, 2)) bases.push_back(w);
      std::shuffle(bases.begin(), bases.end(), rng);
      const std::size_t n = oracle::below(rng, bases.size() + 2);
      const Color c = static_cast<Color>(oracle::below(rng, t.k()));
      const auto fast = nth_expansion(t, bases, n, c);
      if (fast) ++present;
      if (fast != oracle::naive_nth_expansion(t, bases, n, c))
        o.fail("disagreement at n=" + std::to_string(n) + " c=" + std::to_string(c) + " tree " + tree_to_json(t));
    }
  }
  o.detail = std::to_string(queries) + " queries, " + std::to_string(present) + " with a result";
  return o;
}

Outcome criterion_golden() {
  Outcome o;
  const Words golden = {{}, {1}, {1, 1}, {0}, {0, 0}, {0, 1}, {1, 0}};
  const Visit v = enumerate_visit(ColorTree::full(2, 2), PriorityList({0, 1}, 2), ColorWord{}, 100);
  if (v.order != golden || !v.terminated) o.fail("depth-2 binary trace differs");

  for (std::size_t budget : {5u, 50u}) {
    const Visit u = enumerate_visit(ColorTree::all_words(1), PriorityList({0}, 1), ColorWord{}, budget);
    bool chain = u.order.size() == budget && !u.terminated;
    for (std::size_t i = 0; chain && i < u.order.size(); ++i) chain = u.order[i] == ColorWord(std::vector<Color>(i, 0));
    if (!chain) o.fail("unary visit is not a chain at budget " + std::to_string(budget));
  }
  o.detail = "binary depth 2 and unary chain";
  return o;
}

Outcome criterion_erdos() {
  Outcome o;
  std::mt19937_64 rng(606);
  const std::size_t tables = 240;
  for (std::size_t i = 0; i < tables; ++i) {
    const std::size_t k = 2 + oracle::below(rng, 3);
    const std::size_t n = 2 + oracle::below(rng, 63);
    const std::uint64_t seed = rng();
    const Coloring c = oracle::random_coloring(seed, k, n);
    const ErdosTree t = build_erdos(c, n);
    if (!check_erdos_property(t, c))
      o.fail("property fails for table seed " + std::to_string(seed) + " k=" + std::to_string(k));

    const std::size_t m = std::min<std::size_t>(n, 20);
    const ErdosTree small = build_erdos(c, m);
    const auto rel = oracle::erdos_relation_by_formula(c, m);
    for (Node x = 0; x < m; ++x)
      for (Node y = 0; y < m; ++y)
        if (rel[x][y] != small.is_ancestor(x, y))
          o.fail("formula and descent disagree on (" + std::to_string(x) + "," + std::to_string(y) + ") for seed " +
                 std::to_string(seed));
  }
  o.detail = std::to_string(tables) + " random tables";
  return o;
}

Outcome criterion_homogeneous() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t runs = 0;
  auto run = [&](const Coloring& c, std::size_t n, std::size_t budget) {
    ++runs;
    const PipelineResult r = homog_pipeline(c, n, budget, PriorityList::identity(c.k()));
    if (!r.report.verified)
      o.fail("unverified: " + c.name() + " k=" + std::to_string(c.k()) + " N=" + std::to_string(n));
  };

  const std::vector<std::string> expressions = {
      "(x+y)%2", "(x+y)%3", "x*y", "y-x", "min(x,y)%4", "if x < 5 then 0 else 1", "(x*x + y) % 7",
      "max(x,y) / (x+1)", "if (x+y)%3 == 0 then x else y", "x % 3 + y % 2", "(y / 3) - (x / 2)"};
  for (const auto& src : expressions)
    for (std::size_t k = 2; k <= 4; ++k) run(DslColoring(parse(src), k).to_coloring(), 200, 4000);

  for (std::size_t k = 1; k <= 4; ++k) {
    run(builtin("sum-mod", k), 200, 4000);
    run(builtin("diff-mod", k), 200, 4000);
    run(builtin("block:7", k), 200, 4000);
    run(builtin("constant:" + std::to_string(k - 1), k), 200, 4000);
  }

  std::mt19937_64 rng(707);
  for (int i = 0; i < 60; ++i) {
    const std::size_t k = 2 + oracle::below(rng, 3);
    const std::size_t n = 2 + oracle::below(rng, 199);
    run(oracle::random_coloring(rng(), k, n), n, 1 + oracle::below(rng, 4000));
  }

  const double elapsed = seconds_since(start);
  if (elapsed >= 60.0) o.fail("took " + std::to_string(elapsed) + " s");
  o.detail = std::to_string(runs) + " pipeline runs, " + std::to_string(elapsed) + " s";
  return o;
}

Outcome criterion_branch_reflection() {
  Outcome o;
  const std::vector<std::size_t> budgets = {100, 400, 1600};
  struct Family {
    std::string name;
    std::function<Visit(std::size_t)> run;
  };
  const std::vector<Family> families = {
      {"unary",
       [](std::size_t b) { return enumerate_visit(ColorTree::all_words(1), PriorityList({0}, 1), ColorWord{}, b); }},
      {"parity", [](std::size_t b) {
         return homog_pipeline(builtin("sum-mod", 2), 4 * b, b, PriorityList::identity(2)).visit;
       }},
      {"sum mod 3", [](std::size_t b) {
         return homog_pipeline(builtin("sum-mod", 3), 4 * b, b, PriorityList::identity(3)).visit;
       }}};

  std::ostringstream detail;
  for (const auto& family : families) {
    std::vector<ColorCensus> visit_counts, branch_counts;
    std::size_t k = 0;
    for (std::size_t b : budgets) {
      const Visit v = family.run(b);
      k = v.tree.k();
      visit_counts.push_back(visit_census(k, v.order));
      branch_counts.push_back(branch_census(k, branch_approx(v.order)));
      const auto stable = stable_indices(v.order);
      for (std::size_t i = 0; i < stable.size(); ++i)
        for (std::size_t j = i + 1; j < stable.size(); ++j)
          if (!v.order[stable[i]].is_prefix_of(v.order[stable[j]]))
            o.fail(family.name + ": stable entries not comparable at budget " + std::to_string(b));
    }
    detail << family.name << " unbounded {";
    bool first = true;
    for (Color c = 0; c < k; ++c) {
      const bool unbounded = visit_counts[0][c] < visit_counts[1][c] && visit_counts[1][c] < visit_counts[2][c];
      if (!unbounded) continue;
      detail << (first ? "" : ",") << c;
      first = false;
      if (!(branch_counts[0][c] < branch_counts[1][c] && branch_counts[1][c] < branch_counts[2][c]))
        o.fail(family.name + ": branch census of color " + std::to_string(c) + " does not grow (" +
               std::to_string(branch_counts[0][c]) + ", " + std::to_string(branch_counts[1][c]) + ", " +
               std::to_string(branch_counts[2][c]) + ")");
    }
    detail << "} ";
    if (first) o.fail(family.name + ": no color grows with the budget");
  }
  o.detail = detail.str() + "at budgets 100/400/1600, horizon 4x budget";
  return o;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

Outcome criterion_determinism(const std::string& cli, const fs::path& work) {
  Outcome o;
  fs::remove_all(work);
  fs::create_directories(work);
  {
    std::ofstream(work / "tree.json") << tree_to_json(oracle::random_tree({3, 4, 30, {0.6}, 9}));
    std::ofstream(work / "table.json") << table_to_json(oracle::random_coloring_table(10, 3, 30));
  }
  struct Command {
    std::string args;
    std::vector<std::string> outputs;
  };
  const std::vector<Command> commands = {
      {"visit --tree " + quote((work / "tree.json").string()) + " --priority 2,0,1 --budget 200 --out OUT/a.json",
       {"a.json"}},
      {"visit --tree full:3:3 --emit dot --out OUT/b.dot", {"b.dot"}},
      {"homog --coloring '(x*y + x) % 3' --k 3 --horizon 150 --budget 1500 --out OUT/c.json --trace OUT/c_trace.json",
       {"c.json", "c_trace.json"}},
      {"homog --table " + quote((work / "table.json").string()) + " --k 3 --horizon 30 --emit dot --out OUT/d.dot",
       {"d.dot"}},
      {"check --seed 5 --cases 30", {}},
  };
  const int repeats = 3;
  std::vector<std::vector<std::string>> seen(commands.size());
  for (int r = 0; r < repeats; ++r) {
    const fs::path out = work / ("run" + std::to_string(r));
    fs::create_directories(out);
    for (std::size_t i = 0; i < commands.size(); ++i) {
      std::string args = commands[i].args;
      for (auto at = args.find("OUT"); at != std::string::npos; at = args.find("OUT"))
        args.replace(at, 3, out.string());
      const fs::path stdout_file = out / ("stdout" + std::to_string(i) + ".txt");
      const std::string line = quote(cli) + " " + args + " > " + quote(stdout_file.string()) + " 2>/dev/null";
      if (std::system(line.c_str()) != 0) o.fail("command failed: " + line);
      std::string bytes = slurp(stdout_file);
      for (const auto& name : commands[i].outputs) bytes += "\n--" + name + "--\n" + slurp(out / name);
      if (r == 0) seen[i].push_back(bytes);
      else if (bytes != seen[i][0]) o.fail("output differs on repeat " + std::to_string(r) + ": " + commands[i].args);
    }
  }
  o.detail = std::to_string(commands.size()) + " commands x " + std::to_string(repeats) + " runs";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <dvisit executable> <work dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = argv[2];

  const auto corpus = tree_corpus(600, 4, 40, 101, true);
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "visits are duplicate-free and prefix-closed", [&] { return criterion_subtree(corpus); }},
      {2, "terminated visits are complete restricted subtrees", [&] { return criterion_complete(corpus); }},
      {3, "brute-force visits form a chain with unique extensions", criterion_oracle_chain},
      {4, "expansion agrees with the naive oracle", criterion_expansion},
      {5, "golden traces", criterion_golden},
      {6, "Erdos trees on random tables", criterion_erdos},
      {7, "extracted sets are homogeneous", criterion_homogeneous},
      {8, "branch reflects unbounded colors", criterion_branch_reflection},
      {9, "CLI output is byte-identical across runs", [&] { return criterion_determinism(cli, work / "determinism"); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " [" << o.detail << "]\n";
    if (!o.passed) {
      std::cout << "      " << o.failure << "\n";
      ++failures;
    }
    std::cout.flush();
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures ? 1 : 0;
}
