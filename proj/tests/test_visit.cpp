#include <doctest.h>

#include <random>
#include <set>

#include "dvisit/oracles.hpp"
#include "dvisit/visit.hpp"

using namespace dvisit;

namespace {

using Words = std::vector<ColorWord>;

ColorTree tree_of(std::initializer_list<ColorWord> nodes, std::size_t k) {
  return validate_tree(std::vector<ColorWord>(nodes), k);
}

const Words golden = {{}, {1}, {1, 1}, {0}, {0, 0}, {0, 1}, {1, 0}};

}  // namespace

TEST_CASE("c-completeness") {
  const ColorTree full = ColorTree::full(2, 2);
  const Words l = {{}, {1}, {1, 1}};
  CHECK(is_c_complete(full, l, 1));
  CHECK_FALSE(is_c_complete(full, l, 0));
  CHECK(is_c_complete(full, Words{}, 0));
  CHECK_THROWS_AS(is_c_complete(full, Words{{0, 0, 0}}, 0), Error);
}

TEST_CASE("D-completeness") {
  const ColorTree depth1 = ColorTree::full(2, 1);
  CHECK(is_D_complete(depth1, Words{{}, {0}, {1}}, PriorityList({0, 1}, 2)));
  CHECK(is_D_complete(depth1, Words{{}, {1}}, PriorityList({1}, 2)));
  CHECK_FALSE(is_D_complete(depth1, Words{{}, {1}}, PriorityList({0, 1}, 2)));
  CHECK(is_D_complete(depth1, Words{{1}}, PriorityList({}, 2)));
}

TEST_CASE("nth_expansion examples") {
  CHECK(nth_expansion(tree_of({{}, {0}, {1}}, 2), Words{{}}, 0, 0) == ColorWord{0});
  CHECK(nth_expansion(tree_of({{}, {0}, {1}, {1, 0}}, 2), Words{{}, {1}}, 1, 0) == ColorWord{1, 0});
  CHECK_FALSE(nth_expansion(tree_of({{}, {1}}, 2), Words{{}, {1}}, 0, 0));
}

TEST_CASE("nth_expansion orders bases lexicographically, not by list position") {
  const ColorTree t = ColorTree::full(2, 2);
  const Words m = {{}, {1}, {0}};
  CHECK(nth_expansion(t, m, 0, 0) == ColorWord{0});
  CHECK(nth_expansion(t, m, 1, 0) == ColorWord{0, 0});
  CHECK(nth_expansion(t, m, 2, 0) == ColorWord{1, 0});
  CHECK_FALSE(nth_expansion(t, m, 3, 0));
}

TEST_CASE("check_visit examples") {
  const ColorTree full = ColorTree::full(2, 2);
  CHECK(check_visit(full, Words{{0, 1}}, PriorityList({}, 2), ColorWord{0, 1}));
  CHECK(check_visit(full, golden, PriorityList({0, 1}, 2), ColorWord{}));
  CHECK_FALSE(check_visit(full, Words{{}, {0}}, PriorityList({0, 1}, 2), ColorWord{}));
  CHECK_FALSE(check_visit(full, Words{}, PriorityList({0, 1}, 2), ColorWord{}));
  CHECK_FALSE(check_visit(full, Words{{}, {1}, {1}}, PriorityList({0, 1}, 2), ColorWord{}));
  CHECK_FALSE(check_visit(full, Words{{}, {0, 0, 0}}, PriorityList({0, 1}, 2), ColorWord{}));
}

TEST_CASE("every prefix of the golden trace is a visit") {
  const ColorTree full = ColorTree::full(2, 2);
  for (std::size_t n = 1; n <= golden.size(); ++n)
    CHECK(check_visit(full, std::span(golden).first(n), PriorityList({0, 1}, 2), ColorWord{}));
}

TEST_CASE("extend_visit examples") {
  const ColorTree full = ColorTree::full(2, 2);
  const PriorityList d({0, 1}, 2);
  CHECK_FALSE(extend_visit(tree_of({{}}, 2), Words{{}}, d, ColorWord{}));
  CHECK(extend_visit(full, Words{{}, {1}, {1, 1}}, d, ColorWord{}) == ColorWord{0});
  CHECK(extend_visit(full, Words{{}}, d, ColorWord{}) == ColorWord{1});
  CHECK_FALSE(extend_visit(full, golden, d, ColorWord{}));
  CHECK_THROWS_AS(extend_visit(full, Words{{}, {0}}, d, ColorWord{}), Error);
}

TEST_CASE("enumerate_visit examples") {
  Visit v = enumerate_visit(tree_of({{}}, 2), PriorityList({0}, 2), ColorWord{}, 10);
  CHECK(v.order == Words{{}});
  CHECK(v.terminated);

  v = enumerate_visit(ColorTree::full(2, 2), PriorityList({0, 1}, 2), ColorWord{}, 100);
  CHECK(v.order == golden);
  CHECK(v.terminated);

  v = enumerate_visit(ColorTree::all_words(1), PriorityList({0}, 1), ColorWord{}, 5);
  CHECK(v.order == Words{{}, {0}, {0, 0}, {0, 0, 0}, {0, 0, 0, 0}});
  CHECK_FALSE(v.terminated);

  CHECK_THROWS_AS(enumerate_visit(ColorTree::full(2, 1), PriorityList({0}, 2), ColorWord{0, 0}, 10), Error);
  CHECK_THROWS_AS(enumerate_visit(ColorTree::full(2, 1), PriorityList({0}, 2), ColorWord{}, 0), Error);
}

TEST_CASE("a budget equal to the visit length still reports termination") {
  const Visit v = enumerate_visit(ColorTree::full(2, 2), PriorityList({0, 1}, 2), ColorWord{}, golden.size());
  CHECK(v.order == golden);
  CHECK(v.terminated);
  const Visit short_run = enumerate_visit(ColorTree::full(2, 2), PriorityList({0, 1}, 2), ColorWord{}, 6);
  CHECK(short_run.order.size() == 6);
  CHECK_FALSE(short_run.terminated);
}

TEST_CASE("generator agrees with the declarative checker on random trees") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    const ColorTree t = oracle::random_tree(oracle::random_tree_params(rng, 3, 14));
    const PriorityList d = oracle::random_priority(rng, t.k());
    const Visit v = enumerate_visit(t, d, ColorWord{}, 1000);
    REQUIRE(v.terminated);
    for (std::size_t n = 1; n <= v.order.size(); ++n)
      REQUIRE(check_visit(t, std::span(v.order).first(n), d, ColorWord{}));
    CHECK(is_D_complete(t, v.order, d));
    const auto expected = oracle::restricted_subtree(t, d, ColorWord{});
    CHECK(std::set<ColorWord>(v.order.begin(), v.order.end()) == expected);
    CHECK(expected.size() == v.order.size());
  }
}

TEST_CASE("visits from a non-empty root stay above it") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 80; ++i) {
    const ColorTree t = oracle::random_tree(oracle::random_tree_params(rng, 3, 30));
    const std::vector<ColorWord> nodes(t.nodes().begin(), t.nodes().end());
    const ColorWord root = nodes[oracle::below(rng, nodes.size())];
    const PriorityList d = oracle::random_priority(rng, t.k());
    const Visit v = enumerate_visit(t, d, root, 1000);
    CHECK(v.order.front() == root);
    for (const auto& w : v.order) CHECK(in_restricted(t, d, root, w));
    CHECK(std::set<ColorWord>(v.order.begin(), v.order.end()) == oracle::restricted_subtree(t, d, root));
  }
}

TEST_CASE("stable_indices examples") {
  CHECK(stable_indices(Words{{}, {0}, {0, 0}}) == std::vector<std::size_t>{0, 1, 2});
  CHECK(stable_indices(golden) == std::vector<std::size_t>{0, 6});
  CHECK(stable_indices(Words{{}, {0}, {0, 0}, {0, 1}}) == std::vector<std::size_t>{0, 1, 3});
  CHECK(stable_indices(Words{}).empty());
}

TEST_CASE("stable_indices matches the quadratic definition") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const ColorTree t = oracle::random_tree(oracle::random_tree_params(rng, 3, 30));
    const PriorityList d = oracle::random_priority(rng, t.k());
    const Visit v = enumerate_visit(t, d, ColorWord{}, 1 + oracle::below(rng, 30));
    std::vector<std::size_t> expected;
    for (std::size_t m = 0; m < v.order.size(); ++m) {
      bool stable = true;
      for (std::size_t j = m + 1; j < v.order.size(); ++j) stable = stable && v.order[m].is_proper_prefix_of(v.order[j]);
      if (stable) expected.push_back(m);
    }
    CHECK(stable_indices(v.order) == expected);
  }
}

TEST_CASE("branch_approx examples") {
  CHECK(branch_approx(Words{{}}) == Words{{}});
  CHECK(branch_approx(golden) == Words{{}, {1}, {1, 0}});
  const Words chain = {{}, {0}, {0, 0}, {0, 0, 0}};
  CHECK(branch_approx(chain) == chain);
}

TEST_CASE("census examples") {
  CHECK(branch_census(2, Words{{}, {1}, {1, 0}}).counts == std::vector<std::size_t>{1, 1});
  CHECK(visit_census(2, golden).counts == std::vector<std::size_t>{3, 3});
  CHECK(visit_census(2, golden).total() == 6);
  CHECK(visit_census(3, Words{{}}).counts == std::vector<std::size_t>{0, 0, 0});
  CHECK(branch_census(3, Words{{}}).counts == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("trace JSON is stable") {
  const Visit v = enumerate_visit(ColorTree::full(2, 1), PriorityList({0, 1}, 2), ColorWord{}, 10);
  const std::string json = visit_trace_json(v);
  CHECK(json == visit_trace_json(enumerate_visit(ColorTree::full(2, 1), PriorityList({0, 1}, 2), ColorWord{}, 10)));
  CHECK(json.find("\"terminated\"") != std::string::npos);
  CHECK(json.back() == '\n');
  CHECK(visit_to_dot(v).rfind("digraph", 0) == 0);
}
