#include <doctest.h>

#include "dvisit/error.hpp"
#include "dvisit/suites.hpp"

using namespace dvisit;

TEST_CASE("every property suite passes on its default seed") {
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    const SuiteResult r = run_suite(name, 42, 40);
    CHECK(r.passed);
    CHECK(r.counterexample.empty());
    CHECK(r.cases > 0);
  }
}

TEST_CASE("suites pass on other seeds") {
  for (std::uint64_t seed : {1u, 7u, 2024u})
    for (const auto& name : suite_names()) {
      CAPTURE(name);
      CHECK(run_suite(name, seed, 20).passed);
    }
}

TEST_CASE("unknown suite") {
  CHECK_THROWS_AS(run_suite("nosuch", 1, 1), Error);
}
