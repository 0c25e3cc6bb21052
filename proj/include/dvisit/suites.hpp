#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dvisit {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  /// Failed property and a shrunk counterexample, empty on success.
  std::string counterexample;
};

/// visits, expansion, erdos, homog, dsl
const std::vector<std::string>& suite_names();

/// Runs one seeded property suite. "all" is not accepted here; throws
/// InvalidInput for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t cases);

}  // namespace dvisit
