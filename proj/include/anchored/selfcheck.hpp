#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anchored/graph.hpp"

namespace anchored::selfcheck {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Shared verification corpus: seeded random graphs with at most 14
// non-frontier vertices, dyadic weights in {1,2,4} and a random frontier.
WeightedGraph corpus_graph(std::uint64_t seed);

// Named verification suites (the acceptance criteria). Unknown names throw.
SuiteResult run_suite(const std::string& name);
std::vector<std::string> suite_names();

}  // namespace anchored::selfcheck
