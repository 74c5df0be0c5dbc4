#pragma once

#include <string>
#include <vector>

namespace knotperc {

struct OracleResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Embedded oracle suite: trefoil table validation, known-knot invariants,
/// move invariance on random diagrams, float/exact agreement, connected sums.
std::vector<OracleResult> run_selftest(int random_codes = 50, int size = 10);

}  // namespace knotperc
