#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schreier {

struct CriterionResult {
  std::string name;
  bool pass = false;
  long elapsed_ms = 0;
  long budget_ms = 0;
  std::string detail;  // failure description or summary counts
};

// Runs the full acceptance suite, one line per criterion; returns all-pass.
bool run_selftest(std::ostream& out);
std::vector<CriterionResult> run_selftest_results();

}  // namespace schreier
