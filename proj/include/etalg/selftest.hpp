#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace etalg {

struct SuiteResult {
  std::string name;
  int checked = 0;
  int failures = 0;
  std::string first_failure;
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool ok = true;
};

// Randomized property checks over every module, reproducible from the seed.
SelftestReport run_selftest(std::uint64_t seed);

}  // namespace etalg
