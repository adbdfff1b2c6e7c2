#pragma once

// The acceptance suite: every criterion is run at its stated tolerance and
// reported as a single pass/fail line. The CLI selftest subcommand and the
// acceptance test binary both drive this.

#include "hmf/triple.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hmf {

struct AcceptanceConfig {
  i64 D = 2;
  i64 p_split = 7;
  i64 p_inert = 5;
  int M = 16;
  i64 trace_bound = 30;
  std::uint64_t seed = 42;
  // trimmed draw counts for quick runs; the acceptance gate uses full counts
  bool quick = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  bool all_pass = true;
  void add(int id, const std::string& name, bool pass, const std::string& detail);
};

AcceptanceReport run_acceptance(const AcceptanceConfig& cfg, std::ostream* log);

}  // namespace hmf
