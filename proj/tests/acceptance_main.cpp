// The acceptance gate: one pass/fail line per criterion, nonzero exit on
// any failure. HMF_ACCEPT_QUICK=1 trims the draw counts for smoke runs.

#include "hmf/selftest.hpp"

#include <cstdlib>
#include <iostream>

int main() {
  hmf::AcceptanceConfig cfg;
  const char* quick = std::getenv("HMF_ACCEPT_QUICK");
  cfg.quick = quick && std::string(quick) == "1";
  hmf::AcceptanceReport rep = hmf::run_acceptance(cfg, &std::cout);
  std::cout << (rep.all_pass ? "ACCEPTANCE: all criteria pass"
                             : "ACCEPTANCE: FAILURES present")
            << std::endl;
  return rep.all_pass ? 0 : 1;
}
