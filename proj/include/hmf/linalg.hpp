#pragma once

// Dense exact linear solves over Z/p^M (unramified coefficients) with
// valuation-aware pivoting and digit-loss tracking. Used by the pairing
// and by the dense projection oracle.

#include "hmf/padic.hpp"

#include <vector>

namespace hmf {

struct LinSolveResult {
  std::vector<UnramElem> x;
  int digits_lost = 0;   // sum of pivot valuations
  int residual_val = 0;  // min valuation of A x - b over all rows (M if exact)
};

// Solve A x = b (rows >= cols allowed). Throws IllConditioned when the
// accumulated pivot valuation exceeds loss_budget, NotInSpan when the
// residual valuation falls below residual_floor.
LinSolveResult solve_mod_pM(std::vector<std::vector<UnramElem>> A, std::vector<UnramElem> b,
                            int loss_budget, int residual_floor);

}  // namespace hmf
