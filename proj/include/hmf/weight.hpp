#pragma once

// Weights as p-adic character data: per-embedding exponents u_sigma, a
// torsion part given as Teichmuller exponents per prime above p, and the
// analyticity level n.

#include "hmf/field.hpp"

#include <vector>

namespace hmf {

struct Weight {
  std::vector<UnramElem> u;  // one exponent per embedding, integral
  std::vector<i64> chi;      // Teichmuller exponent per prime above p
  int n = 1;                 // analytic on 1 + p^n

  bool operator==(const Weight& w) const;
};

// classical parallel / per-embedding integer weight
Weight classical_weight(const SplittingData& S, const std::vector<i64>& k);
Weight trivial_weight(const SplittingData& S);

// u_sigma += amount at one embedding; torsion exponent at its prime shifts
// by the matching classical amount
Weight weight_shift(const SplittingData& S, const Weight& w, int sigma, i64 amount);

// smallest n >= 1 with val(u_sigma * log t) >= 1 for all t = 1 mod p^n
int analyticity_level(const SplittingData& S, const Weight& w);

// evaluate at a tuple of units, one per prime above p
UnramElem eval_character(const SplittingData& S, const Weight& w,
                         const std::vector<UnramElem>& t);

// evaluate only the analytic part prod exp(u_sigma log t_sigma) at a tuple
// of 1-units given per embedding (already embedded into the common field)
UnramElem eval_analytic_at_embeddings(const SplittingData& S, const Weight& w,
                                      const std::vector<UnramElem>& t_sigma);

// desk-scale restriction along Q -> L: the single F-exponent is
// u_{sigma_1} + u_{sigma_2}, torsion restricted to Z_p^x
Weight restrict_to_F(const SplittingData& S, const Weight& w);

// torsion order of the character group per prime (p^{f_i} - 1)
i64 torsion_order(const SplittingData& S, int prime_idx);

}  // namespace hmf
