#pragma once

// Diagonal restriction, Euler factors, the synthetic pairing, and the
// twisted triple product identity chains: depleted-vs-stabilized operator
// pipelines compared coefficientwise, plus the interpolation bracket.

#include "hmf/connection.hpp"
#include "hmf/linalg.hpp"
#include "hmf/ocproj.hpp"

#include <string>

namespace hmf {

// pullback along the subfield embedding: q-coefficients sum over trace
// fibers, V-monomials V_1^{i_1} V_2^{i_2} collapse to V^{i_1+i_2}, the
// weight restricts to the single F-exponent u_1 + u_2
QNoc diag_restrict(const NocForm& h);

// value u / p^e with the p-denominator tracked explicitly
struct ScaledElem {
  UnramElem u;
  int e = 0;

  ScaledElem() = default;
  explicit ScaledElem(const UnramElem& x, int e_ = 0) : u(x), e(e_) {}
  ScaledElem operator*(const ScaledElem& o) const;
  ScaledElem operator+(const ScaledElem& o) const;
  ScaledElem operator-(const ScaledElem& o) const;
  ScaledElem inverse() const;
  ScaledElem normalized() const;  // strip common p-powers
  // valuation of the true value (can be negative); cap at ctx M - e
  int true_val() const { return u.val() - e; }
};

// true valuation of a - b (>= target means agreement mod p^target)
int scaled_agreement(const ScaledElem& a, const ScaledElem& b);

// univariate rational function in T, numerator/denominator coefficient
// lists (low degree first)
struct RationalFactor {
  std::vector<UnramElem> num;
  std::vector<UnramElem> den;
  ScaledElem eval(const UnramElem& T) const;
};

// E(x, y) = 1 - x/y, y a unit
UnramElem euler_E(const UnramElem& x, const UnramElem& y);

// E_1(T) = 1 - a_p* chi(p) T / (p^{k-1}(p+1))
RationalFactor euler_E1(const PadicCtx& cx, const UnramElem& ap_star, const UnramElem& chi_p,
                        i64 k, i64 p);

// inert: (1 - p^t alpha T^{-1})(1 - p^t beta T^{-1})
// split: prod over the four cross products (1 - p^t a_1 b_2 T^{-1})
RationalFactor euler_Ep_inert(const PadicCtx& cx, const UnramElem& alpha, const UnramElem& beta,
                              i64 t_p, i64 p);
RationalFactor euler_Ep_split(const PadicCtx& cx, const std::pair<UnramElem, UnramElem>& r1,
                              const std::pair<UnramElem, UnramElem>& r2, i64 t_p, i64 p);
// split E_0: 1 - p^{2t} alpha_1 alpha_2 beta_1 beta_2 T^{-2}
RationalFactor euler_E0_split(const PadicCtx& cx, const std::pair<UnramElem, UnramElem>& r1,
                              const std::pair<UnramElem, UnramElem>& r2, i64 t_p, i64 p);

struct PairingResult {
  std::vector<UnramElem> coords;
  int digits_lost = 0;
  int residual_val = 0;
};

// express h in the given basis over the common window; the f*-coordinate
// convention is coords[i] for basis[i]
PairingResult pairing(const QLine& h, const std::vector<QLine>& basis, int loss_budget,
                      int residual_floor);

struct IdentityLine {
  std::string name;
  bool pass = false;
  int residual_val = 0;  // agreement valuation achieved
  int required = 0;
};

struct TripleReport {
  std::vector<IdentityLine> lines;
  bool all_pass = true;
  // the interpolation factor, as the ratio of the two pairing evaluations
  ScaledElem interpolation_ratio;
  void add(const std::string& name, int got, int required);
};

struct TripleParams {
  i64 k_g = 2;      // parallel classical weight of the Hilbert form
  i64 t1 = 1;       // classical exponent at sigma_1
  i64 t2 = 0;       // classical exponent at sigma_2
  i64 trace_bound = 24;
  int budget = 6;   // required agreement precision (digits)
  int pairing_M = 40;  // precision for the scalar Euler/pairing layer
  std::uint64_t seed = 1;
};

TripleReport verify_depletion_identities(const HilbertCtx& hc, const TripleParams& par);

}  // namespace hmf
