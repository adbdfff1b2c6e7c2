#pragma once

// The Gauss-Manin connection on nearly-overconvergent q-expansions, its
// closed-form powers, and the p-adic iterate nabla^s through the log/exp
// operator series with certified convergence.

#include "hmf/hecke.hpp"
#include "hmf/qexp.hpp"

#include <map>

namespace hmf {

// one application of the partial connection at an embedding:
//   a V^d  ->  theta_sigma(a) V^d + p (u_sigma - d_sigma) a V_sigma V^d
// at weight shifted by 2 sigma
NocForm nabla_sigma(const NocForm& h, int sigma);

// t-fold application (the direct iteration path)
NocForm nabla_iterated(const NocForm& h, int sigma, int times);

// closed form for nabla(sigma)^N on a modular (V-degree 0) input:
//   sum_j p^j binom(N,j) (u+N-1)(u+N-2)...(u+N-j) theta^{N-j}(g) V_sigma^j
NocForm nabla_power_closed(const QExp& g, int N, int sigma, const Weight& k);

// lower bound on the valuation of the (j_1..j_i) term of the B-series:
// sum j_a - v_p(i!) - sum v_p(j_a)
Rational term_valuation_bound(const std::vector<i64>& js, i64 p);
// the proof's simplified floor: (sum j) (1 - 1/(p-1))
Rational simplified_tail_bound(i64 sum_j, i64 p);

struct IterationPlan {
  int sigma = 0;
  UnramElem v;          // exponent of s_sigma, integral
  int m_max = 0;        // series truncation
  int target_precision = 0;
};

// throws ConvergenceBudget unless the predicted tail at m_max covers the target
void validate_plan(const HilbertCtx& hc, const IterationPlan& plan);

// a generous default series budget: twice the pen-and-paper floor plus
// slack, enough for the observed (slower) valuation growth; the stopping
// rule exits early on stability
int default_m_max(i64 p, int target);

struct IterationDiagnostics {
  std::vector<int> term_valuations;  // observed minimum valuation per series term
  int terms_used = 0;
  int certified = 0;
};

// Weight-graded stack of isotypic components along one sigma-direction:
// offset j holds the piece of weight k + 2 j (p^{f_sigma}-1) sigma. This is
// the H^0(W_k(sigma)) model the iteration series lives in; collapse() sums
// the components (evaluation at the marked trivialization).
struct GradedNoc {
  std::map<int, NocForm> comps;
  NocForm collapse(const Weight& final_weight) const;
};

// m-th partial sum of the operator logarithm
//   A(g, sigma)_m = sum_{j<=m} (-1)^{j-1} (nabla(sigma)^{p^f - 1} - id)^j (g) / j
// g must be depleted at the prime of sigma
NocForm log_nabla(const NocForm& g, int sigma, int m);

// nabla(sigma)^{s_sigma} via the binomial collapse of the B-series:
//   sum_n binom(v/(p^f-1), n) (nabla(sigma)^{p^f-1} - id)^n (g)
NocForm nabla_sigma_s(const NocForm& g, const IterationPlan& plan,
                      IterationDiagnostics* diag = nullptr);

// composite over all embeddings; g depleted at every prime above p
NocForm nabla_s(const NocForm& g, const std::vector<IterationPlan>& plans,
                int* certified = nullptr,
                std::vector<IterationDiagnostics>* diags = nullptr);

}  // namespace hmf
