#pragma once

// U/V operators at p (full and partial), p-depletion, p-stabilization, and
// synthetic eigenforms with prescribed Hecke data (the test-input factory).

#include "hmf/qexp.hpp"
#include "hmf/random.hpp"

#include <map>
#include <utility>

namespace hmf {

// full U: coefficient at beta is a_{p beta}; output bound = input/p
QExp u_full(const QExp& g);
// partial U at prime i: coefficient at beta is a_{x_i beta}
QExp u_partial(const QExp& g, int i);
// full V: index multiplication by p; output bound = p * input
QExp v_full(const QExp& g);
// partial V at prime i: index multiplication by x_i
QExp v_partial(const QExp& g, int i);

// graded operators on nearly-overconvergent forms: V-multidegree d picks up
// p^{|d|} under U (and is divided by it under V)
NocForm noc_u_full(const NocForm& h);
NocForm noc_v_full(const NocForm& h);

// zero out every coefficient with beta in P_i * lattice, for each listed
// prime; support filter, trace bound unchanged
QExp deplete(const QExp& g, const std::vector<int>& primes);
bool is_depleted(const QExp& g, int prime_i);
bool is_depleted_all(const QExp& g);

// g - other_root * V_{P_i}(g)
QExp p_stabilize(const QExp& g, const UnramElem& other_root, int prime_i);

// the paper's normalized U: eval of (omega_i/x_i)^v applied as a scalar,
// v = integer v-part of the arithmetic weight, one entry per embedding
UnramElem u_partial_norm_scalar(const HilbertCtx& hc, int i, const std::vector<i64>& v);

// --- synthetic eigenforms --------------------------------------------------

using IdealKey = std::pair<i64, int>;  // (rational prime, tag)

struct EigenData {
  i64 k = 2;  // parallel classical weight
  // (alpha, beta) per prime above p, alpha * beta = N(P)^{k-1} chi(P)
  std::vector<std::pair<UnramElem, UnramElem>> p_roots;
  std::map<IdealKey, UnramElem> neben;  // chi at prime ideals (default 1)
  std::map<IdealKey, UnramElem> seeds;  // a_Q for primes away from p
};

// random unit Hecke data consistent with the alpha*beta relation; seeds for
// every prime ideal of norm <= norm_bound
EigenData random_eigen_data(const HilbertCtx& hc, i64 k, i64 norm_bound, Rng& rng);

class SyntheticBuilder {
 public:
  SyntheticBuilder(const HilbertCtx& hc, i64 norm_bound);
  // multiplicative cuspidal q-expansion with the prescribed Hecke data
  QExp eigenform(const EigenData& d, i64 trace_bound) const;
  // T_{P_i}-coefficient data: a(P_i) = alpha_i + beta_i etc. are encoded in d
  const std::vector<PrimeIdeal>& primes() const { return primes_; }
  int prime_index_above_p(int i) const { return p_idx_[i]; }

 private:
  const HilbertCtx* hc_ = nullptr;
  std::vector<PrimeIdeal> primes_;
  std::vector<int> p_idx_;  // positions of the primes above p, labeled like U.x
};

// --- Q-side synthetic eigenforms -------------------------------------------

struct EllipticEigenData {
  i64 k = 2;
  UnramElem alpha, beta;  // alpha * beta = p^{k-1} chi_p
  UnramElem chi_p;
  std::map<i64, UnramElem> neben;  // chi at primes q != p (default 1)
  std::map<i64, UnramElem> seeds;  // a_q for primes q != p
};

EllipticEigenData random_elliptic_eigen_data(const PadicCtx& cx, i64 p, i64 k, i64 bound,
                                             Rng& rng);
QLine elliptic_eigenform(const PadicCtx& cx, i64 p, const EllipticEigenData& d, i64 bound);
// stabilizations f - root * V_p f
QLine qline_stabilize(const QLine& f, const UnramElem& other_root, i64 p);

}  // namespace hmf
