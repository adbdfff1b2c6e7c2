#pragma once

// Real quadratic field L = Q(sqrt D) at desk scale: integral basis (1, w),
// fundamental unit, narrow-class-number-1 gate, splitting of p, totally
// positive monoid enumeration and unit-orbit representatives, and the
// totally positive uniformizers x_i with x_1 x_2 = p.

#include "hmf/padic.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hmf {

// beta = m + n*w in the lattice O_L
struct MonoidIdx {
  i64 m = 0;
  i64 n = 0;
  bool operator==(const MonoidIdx& o) const { return m == o.m && n == o.n; }
  bool operator!=(const MonoidIdx& o) const { return !(*this == o); }
};

struct RealQuadField {
  i64 D = 0;
  bool half_basis = false;  // w = (1+sqrt D)/2 when D = 1 mod 4
  i64 disc = 0;
  i64 tr_w = 0;   // trace of w
  i64 nm_w = 0;   // norm of w
  MonoidIdx eps_fund;      // fundamental unit > 1
  i64 eps_norm = 0;        // its norm (must be -1 at construction)
  MonoidIdx eps_plus;      // generator of the totally positive units
  i64 class_number = 0;    // verified = 1

  static RealQuadField make(i64 D);

  i64 trace(MonoidIdx b) const { return 2 * b.m + tr_w * b.n; }
  i64 norm(MonoidIdx b) const { return b.m * b.m + tr_w * b.m * b.n + nm_w * b.n * b.n; }
  MonoidIdx conj(MonoidIdx b) const { return {b.m + tr_w * b.n, -b.n}; }
  MonoidIdx add(MonoidIdx a, MonoidIdx b) const { return {a.m + b.m, a.n + b.n}; }
  MonoidIdx sub(MonoidIdx a, MonoidIdx b) const { return {a.m - b.m, a.n - b.n}; }
  MonoidIdx mul(MonoidIdx a, MonoidIdx b) const;
  MonoidIdx mul_int(MonoidIdx a, i64 c) const { return {a.m * c, a.n * c}; }
  // exact division a / b in the lattice; nullopt if not integral
  std::optional<MonoidIdx> div_exact(MonoidIdx a, MonoidIdx b) const;

  bool is_zero(MonoidIdx b) const { return b.m == 0 && b.n == 0; }
  // both real embeddings >= 0
  bool is_s_positive(MonoidIdx b) const;
  // both real embeddings > 0
  bool is_tot_positive(MonoidIdx b) const;

  // strict upper/lower bounds on the real embeddings, for window bookkeeping
  double emb_max(MonoidIdx b) const;
  double emb_min(MonoidIdx b) const;

  MonoidIdx unit_orbit_rep(MonoidIdx b) const;
  bool is_orbit_rep(MonoidIdx b) const { return unit_orbit_rep(b) == b; }

  // all orbit representatives with 0 <= trace <= bound, sorted by
  // (trace, m, n); includes 0
  std::vector<MonoidIdx> enumerate_positive(i64 trace_bound) const;
  // all S-positive lattice points (not just reps) with trace <= bound
  std::vector<MonoidIdx> enumerate_lattice(i64 trace_bound) const;
  // the finite fiber { beta S-positive : trace(beta) = t }
  std::vector<MonoidIdx> trace_fiber(i64 t) const;
};

// deterministic ordering for map keys: (trace is not part of the key data,
// so order by coordinates)
struct MonoidIdxLess {
  bool operator()(const MonoidIdx& a, const MonoidIdx& b) const {
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  }
};

enum class SplitType { Split, Inert };

struct SplittingData {
  SplitType type = SplitType::Split;
  // heap-stable so UnramElem context pointers survive copies of this struct
  std::shared_ptr<const PadicCtx> ctxp;
  std::vector<UnramElem> wroot;  // sigma_i(w), i = 0..1
  std::vector<int> fdeg;         // inertia degree per prime above p (size h)
  const PadicCtx& ctx() const { return *ctxp; }
  int h() const { return (int)fdeg.size(); }
  int f_sigma(int /*sigma*/) const { return type == SplitType::Split ? 1 : 2; }
  // prime index a given embedding lies over
  int prime_of_sigma(int sigma) const { return type == SplitType::Split ? sigma : 0; }
};

// split iff disc is a nonzero square mod p; errors with RamifiedPrime if p | disc
SplittingData splitting_type(const RealQuadField& F, i64 p, int M);

// sigma_i(beta) = m + n * wroot[i] mod p^M
UnramElem embed_sigma(const RealQuadField& F, const SplittingData& S, MonoidIdx b, int sigma);

struct Uniformizers {
  std::vector<MonoidIdx> x;  // one per prime above p; product = p exactly
};

// split: totally positive generators of P_1, P_2 with product p, labeled so
// that sigma_i(x_i) = 0 mod p; inert: { p }
Uniformizers choose_uniformizers(const RealQuadField& F, const SplittingData& S, i64 p);

// v_{P_i}(beta) by repeated exact division by x_i (exact integer arithmetic)
int prime_valuation(const RealQuadField& F, const Uniformizers& U, MonoidIdx b, int i);

// Prime ideals of norm <= bound, for the synthetic Hecke factorization.
struct PrimeIdeal {
  i64 q = 0;        // rational prime below
  int tag = 0;      // 0 inert, 1/2 split pair, 3 ramified
  MonoidIdx gen;    // totally positive generator
  i64 norm = 0;
  int fdeg = 1;
};

struct PrimeIdealLess {
  bool operator()(const PrimeIdeal& a, const PrimeIdeal& b) const {
    if (a.q != b.q) return a.q < b.q;
    return a.tag < b.tag;
  }
};

std::vector<PrimeIdeal> prime_ideals_up_to(const RealQuadField& F, i64 norm_bound);

// factor the principal ideal (beta) over the given prime list; errors if a
// factor is missed (norm residue != 1 at the end)
std::vector<std::pair<int, int>> factor_ideal(const RealQuadField& F,
                                              const std::vector<PrimeIdeal>& primes,
                                              MonoidIdx beta);

}  // namespace hmf
