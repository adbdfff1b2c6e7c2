#pragma once

// Fixed-precision arithmetic in Z_p and its unramified extension of degree f.
// Elements live mod p^M in the polynomial basis 1, x, ..., x^{f-1} of
// (Z/p^M)[x]/(mu) where mu is the lexicographically smallest monic
// irreducible of degree f over F_p, lifted with coefficients in {0,...,p-1}.

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmf {

using u128 = unsigned __int128;
using i64 = std::int64_t;

enum class ErrKind {
  Domain,
  NonSimpleRoot,
  RamifiedPrime,
  NoTotallyPositiveGenerator,
  TruncationOverflow,
  NotDepleted,
  ConvergenceBudget,
  SingularWeight,
  NotInSpan,
  IllConditioned,
  InconsistentData,
  IdentityViolation,
  Config,
};

struct Error : std::runtime_error {
  ErrKind kind;
  Error(ErrKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) { throw Error(k, msg); }

std::string u128_to_string(u128 v);
u128 u128_from_string(const std::string& s);

// Maximal residue degree the dense coordinate array supports. Desk scale
// only constructs f in {1,2}; the chart code never needs more.
inline constexpr int kMaxF = 4;

struct PadicCtx {
  i64 p = 0;
  int f = 1;
  int M = 0;
  std::array<i64, kMaxF + 1> modulus{};  // monic, entries in [0,p); modulus[f] = 1
  u128 pM = 0;
  bool fits64 = false;
  std::vector<u128> ppow;  // p^0 .. p^M

  static PadicCtx make(i64 p, int f, int M);
  PadicCtx with_precision(int M2) const { return make(p, f, M2); }
  bool same_shape(const PadicCtx& o) const { return p == o.p && f == o.f && M == o.M; }
  u128 residue_order() const;  // p^f
};

class UnramElem {
 public:
  UnramElem() = default;
  explicit UnramElem(const PadicCtx* cx) : cx_(cx) {}

  static UnramElem zero(const PadicCtx& cx);
  static UnramElem one(const PadicCtx& cx);
  static UnramElem from_int(const PadicCtx& cx, i64 v);
  static UnramElem from_coords(const PadicCtx& cx, const std::vector<u128>& coords);
  // x-power basis generator (requires f >= 2)
  static UnramElem gen(const PadicCtx& cx);

  const PadicCtx& ctx() const { return *cx_; }
  bool valid() const { return cx_ != nullptr; }
  u128 coord(int i) const { return a_[i]; }
  std::vector<u128> coords() const;

  bool is_zero() const;
  bool operator==(const UnramElem& o) const;
  bool operator!=(const UnramElem& o) const { return !(*this == o); }

  UnramElem operator-() const;
  UnramElem operator+(const UnramElem& o) const;
  UnramElem operator-(const UnramElem& o) const;
  UnramElem operator*(const UnramElem& o) const;
  UnramElem& operator+=(const UnramElem& o) { return *this = *this + o; }
  UnramElem& operator-=(const UnramElem& o) { return *this = *this - o; }
  UnramElem& operator*=(const UnramElem& o) { return *this = *this * o; }
  UnramElem mul_int(i64 c) const;

  // p-adic valuation, capped at M (val(0) = M).
  int val() const;
  bool is_unit() const { return val() == 0; }

  UnramElem inv() const;                    // units only
  UnramElem pow_i(i64 e) const;             // negative e needs a unit
  UnramElem frobenius() const;              // arithmetic Frobenius x -> x^p lift

  // Exact division by p^k; requires val() >= k. The result is certified
  // mod p^{M-k} only: the caller owns the digit-loss bookkeeping.
  UnramElem div_by_p_pow(int k) const;

  // Reinterpret in another context of the same (p,f): reduction for
  // M2 <= M, canonical-representative lift for M2 > M (only sound for
  // values that are exact, or feeding isometric series like log/exp).
  UnramElem to_ctx(const PadicCtx& cx2) const;

  std::string str() const;

 private:
  const PadicCtx* cx_ = nullptr;
  std::array<u128, kMaxF> a_{};
  friend UnramElem mul_impl(const UnramElem&, const UnramElem&);
};

// --- analytic kernel ---------------------------------------------------

// log(x) for x = 1 mod p, exact mod p^M (guard digits handled internally).
UnramElem padic_log(const UnramElem& x);
// exp(x) for val(x) >= 1, p >= 3; exact mod p^M.
UnramElem padic_exp(const UnramElem& x);
// Teichmuller lift: w = x mod p, w^{p^f} = w mod p^M.
UnramElem teichmuller(const UnramElem& x);
// 1-unit part <x> = x / teichmuller(x) for units.
UnramElem one_unit_part(const UnramElem& x);

// Monic-polynomial Newton lift. poly has UnramElem coefficients, low
// degree first; seed must be a simple root mod p.
UnramElem hensel_root(const std::vector<UnramElem>& poly, const UnramElem& seed);

UnramElem poly_eval(const std::vector<UnramElem>& poly, const UnramElem& x);

// Exact small rationals (for valuation bounds).
struct Rational {
  i64 num = 0;
  i64 den = 1;
  Rational() = default;
  Rational(i64 n, i64 d);
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
  double approx() const { return double(num) / double(den); }
};

inline i64 vp_int(i64 p, i64 n) {
  if (n == 0) return -1;
  if (n < 0) n = -n;
  i64 v = 0;
  while (n % p == 0) n /= p, ++v;
  return v;
}

}  // namespace hmf
