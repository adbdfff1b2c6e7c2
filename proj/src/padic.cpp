#include "hmf/padic.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>

namespace hmf {

using boost::multiprecision::uint256_t;

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(char('0' + int(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 u128_from_string(const std::string& s) {
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') fail(ErrKind::Config, "bad integer literal: " + s);
    v = v * 10 + u128(c - '0');
  }
  return v;
}

namespace {

bool is_prime_i64(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Irreducibility over F_p of a monic polynomial of degree f <= kMaxF,
// by exhaustive root search (f <= 3) plus a quadratic-factor scan for f = 4.
bool irreducible_mod_p(i64 p, const std::array<i64, kMaxF + 1>& mu, int f) {
  auto eval = [&](i64 x) {
    i64 acc = 0;
    for (int i = f; i >= 0; --i) acc = (acc * x + mu[i]) % p;
    return acc;
  };
  for (i64 x = 0; x < p; ++x)
    if (eval(x) == 0) return false;
  if (f < 4) return true;
  // degree 4: also exclude products of two irreducible quadratics
  for (i64 b = 0; b < p; ++b)
    for (i64 c = 0; c < p; ++c) {
      // divide mu by x^2+bx+c over F_p, check zero remainder
      i64 q2 = 1;
      i64 q1 = (mu[3] - b * q2 % p + p * p) % p;
      i64 q0 = ((mu[2] - c * q2 % p - b * q1 % p) % p + p * p) % p;
      i64 r1 = ((mu[1] - c * q1 % p - b * q0 % p) % p + p * p) % p;
      i64 r0 = ((mu[0] - c * q0 % p) % p + p * p) % p;
      if (r1 == 0 && r0 == 0) return false;
    }
  return true;
}

u128 mulmod(u128 a, u128 b, const PadicCtx& C) {
  if (C.fits64) {
    return (u128)((u128)(std::uint64_t)a * (std::uint64_t)b % (std::uint64_t)C.pM);
  }
  uint256_t t = uint256_t(a);
  t *= uint256_t(b);
  t %= uint256_t(C.pM);
  u128 lo = (u128)(t & uint256_t(~u128(0)));
  return lo;
}

}  // namespace

PadicCtx PadicCtx::make(i64 p, int f, int M) {
  if (p < 3 || !is_prime_i64(p))
    fail(ErrKind::Config, "p must be an odd prime >= 3, got " + std::to_string(p));
  if (f < 1 || f > kMaxF) fail(ErrKind::Config, "residue degree out of range");
  if (M < 4) fail(ErrKind::Config, "precision M must be >= 4");
  PadicCtx C;
  C.p = p;
  C.f = f;
  C.M = M;
  C.ppow.assign(M + 1, 1);
  for (int i = 1; i <= M; ++i) {
    if (C.ppow[i - 1] > (~u128(0)) / u128(p) / 16)
      fail(ErrKind::Config, "p^M too large for fixed 128-bit storage");
    C.ppow[i] = C.ppow[i - 1] * u128(p);
  }
  C.pM = C.ppow[M];
  C.fits64 = (C.pM <= u128(~std::uint64_t(0)));
  // lexicographically smallest monic irreducible of degree f over F_p:
  // scan coefficient tuples (c_{f-1}, ..., c_0) in ascending order.
  C.modulus.fill(0);
  C.modulus[f] = 1;
  if (f > 1) {
    bool found = false;
    std::array<i64, kMaxF + 1> mu{};
    mu[f] = 1;
    i64 total = 1;
    for (int i = 0; i < f; ++i) total *= p;
    for (i64 code = 0; code < total && !found; ++code) {
      i64 c = code;
      for (int i = 0; i < f; ++i) {  // c_0 varies fastest
        mu[i] = c % p;
        c /= p;
      }
      if (irreducible_mod_p(p, mu, f)) {
        C.modulus = mu;
        found = true;
      }
    }
    if (!found) fail(ErrKind::Config, "no irreducible modulus found");
  }
  return C;
}

u128 PadicCtx::residue_order() const {
  u128 q = 1;
  for (int i = 0; i < f; ++i) q *= u128(p);
  return q;
}

UnramElem UnramElem::zero(const PadicCtx& cx) { return UnramElem(&cx); }

UnramElem UnramElem::one(const PadicCtx& cx) { return from_int(cx, 1); }

UnramElem UnramElem::from_int(const PadicCtx& cx, i64 v) {
  UnramElem e(&cx);
  bool neg = v < 0;
  u128 av = neg ? u128(-(v + 1)) + 1 : u128(v);
  av %= cx.pM;
  e.a_[0] = neg && av != 0 ? cx.pM - av : av;
  return e;
}

UnramElem UnramElem::from_coords(const PadicCtx& cx, const std::vector<u128>& coords) {
  if ((int)coords.size() != cx.f) fail(ErrKind::Config, "coordinate count != f");
  UnramElem e(&cx);
  for (int i = 0; i < cx.f; ++i) e.a_[i] = coords[i] % cx.pM;
  return e;
}

UnramElem UnramElem::gen(const PadicCtx& cx) {
  if (cx.f < 2) fail(ErrKind::Domain, "gen() needs f >= 2");
  UnramElem e(&cx);
  e.a_[1] = 1;
  return e;
}

std::vector<u128> UnramElem::coords() const {
  std::vector<u128> v(cx_->f);
  for (int i = 0; i < cx_->f; ++i) v[i] = a_[i];
  return v;
}

bool UnramElem::is_zero() const {
  for (int i = 0; i < cx_->f; ++i)
    if (a_[i] != 0) return false;
  return true;
}

bool UnramElem::operator==(const UnramElem& o) const {
  for (int i = 0; i < cx_->f; ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

UnramElem UnramElem::operator-() const {
  UnramElem r(cx_);
  for (int i = 0; i < cx_->f; ++i) r.a_[i] = a_[i] == 0 ? 0 : cx_->pM - a_[i];
  return r;
}

UnramElem UnramElem::operator+(const UnramElem& o) const {
  UnramElem r(cx_);
  for (int i = 0; i < cx_->f; ++i) {
    u128 s = a_[i] + o.a_[i];
    r.a_[i] = s >= cx_->pM ? s - cx_->pM : s;
  }
  return r;
}

UnramElem UnramElem::operator-(const UnramElem& o) const {
  UnramElem r(cx_);
  for (int i = 0; i < cx_->f; ++i)
    r.a_[i] = a_[i] >= o.a_[i] ? a_[i] - o.a_[i] : cx_->pM - (o.a_[i] - a_[i]);
  return r;
}

UnramElem UnramElem::operator*(const UnramElem& o) const {
  const PadicCtx& C = *cx_;
  const int f = C.f;
  if (f == 1) {
    UnramElem r(cx_);
    r.a_[0] = mulmod(a_[0], o.a_[0], C);
    return r;
  }
  // schoolbook convolution then reduction by the monic modulus
  std::array<u128, 2 * kMaxF> conv{};
  for (int i = 0; i < f; ++i) {
    if (a_[i] == 0) continue;
    for (int j = 0; j < f; ++j) {
      if (o.a_[j] == 0) continue;
      u128 t = conv[i + j] + mulmod(a_[i], o.a_[j], C);
      conv[i + j] = t >= C.pM ? t - C.pM : t;
    }
  }
  for (int d = 2 * f - 2; d >= f; --d) {
    u128 top = conv[d];
    if (top == 0) continue;
    conv[d] = 0;
    // x^f = -(c_{f-1}x^{f-1} + ... + c_0)
    for (int i = 0; i < f; ++i) {
      i64 ci = C.modulus[i];
      if (ci == 0) continue;
      u128 sub = mulmod(top, u128(ci), C);
      u128& slot = conv[d - f + i];
      slot = slot >= sub ? slot - sub : C.pM - (sub - slot);
    }
  }
  UnramElem r(cx_);
  for (int i = 0; i < f; ++i) r.a_[i] = conv[i];
  return r;
}

UnramElem UnramElem::mul_int(i64 c) const { return *this * from_int(*cx_, c); }

int UnramElem::val() const {
  int best = cx_->M;
  for (int i = 0; i < cx_->f; ++i) {
    if (a_[i] == 0) continue;
    u128 c = a_[i];
    int v = 0;
    while (v < best && c % u128(cx_->p) == 0) c /= u128(cx_->p), ++v;
    best = std::min(best, v);
    if (best == 0) return 0;
  }
  return best;
}

UnramElem UnramElem::inv() const {
  if (!is_unit()) fail(ErrKind::Domain, "inverse of a non-unit");
  const PadicCtx& C = *cx_;
  // residue-field inverse by Fermat (x^{q-2} is the inverse mod p),
  // then Newton doubling lifts it to mod p^M
  UnramElem seed = UnramElem::one(C);
  {
    u128 e = C.residue_order() - 2;
    UnramElem base = *this;
    while (e > 0) {
      if (e & 1) seed *= base;
      base *= base;
      e >>= 1;
    }
  }
  UnramElem two = from_int(C, 2);
  UnramElem xk = seed;
  for (int it = 0; it < 2 * C.M + 4; ++it) {
    UnramElem next = xk * (two - (*this * xk));
    if (next == xk) break;
    xk = next;
  }
  return xk;
}

UnramElem UnramElem::pow_i(i64 e) const {
  if (e < 0) return inv().pow_i(-e);
  UnramElem acc = one(*cx_), base = *this;
  u128 ue = u128(e);
  while (ue > 0) {
    if (ue & 1) acc *= base;
    base *= base;
    ue >>= 1;
  }
  return acc;
}

UnramElem UnramElem::frobenius() const {
  const PadicCtx& C = *cx_;
  if (C.f == 1) return *this;
  // Frobenius sends the basis generator x to the Newton lift of x^p.
  UnramElem x = gen(C);
  UnramElem xp = x.pow_i(C.p);
  std::vector<UnramElem> mu(C.f + 1);
  for (int i = 0; i <= C.f; ++i) mu[i] = from_int(C, C.modulus[i]);
  UnramElem fx = hensel_root(mu, xp);
  UnramElem acc = zero(C), pw = one(C);
  for (int i = 0; i < C.f; ++i) {
    UnramElem ci(cx_);
    ci.a_[0] = a_[i];
    acc += ci * pw;
    pw *= fx;
  }
  return acc;
}

UnramElem UnramElem::div_by_p_pow(int k) const {
  if (k == 0) return *this;
  if (val() < k) fail(ErrKind::Domain, "div_by_p_pow: valuation below divisor");
  UnramElem r(cx_);
  u128 d = cx_->ppow[k];
  for (int i = 0; i < cx_->f; ++i) r.a_[i] = a_[i] / d;
  return r;
}

UnramElem UnramElem::to_ctx(const PadicCtx& cx2) const {
  if (cx2.p != cx_->p || cx2.f != cx_->f) fail(ErrKind::Config, "context shape mismatch");
  UnramElem r(&cx2);
  for (int i = 0; i < cx_->f; ++i) r.a_[i] = a_[i] % cx2.pM;
  return r;
}

std::string UnramElem::str() const {
  std::string s = "(";
  for (int i = 0; i < cx_->f; ++i) {
    if (i) s += ",";
    s += u128_to_string(a_[i]);
  }
  return s + ")";
}

// --- analytic kernel ----------------------------------------------------

UnramElem poly_eval(const std::vector<UnramElem>& poly, const UnramElem& x) {
  UnramElem acc = UnramElem::zero(x.ctx());
  for (int i = (int)poly.size() - 1; i >= 0; --i) acc = acc * x + poly[i];
  return acc;
}

namespace {

int guard_digits_for_series(const PadicCtx& C, int kmax) {
  int g = 0;
  i64 pk = C.p;
  while (pk <= kmax) {
    ++g;
    if (pk > kmax / C.p + 1) break;
    pk *= C.p;
  }
  return g + 2;
}

}  // namespace

UnramElem padic_log(const UnramElem& x0) {
  const PadicCtx& C0 = x0.ctx();
  UnramElem y0 = x0 - UnramElem::one(C0);
  if (y0.val() < 1) fail(ErrKind::Domain, "padic_log: x != 1 mod p");
  // tail bound: k - v_p(k) >= k - log_p(k), increasing in k, so summing to
  // the first kmax with kmax - floor(log_p kmax) >= M covers mod p^M
  int kmax = C0.M + 1;
  auto floor_logp = [&](int k) {
    int l = 0;
    i64 q = C0.p;
    while (q <= k) ++l, q *= C0.p;
    return l;
  };
  while (kmax - floor_logp(kmax) < C0.M) ++kmax;
  PadicCtx Cg = C0.with_precision(C0.M + guard_digits_for_series(C0, kmax));
  UnramElem y = y0.to_ctx(Cg);
  UnramElem acc = UnramElem::zero(Cg), pw = y;
  for (int k = 1; k <= kmax; ++k) {
    int v = (int)vp_int(Cg.p, k);
    UnramElem term = pw.div_by_p_pow(v);
    i64 unit = k;
    while (unit % Cg.p == 0) unit /= Cg.p;
    term = term * UnramElem::from_int(Cg, unit).inv();
    if (k % 2 == 0) term = -term;
    acc += term;
    pw *= y;
  }
  return acc.to_ctx(C0);
}

UnramElem padic_exp(const UnramElem& x0) {
  const PadicCtx& C0 = x0.ctx();
  if (!x0.is_zero() && x0.val() < 1) fail(ErrKind::Domain, "padic_exp: valuation < 1");
  // term x^k/k! has valuation >= k - (k-1)/(p-1)
  int kmax = 1;
  auto term_val = [&](int k) { return k - (i64)((k - 1) / (C0.p - 1)); };
  while (term_val(kmax) < C0.M) ++kmax;
  // guard: v_p(k!) <= (kmax-1)/(p-1)
  int guard = (kmax - 1) / ((int)C0.p - 1) + 2;
  PadicCtx Cg = C0.with_precision(C0.M + guard);
  UnramElem x = x0.to_ctx(Cg);
  UnramElem acc = UnramElem::one(Cg), pw = UnramElem::one(Cg);
  UnramElem fact_unit = UnramElem::one(Cg);
  int fact_pval = 0;
  for (int k = 1; k <= kmax; ++k) {
    pw *= x;
    i64 kk = k;
    while (kk % Cg.p == 0) kk /= Cg.p, ++fact_pval;
    fact_unit = fact_unit.mul_int(kk);
    UnramElem term = pw.div_by_p_pow(fact_pval);
    term = term * fact_unit.inv();
    acc += term;
  }
  return acc.to_ctx(C0);
}

UnramElem teichmuller(const UnramElem& x0) {
  const PadicCtx& C = x0.ctx();
  if (!x0.is_unit()) fail(ErrKind::Domain, "teichmuller: non-unit");
  UnramElem y = x0;
  for (int it = 0; it < C.M + 2; ++it) {
    UnramElem next = y;
    // y -> y^{p^f}, one digit of convergence per step
    for (int i = 0; i < C.f; ++i) next = next.pow_i(C.p);
    if (next == y) return y;
    y = next;
  }
  return y;
}

UnramElem one_unit_part(const UnramElem& x) {
  return x * teichmuller(x).inv();
}

UnramElem hensel_root(const std::vector<UnramElem>& poly, const UnramElem& seed) {
  const PadicCtx& C = seed.ctx();
  std::vector<UnramElem> dpoly;
  for (size_t i = 1; i < poly.size(); ++i) dpoly.push_back(poly[i].mul_int((i64)i));
  UnramElem fs = poly_eval(poly, seed);
  if (fs.val() < 1) fail(ErrKind::Domain, "hensel_root: seed is not a root mod p");
  UnramElem dfs = poly_eval(dpoly, seed);
  if (!dfs.is_unit()) fail(ErrKind::NonSimpleRoot, "hensel_root: derivative not a unit at seed");
  UnramElem x = seed;
  for (int it = 0; it < 2 * C.M + 4; ++it) {
    UnramElem fx = poly_eval(poly, x);
    if (fx.is_zero()) return x;
    UnramElem step = fx * poly_eval(dpoly, x).inv();
    x = x - step;
  }
  if (!poly_eval(poly, x).is_zero()) fail(ErrKind::NonSimpleRoot, "hensel_root: no convergence");
  return x;
}

Rational::Rational(i64 n, i64 d) : num(n), den(d) {
  if (den == 0) fail(ErrKind::Domain, "rational with zero denominator");
  if (den < 0) num = -num, den = -den;
  i64 a = num < 0 ? -num : num, b = den;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) num /= a, den /= a;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}

}  // namespace hmf
