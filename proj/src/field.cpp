#include "hmf/field.hpp"

#include <algorithm>
#include <cmath>

namespace hmf {

namespace {

bool is_squarefree(i64 D) {
  for (i64 d = 2; d * d <= D; ++d)
    if (D % (d * d) == 0) return false;
  return true;
}

bool is_prime_i64(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

i64 isqrt_i64(i64 v) {
  if (v < 0) return -1;
  i64 r = (i64)std::sqrt((double)v);
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

MonoidIdx RealQuadField::mul(MonoidIdx a, MonoidIdx b) const {
  // w^2 = tr_w * w - nm_w
  return {a.m * b.m - nm_w * a.n * b.n, a.m * b.n + a.n * b.m + tr_w * a.n * b.n};
}

std::optional<MonoidIdx> RealQuadField::div_exact(MonoidIdx a, MonoidIdx b) const {
  i64 nb = norm(b);
  if (nb == 0) return std::nullopt;
  // a / b = a * conj(b) / N(b)
  MonoidIdx num = mul(a, conj(b));
  if (num.m % nb != 0 || num.n % nb != 0) return std::nullopt;
  return MonoidIdx{num.m / nb, num.n / nb};
}

bool RealQuadField::is_s_positive(MonoidIdx b) const {
  // embeddings (2m + n*tr_w +- n*sqrt(disc_w)) / 2 with sqrt(disc_w) = sqrt D
  // for w = sqrt D, and (2m+n +- n sqrt D)/2 for the half basis; in both
  // cases: a := 2m + n*tr_w, positivity <=> a >= |n| sqrt(D')
  i64 a = 2 * b.m + tr_w * b.n;
  i64 Dp = half_basis ? D : 4 * D;  // (n sqrt D')^2 scale matched to a
  // a + n*sqrt(Dp') pattern: embeddings are (a +- n sqrt(Dhat))/2 with
  // Dhat = D (half basis) or 4D (w = sqrt D, where a = 2m)
  if (a < 0) return false;
  return a * a >= Dp * b.n * b.n;
}

bool RealQuadField::is_tot_positive(MonoidIdx b) const {
  i64 a = 2 * b.m + tr_w * b.n;
  i64 Dp = half_basis ? D : 4 * D;
  if (a <= 0) return false;
  return a * a > Dp * b.n * b.n;
}

double RealQuadField::emb_max(MonoidIdx b) const {
  double s = half_basis ? std::sqrt((double)D) : 2.0 * std::sqrt((double)D);
  double a = double(2 * b.m + tr_w * b.n);
  return (a + std::abs((double)b.n) * s) / 2.0;
}

double RealQuadField::emb_min(MonoidIdx b) const {
  double s = half_basis ? std::sqrt((double)D) : 2.0 * std::sqrt((double)D);
  double a = double(2 * b.m + tr_w * b.n);
  return (a - std::abs((double)b.n) * s) / 2.0;
}

RealQuadField RealQuadField::make(i64 D) {
  if (D <= 1 || !is_squarefree(D)) fail(ErrKind::Config, "D must be squarefree > 1");
  RealQuadField F;
  F.D = D;
  F.half_basis = (D % 4 == 1);
  F.disc = F.half_basis ? D : 4 * D;
  F.tr_w = F.half_basis ? 1 : 0;
  F.nm_w = F.half_basis ? (1 - D) / 4 : -D;

  // fundamental unit: smallest n >= 1 with m^2 + mn tr - ... = +-1 solvable
  bool found = false;
  for (i64 n = 1; n <= 2000000 && !found; ++n) {
    // m^2 + tr_w*m*n + nm_w*n^2 = s, s = +-1
    for (i64 s : {-1, 1}) {
      i64 disc_q = F.tr_w * F.tr_w * n * n - 4 * (F.nm_w * n * n - s);
      i64 r = isqrt_i64(disc_q);
      if (r < 0 || r * r != disc_q) continue;
      for (i64 sign : {1, -1}) {
        i64 num = -F.tr_w * n + sign * r;
        if (num % 2 != 0) continue;
        i64 m = num / 2;
        MonoidIdx u{m, n};
        if (F.emb_max(u) > 1.0 && F.emb_min(u) != 0.0 && std::abs((double)F.norm(u)) == 1.0) {
          if (!found || F.emb_max(u) < F.emb_max(F.eps_fund)) {
            F.eps_fund = u;
            F.eps_norm = F.norm(u);
            found = true;
          }
        }
      }
    }
    if (found) break;
  }
  if (!found) fail(ErrKind::Config, "fundamental unit search failed");

  if (F.eps_norm != -1)
    fail(ErrKind::Config,
         "narrow class number is not 1: fundamental unit of Q(sqrt " + std::to_string(D) +
             ") has norm +1");
  F.eps_plus = F.mul(F.eps_fund, F.eps_fund);

  // wide class number 1 via the Minkowski bound: every non-inert prime
  // q <= sqrt(disc)/2 must have a principal prime above it (element of
  // norm +- q)
  i64 mink = (i64)std::floor(std::sqrt((double)F.disc) / 2.0);
  for (i64 q = 2; q <= mink; ++q) {
    if (!is_prime_i64(q)) continue;
    bool inert;
    if (q == 2) {
      inert = F.half_basis && (D % 8 == 5);
    } else if (F.disc % q == 0) {
      inert = false;
    } else {
      i64 r = ((F.disc % q) + q) % q;
      bool residue = false;
      for (i64 x = 0; x < q && !residue; ++x)
        if ((x * x) % q == r) residue = true;
      inert = !residue;
    }
    if (inert) continue;
    bool has_prime_of_norm_q = false;
    for (i64 n = -2 * q; n <= 2 * q && !has_prime_of_norm_q; ++n)
      for (i64 m = -4 * q; m <= 4 * q && !has_prime_of_norm_q; ++m)
        if (std::llabs(F.norm({m, n})) == q) has_prime_of_norm_q = true;
    if (!has_prime_of_norm_q)
      fail(ErrKind::Config, "class number of Q(sqrt " + std::to_string(D) + ") is not 1");
  }
  F.class_number = 1;
  return F;
}

MonoidIdx RealQuadField::unit_orbit_rep(MonoidIdx b) const {
  if (is_zero(b)) return b;
  if (!is_s_positive(b)) fail(ErrKind::Domain, "unit_orbit_rep: not S-positive");
  auto better = [&](MonoidIdx x, MonoidIdx y) {  // x strictly better than y
    i64 tx = trace(x), ty = trace(y);
    if (tx != ty) return tx < ty;
    if (x.m != y.m) return x.m < y.m;
    return x.n < y.n;
  };
  // trace is strictly convex along the orbit; walk downhill, then settle ties
  MonoidIdx cur = b;
  for (;;) {
    MonoidIdx up = mul(cur, eps_plus);
    auto dn_opt = div_exact(cur, eps_plus);
    MonoidIdx dn = *dn_opt;  // units divide exactly
    if (better(up, cur))
      cur = up;
    else if (better(dn, cur))
      cur = dn;
    else
      return cur;
  }
}

std::vector<MonoidIdx> RealQuadField::enumerate_lattice(i64 trace_bound) const {
  std::vector<MonoidIdx> out;
  for (i64 t = 0; t <= trace_bound; ++t) {
    auto fib = trace_fiber(t);
    out.insert(out.end(), fib.begin(), fib.end());
  }
  return out;
}

std::vector<MonoidIdx> RealQuadField::trace_fiber(i64 t) const {
  // 2m + tr_w n = t with a = t fixed; S-positive needs t^2 >= Dhat n^2
  std::vector<MonoidIdx> out;
  if (t < 0) return out;
  if (t == 0) {
    out.push_back({0, 0});
    return out;
  }
  i64 Dhat = half_basis ? D : 4 * D;
  i64 nmax = isqrt_i64(t * t / Dhat);
  while ((nmax + 1) * (nmax + 1) * Dhat <= t * t) ++nmax;
  while (nmax * nmax * Dhat > t * t) --nmax;
  for (i64 n = -nmax; n <= nmax; ++n) {
    i64 num = t - tr_w * n;
    if (num % 2 != 0) continue;
    out.push_back({num / 2, n});
  }
  return out;
}

std::vector<MonoidIdx> RealQuadField::enumerate_positive(i64 trace_bound) const {
  if (trace_bound < 0) fail(ErrKind::Domain, "negative trace bound");
  std::vector<MonoidIdx> out;
  for (i64 t = 0; t <= trace_bound; ++t)
    for (MonoidIdx b : trace_fiber(t))
      if (is_zero(b) || is_orbit_rep(b)) out.push_back(b);
  std::sort(out.begin(), out.end(), [&](MonoidIdx a, MonoidIdx b) {
    i64 ta = trace(a), tb = trace(b);
    if (ta != tb) return ta < tb;
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  });
  return out;
}

SplittingData splitting_type(const RealQuadField& F, i64 p, int M) {
  if (p >= 2 && F.disc % p == 0) fail(ErrKind::RamifiedPrime, "p divides the discriminant");
  if (p < 3) fail(ErrKind::Config, "p must be an odd prime");
  // minimal polynomial of w: x^2 - tr_w x + nm_w
  i64 rseed = -1;
  for (i64 x = 0; x < p; ++x) {
    if (((x * x - F.tr_w * x + F.nm_w) % p + p) % p == 0) {
      rseed = x;
      break;  // least nonnegative residue seed defines sigma_1
    }
  }
  SplittingData S;
  if (rseed >= 0) {
    S.type = SplitType::Split;
    S.ctxp = std::make_shared<const PadicCtx>(PadicCtx::make(p, 1, M));
    std::vector<UnramElem> mu = {UnramElem::from_int(S.ctx(), F.nm_w),
                                 UnramElem::from_int(S.ctx(), -F.tr_w),
                                 UnramElem::one(S.ctx())};
    UnramElem r1 = hensel_root(mu, UnramElem::from_int(S.ctx(), rseed));
    UnramElem r2 = UnramElem::from_int(S.ctx(), F.tr_w) - r1;
    S.wroot = {r1, r2};
    S.fdeg = {1, 1};
  } else {
    S.type = SplitType::Inert;
    S.ctxp = std::make_shared<const PadicCtx>(PadicCtx::make(p, 2, M));
    std::vector<UnramElem> mu = {UnramElem::from_int(S.ctx(), F.nm_w),
                                 UnramElem::from_int(S.ctx(), -F.tr_w),
                                 UnramElem::one(S.ctx())};
    // brute-force a residue-field root, then lift
    UnramElem root;
    bool got = false;
    for (i64 c1 = 0; c1 < p && !got; ++c1)
      for (i64 c0 = 0; c0 < p && !got; ++c0) {
        UnramElem cand = UnramElem::from_coords(S.ctx(), {u128(c0), u128(c1)});
        if (poly_eval(mu, cand).val() >= 1) {
          root = hensel_root(mu, cand);
          got = true;
        }
      }
    if (!got) fail(ErrKind::Config, "no residue root in the quadratic extension");
    UnramElem r2 = UnramElem::from_int(S.ctx(), F.tr_w) - root;
    S.wroot = {root, r2};
    S.fdeg = {2};
  }
  return S;
}

UnramElem embed_sigma(const RealQuadField& F, const SplittingData& S, MonoidIdx b, int sigma) {
  (void)F;
  return UnramElem::from_int(S.ctx(), b.m) + S.wroot[sigma].mul_int(b.n);
}

Uniformizers choose_uniformizers(const RealQuadField& F, const SplittingData& S, i64 p) {
  Uniformizers U;
  if (S.type == SplitType::Inert) {
    U.x = {MonoidIdx{p, 0}};
    return U;
  }
  // find an element of norm +- p, normalize to a totally positive generator
  MonoidIdx cand{0, 0};
  bool got = false;
  for (i64 n = 0; n <= 4 * p && !got; ++n)
    for (i64 m = -4 * p; m <= 4 * p && !got; ++m) {
      MonoidIdx b{m, n};
      i64 nb = F.norm(b);
      if (nb == p || nb == -p) {
        cand = b;
        got = true;
      }
    }
  if (!got) fail(ErrKind::NoTotallyPositiveGenerator, "no element of norm p found");
  if (F.norm(cand) == -p) cand = F.mul(cand, F.eps_fund);  // norm -1 unit fixes the sign
  if (F.emb_min(cand) < 0) cand = F.mul_int(cand, -1);
  if (!F.is_tot_positive(cand))
    fail(ErrKind::NoTotallyPositiveGenerator, "could not adjust generator to be totally positive");
  // keep the representative with balanced embeddings (orbit rep)
  cand = F.unit_orbit_rep(cand);
  MonoidIdx other = *F.div_exact({p, 0}, cand);
  // label x_i so that sigma_i(x_i) = 0 mod p
  UnramElem e0 = embed_sigma(F, S, cand, 0);
  MonoidIdx x0 = (e0.val() >= 1) ? cand : other;
  MonoidIdx x1 = (e0.val() >= 1) ? other : cand;
  if (embed_sigma(F, S, x0, 0).val() < 1 || embed_sigma(F, S, x1, 1).val() < 1)
    fail(ErrKind::NoTotallyPositiveGenerator, "uniformizer labeling failed");
  U.x = {x0, x1};
  return U;
}

int prime_valuation(const RealQuadField& F, const Uniformizers& U, MonoidIdx b, int i) {
  if (F.is_zero(b)) return 1 << 20;
  int v = 0;
  MonoidIdx cur = b;
  for (;;) {
    auto nxt = F.div_exact(cur, U.x[i]);
    if (!nxt) return v;
    cur = *nxt;
    ++v;
  }
}

std::vector<PrimeIdeal> prime_ideals_up_to(const RealQuadField& F, i64 norm_bound) {
  std::vector<PrimeIdeal> out;
  for (i64 q = 2; q <= norm_bound; ++q) {
    if (!is_prime_i64(q)) continue;
    auto find_gen = [&](i64 target_norm) -> std::optional<MonoidIdx> {
      i64 bnd = isqrt_i64(target_norm) + 2;
      double s = std::sqrt((double)F.D);
      i64 nmax = (i64)(2.0 * bnd / (F.half_basis ? (s / 2.0) : s)) + 2;
      for (i64 n = 0; n <= nmax; ++n)
        for (i64 m = -(i64)(2.5 * bnd + 2 * n * s); m <= (i64)(2.5 * bnd + 2 * n * s); ++m) {
          MonoidIdx b{m, n};
          if (std::llabs(F.norm(b)) != target_norm) continue;
          MonoidIdx g = b;
          if (F.norm(g) < 0) g = F.mul(g, F.eps_fund);
          if (F.emb_min(g) < 0) g = F.mul_int(g, -1);
          if (!F.is_tot_positive(g)) continue;
          return F.unit_orbit_rep(g);
        }
      return std::nullopt;
    };
    if (F.disc % q == 0) {  // ramified
      auto g = find_gen(q);
      if (!g) fail(ErrKind::Config, "no generator for ramified prime");
      out.push_back({q, 3, *g, q, 1});
      continue;
    }
    // split or inert via quadratic residue of disc mod q
    bool residue = false;
    if (q == 2) {
      residue = F.half_basis && (F.D % 8 == 1);
    } else {
      i64 r = ((F.disc % q) + q) % q;
      for (i64 x = 0; x < q && !residue; ++x)
        if ((x * x) % q == r) residue = true;
    }
    if (!residue) {
      if (q * q <= norm_bound) out.push_back({q, 0, MonoidIdx{q, 0}, q * q, 2});
      continue;
    }
    auto g = find_gen(q);
    if (!g) fail(ErrKind::Config, "no generator for split prime " + std::to_string(q));
    MonoidIdx g2 = F.unit_orbit_rep(*F.div_exact({q, 0}, *g));
    out.push_back({q, 1, *g, q, 1});
    out.push_back({q, 2, g2, q, 1});
  }
  return out;
}

std::vector<std::pair<int, int>> factor_ideal(const RealQuadField& F,
                                              const std::vector<PrimeIdeal>& primes,
                                              MonoidIdx beta) {
  std::vector<std::pair<int, int>> out;
  MonoidIdx cur = beta;
  for (int i = 0; i < (int)primes.size(); ++i) {
    int e = 0;
    for (;;) {
      auto nxt = F.div_exact(cur, primes[i].gen);
      if (!nxt) break;
      cur = *nxt;
      ++e;
    }
    if (e > 0) out.push_back({i, e});
  }
  if (std::llabs(F.norm(cur)) != 1)
    fail(ErrKind::InconsistentData,
         "ideal factorization incomplete: residual norm " + std::to_string(F.norm(cur)));
  return out;
}

}  // namespace hmf
