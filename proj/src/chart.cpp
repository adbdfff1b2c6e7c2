#include "hmf/chart.hpp"

namespace hmf {

UnramElem ChartPoly::get(ChartKey k) const {
  auto it = c_.find(k);
  if (it == c_.end()) return UnramElem::zero(*cx_);
  return it->second;
}

void ChartPoly::add_to(ChartKey k, const UnramElem& v) {
  if (v.is_zero()) return;
  for (int i = 0; i < g_; ++i)
    if (k[i] > dZ_ || k[2 + i] > dW_) return;  // re-truncation
  auto it = c_.find(k);
  if (it == c_.end())
    c_[k] = v;
  else {
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
}

void ChartPoly::set(ChartKey k, const UnramElem& v) {
  c_.erase(k);
  add_to(k, v);
}

ChartPoly ChartPoly::operator+(const ChartPoly& o) const {
  ChartPoly r = *this;
  for (const auto& [k, v] : o.c_) r.add_to(k, v);
  return r;
}

ChartPoly ChartPoly::operator-(const ChartPoly& o) const {
  ChartPoly r = *this;
  for (const auto& [k, v] : o.c_) r.add_to(k, -v);
  return r;
}

ChartPoly ChartPoly::scaled(const UnramElem& s) const {
  ChartPoly r(cx_, g_, dZ_, dW_);
  for (const auto& [k, v] : c_) {
    UnramElem t = v * s;
    if (!t.is_zero()) r.c_[k] = t;
  }
  return r;
}

bool ChartPoly::is_zero() const { return c_.empty(); }

int ChartPoly::min_val() const {
  int mv = cx_->M;
  for (const auto& [k, v] : c_) mv = std::min(mv, v.val());
  return mv;
}

ChartPoly ChartPoly::one(const PadicCtx& cx, int g, int dZ, int dW) {
  ChartPoly r(&cx, g, dZ, dW);
  r.set({0, 0, 0, 0}, UnramElem::one(cx));
  return r;
}

ChartPoly chart_mul(const ChartPoly& a, const ChartPoly& b) {
  ChartPoly r(&a.ctx(), a.vars(), std::min(a.dz(), b.dz()), std::min(a.dw(), b.dw()));
  for (const auto& [ka, va] : a.coeffs())
    for (const auto& [kb, vb] : b.coeffs()) {
      ChartKey k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]};
      r.add_to(k, va * vb);
    }
  return r;
}

int agreement_valuation(const ChartPoly& a, const ChartPoly& b) { return (a - b).min_val(); }

namespace {

UnramElem times_p_pow(const UnramElem& x, int k) {
  UnramElem r = x;
  for (int i = 0; i < k; ++i) r = r.mul_int(r.ctx().p);
  return r;
}

}  // namespace

UnramElem TorusUnit::lambda() const {
  return UnramElem::one(c.ctx()) + times_p_pow(c, n);
}

TorusUnit torus_mul(const TorusUnit& a, const TorusUnit& b) {
  if (a.n != b.n) fail(ErrKind::Domain, "torus level mismatch");
  // (1+p^n a)(1+p^n b) = 1 + p^n (a + b + p^n a b)
  TorusUnit r;
  r.n = a.n;
  r.c = a.c + b.c + times_p_pow(a.c * b.c, a.n);
  return r;
}

TorusUnit torus_inv(const TorusUnit& a) {
  TorusUnit r;
  r.n = a.n;
  UnramElem lam = UnramElem::one(a.c.ctx()) + times_p_pow(a.c, a.n);
  r.c = -a.c * lam.inv();
  return r;
}

ChartPoly torus_act(const std::vector<TorusUnit>& lam, const ChartPoly& f) {
  const PadicCtx& cx = f.ctx();
  int g = f.vars();
  if ((int)lam.size() != g) fail(ErrKind::Domain, "one 1-unit per variable expected");
  std::vector<UnramElem> lv, cv;
  for (const auto& l : lam) {
    cv.push_back(l.c);
    lv.push_back(UnramElem::one(cx) + times_p_pow(l.c, l.n));
  }
  // precompute binomial tables up to dZ
  int dZ = f.dz();
  std::vector<std::vector<UnramElem>> binom(dZ + 1);
  for (int a = 0; a <= dZ; ++a) {
    binom[a].resize(a + 1);
    for (int j = 0; j <= a; ++j) {
      if (j == 0 || j == a)
        binom[a][j] = UnramElem::one(cx);
      else
        binom[a][j] = binom[a - 1][j - 1] + binom[a - 1][j];
    }
  }
  ChartPoly out(&cx, g, f.dz(), f.dw());
  for (const auto& [k, v] : f.coeffs()) {
    // W-part scales by prod lambda^{w-deg}
    UnramElem base = v;
    for (int s = 0; s < g; ++s) base *= lv[s].pow_i(k[2 + s]);
    // Z-part: prod (c_s + lambda_s Z_s)^{z-deg}
    // expand variable by variable
    std::vector<std::pair<ChartKey, UnramElem>> acc = {{ChartKey{0, 0, k[2], k[3]}, base}};
    for (int s = 0; s < g; ++s) {
      int a = k[s];
      if (a == 0) continue;
      std::vector<std::pair<ChartKey, UnramElem>> next;
      // powers c^{a-j} lambda^j
      std::vector<UnramElem> cpow(a + 1), lpow(a + 1);
      cpow[0] = UnramElem::one(cx);
      lpow[0] = UnramElem::one(cx);
      for (int j = 1; j <= a; ++j) {
        cpow[j] = cpow[j - 1] * cv[s];
        lpow[j] = lpow[j - 1] * lv[s];
      }
      for (const auto& [kk, vv] : acc)
        for (int j = 0; j <= a; ++j) {
          ChartKey k2 = kk;
          k2[s] += j;
          next.push_back({k2, vv * binom[a][j] * cpow[a - j] * lpow[j]});
        }
      acc = std::move(next);
    }
    for (const auto& [kk, vv] : acc) out.add_to(kk, vv);
  }
  return out;
}

UnramElem chart_char_value(const ChartWeight& k, const std::vector<TorusUnit>& lam) {
  const PadicCtx& cx = lam[0].c.ctx();
  UnramElem acc = UnramElem::one(cx);
  for (size_t s = 0; s < lam.size(); ++s) {
    UnramElem l = UnramElem::one(cx) + times_p_pow(lam[s].c, lam[s].n);
    acc *= padic_exp(k.u[s] * padic_log(l));
  }
  return acc;
}

namespace {

// one-variable truncated series in Z_s embedded into the chart
ChartPoly embed_series(const PadicCtx& cx, int g, int dZ, int dW, int s,
                       const std::vector<UnramElem>& coeffs) {
  ChartPoly r(&cx, g, dZ, dW);
  for (int j = 0; j < (int)coeffs.size() && j <= dZ; ++j) {
    ChartKey k{0, 0, 0, 0};
    k[s] = j;
    r.add_to(k, coeffs[j]);
  }
  return r;
}

// exp(u * log(1+p^n Z)) as a 1-variable truncated series
std::vector<UnramElem> char_gen_series(const PadicCtx& cx, const UnramElem& u, int n, int dZ) {
  // L = log(1+p^n Z) = sum (-1)^{j-1} p^{nj} Z^j / j
  std::vector<UnramElem> L(dZ + 1, UnramElem::zero(cx));
  for (int j = 1; j <= dZ; ++j) {
    int v = (int)vp_int(cx.p, j);
    i64 ju = j;
    while (ju % cx.p == 0) ju /= cx.p;
    // coefficient (+-) p^{nj - v} / ju
    UnramElem c = UnramElem::one(cx);
    for (int t = 0; t < n * j - v; ++t) c = c.mul_int(cx.p);
    c = c * UnramElem::from_int(cx, ju).inv();
    if (j % 2 == 0) c = -c;
    L[j] = c;
  }
  std::vector<UnramElem> uL(dZ + 1, UnramElem::zero(cx));
  for (int j = 0; j <= dZ; ++j) uL[j] = L[j] * u;
  // E = exp(uL): accumulate powers (uL)^k / k!; (uL)^k starts at Z^k so
  // k beyond dZ contributes nothing
  std::vector<UnramElem> E(dZ + 1, UnramElem::zero(cx));
  E[0] = UnramElem::one(cx);
  std::vector<UnramElem> pw = uL;  // (uL)^k, k = 1..
  int kmax = dZ;
  UnramElem fact_unit = UnramElem::one(cx);
  int fact_pval = 0;
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) {
      // pw = pw * uL (truncated convolution)
      std::vector<UnramElem> nx(dZ + 1, UnramElem::zero(cx));
      for (int a = 0; a <= dZ; ++a) {
        if (pw[a].is_zero()) continue;
        for (int b = 1; a + b <= dZ; ++b) nx[a + b] += pw[a] * uL[b];
      }
      pw = std::move(nx);
    }
    i64 kk = k;
    while (kk % cx.p == 0) kk /= cx.p, ++fact_pval;
    fact_unit = fact_unit.mul_int(kk);
    UnramElem finv = fact_unit.inv();
    for (int j = 0; j <= dZ; ++j) {
      if (pw[j].is_zero()) continue;
      if (pw[j].val() < fact_pval) fail(ErrKind::Domain, "exp series division not exact");
      E[j] += pw[j].div_by_p_pow(fact_pval) * finv;
    }
  }
  return E;
}

// (1+p^n Z)^{-1} truncated
std::vector<UnramElem> inv_one_unit_series(const PadicCtx& cx, int n, int dZ) {
  std::vector<UnramElem> r(dZ + 1, UnramElem::zero(cx));
  UnramElem c = UnramElem::one(cx);
  for (int j = 0; j <= dZ; ++j) {
    r[j] = c;
    UnramElem next = c;
    for (int t = 0; t < n; ++t) next = next.mul_int(cx.p);
    c = -next;
  }
  return r;
}

}  // namespace

ChartPoly chart_char_generator(const PadicCtx& cx, const ChartWeight& k, int g, int dZ, int dW) {
  ChartPoly acc = ChartPoly::one(cx, g, dZ, dW);
  for (int s = 0; s < g; ++s) {
    ChartPoly e = embed_series(cx, g, dZ, dW, s, char_gen_series(cx, k.u[s], k.n, dZ));
    acc = chart_mul(acc, e);
  }
  return acc;
}

ChartPoly chart_v_basis(const PadicCtx& cx, const ChartWeight& k, int g,
                        const std::array<int, 2>& ideg, int dZ, int dW) {
  ChartPoly acc = chart_char_generator(cx, k, g, dZ, dW);
  for (int s = 0; s < g; ++s) {
    if (ideg[s] == 0) continue;
    if (ideg[s] > dW) fail(ErrKind::TruncationOverflow, "V-degree beyond dW");
    auto inv = inv_one_unit_series(cx, k.n, dZ);
    ChartPoly invp = embed_series(cx, g, dZ, dW, s, inv);
    for (int t = 0; t < ideg[s]; ++t) {
      ChartPoly w(&cx, g, dZ, dW);
      ChartKey kk{0, 0, 0, 0};
      kk[2 + s] = 1;
      w.set(kk, UnramElem::one(cx));
      acc = chart_mul(acc, chart_mul(w, invp));
    }
  }
  return acc;
}

bool isotypic_check(const ChartPoly& f, const ChartWeight& k, int target_prec) {
  const PadicCtx& cx = f.ctx();
  std::vector<TorusUnit> gamma;
  for (int s = 0; s < f.vars(); ++s) gamma.push_back(TorusUnit{k.n, UnramElem::one(cx)});
  ChartPoly lhs = torus_act(gamma, f);
  ChartPoly rhs = f.scaled(chart_char_value(k, gamma));
  return agreement_valuation(lhs, rhs) >= target_prec;
}

SpanReport isotypic_span_check(const PadicCtx& cx, const ChartWeight& k, int g, int d, int dZ,
                               int dW, int target_prec) {
  SpanReport rep;
  rep.all_isotypic = true;
  rep.independent_mod_p = true;
  for (int total = 0; total <= d; ++total)
    for (int i0 = 0; i0 <= total; ++i0) {
      int i1 = total - i0;
      if (g == 1 && i1 != 0) continue;
      std::array<int, 2> ideg{i0, i1};
      ChartPoly b = chart_v_basis(cx, k, g, ideg, dZ, dW);
      ++rep.dimension;
      if (!isotypic_check(b, k, target_prec)) rep.all_isotypic = false;
      // mod-p triangularity: V^i k(1+p^nZ) = W^i mod p
      ChartPoly wmono(&cx, g, dZ, dW);
      ChartKey kk{0, 0, i0, i1};
      wmono.set(kk, UnramElem::one(cx));
      if (agreement_valuation(b, wmono) < 1) rep.independent_mod_p = false;
    }
  return rep;
}

}  // namespace hmf
