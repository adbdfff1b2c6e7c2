#include "hmf/hecke.hpp"

#include <cmath>

namespace hmf {

namespace {

i64 safe_floor_div_real(i64 T, double s) {
  i64 t = (i64)std::floor((double)T / s);
  while ((double)t * s > (double)T + 1e-9) --t;
  return std::max<i64>(t, 0);
}

i64 safe_floor_mul_real(i64 T, double s) {
  i64 t = (i64)std::floor((double)T * s);
  while ((double)t > (double)T * s + 1e-9) --t;
  return std::max<i64>(t, 0);
}

}  // namespace

QExp u_full(const QExp& g) {
  const HilbertCtx& hc = g.hctx();
  QExp r(&hc, g.trace_bound() / hc.p);
  for (const auto& [b, v] : g.coeffs())
    if (b.m % hc.p == 0 && b.n % hc.p == 0) {
      MonoidIdx q{b.m / hc.p, b.n / hc.p};
      if (r.in_window(q)) r.set(q, v);
    }
  return r;
}

QExp u_partial(const QExp& g, int i) {
  const HilbertCtx& hc = g.hctx();
  MonoidIdx x = hc.U.x[i];
  QExp r(&hc, safe_floor_div_real(g.trace_bound(), hc.F.emb_max(x)));
  for (const auto& [b, v] : g.coeffs()) {
    auto q = hc.F.div_exact(b, x);
    if (q && r.in_window(*q)) r.set(*q, v);
  }
  return r;
}

QExp v_full(const QExp& g) {
  const HilbertCtx& hc = g.hctx();
  QExp r(&hc, g.trace_bound() * hc.p);
  for (const auto& [b, v] : g.coeffs()) r.set(hc.F.mul_int(b, hc.p), v);
  return r;
}

QExp v_partial(const QExp& g, int i) {
  const HilbertCtx& hc = g.hctx();
  MonoidIdx x = hc.U.x[i];
  QExp r(&hc, safe_floor_mul_real(g.trace_bound(), hc.F.emb_min(x)));
  for (const auto& [b, v] : g.coeffs()) {
    MonoidIdx xb = hc.F.mul(b, x);
    if (r.in_window(xb)) r.set(xb, v);  // excess support beyond the ball is dropped
  }
  return r;
}

NocForm noc_u_full(const NocForm& h) {
  const HilbertCtx& hc = h.hctx();
  NocForm r(&hc, h.weight(), h.order_bound(), h.trace_bound() / hc.p);
  for (const auto& [d, q] : h.terms()) {
    UnramElem pw = UnramElem::from_int(hc.K(), hc.p).pow_i(d[0] + d[1]);
    r.set_component(d, u_full(q).scaled(pw));
  }
  return r;
}

NocForm noc_v_full(const NocForm& h) {
  const HilbertCtx& hc = h.hctx();
  NocForm r(&hc, h.weight(), h.order_bound(), h.trace_bound() * hc.p);
  for (const auto& [d, q] : h.terms()) {
    int k = d[0] + d[1];
    QExp divided(&hc, q.trace_bound());
    for (const auto& [b, v] : q.coeffs()) {
      if (v.val() < k) fail(ErrKind::Domain, "noc_v_full: component not divisible by p^degree");
      divided.set(b, v.div_by_p_pow(k));
    }
    r.set_component(d, v_full(divided));
  }
  return r;
}

QExp deplete(const QExp& g, const std::vector<int>& primes) {
  const HilbertCtx& hc = g.hctx();
  QExp r(&hc, g.trace_bound());
  for (const auto& [b, v] : g.coeffs()) {
    bool kill = false;
    for (int i : primes)
      if (prime_valuation(hc.F, hc.U, b, i) >= 1) kill = true;
    if (!kill) r.set(b, v);
  }
  return r;
}

bool is_depleted(const QExp& g, int prime_i) {
  const HilbertCtx& hc = g.hctx();
  for (const auto& [b, v] : g.coeffs())
    if (!v.is_zero() && prime_valuation(hc.F, hc.U, b, prime_i) >= 1) return false;
  return true;
}

bool is_depleted_all(const QExp& g) {
  for (int i = 0; i < (int)g.hctx().U.x.size(); ++i)
    if (!is_depleted(g, i)) return false;
  return true;
}

QExp p_stabilize(const QExp& g, const UnramElem& other_root, int prime_i) {
  return g - v_partial(g, prime_i).scaled(other_root);
}

UnramElem u_partial_norm_scalar(const HilbertCtx& hc, int i, const std::vector<i64>& v) {
  // (omega_i / x_i)_sigma = p / sigma(x_i) at sigma | P_i and 1 / sigma(x_i) elsewhere
  UnramElem acc = UnramElem::one(hc.K());
  for (int sigma = 0; sigma < 2; ++sigma) {
    UnramElem sx = embed_sigma(hc.F, hc.S, hc.U.x[i], sigma);
    bool over = (hc.S.type == SplitType::Inert) || sigma == i;
    UnramElem num = over ? UnramElem::from_int(hc.K(), hc.p) : UnramElem::one(hc.K());
    // p / sigma(x_i) is a unit exactly when sigma | P_i
    UnramElem ratio;
    if (over) {
      if (sx.val() != 1) fail(ErrKind::Domain, "uniformizer valuation mismatch");
      ratio = num.div_by_p_pow(1) * sx.div_by_p_pow(1).inv();
    } else {
      ratio = sx.inv();
    }
    acc *= ratio.pow_i(v[sigma]);
  }
  return acc;
}

// --- synthetic eigenforms ---------------------------------------------------

SyntheticBuilder::SyntheticBuilder(const HilbertCtx& hc, i64 norm_bound) : hc_(&hc) {
  i64 nb = std::max(norm_bound, hc.p * hc.p);  // ensure the p-primes are listed
  primes_ = prime_ideals_up_to(hc.F, nb);
  // replace the primes above p by the fixed uniformizers, labeled like U.x
  p_idx_.assign(hc.U.x.size(), -1);
  for (int j = 0; j < (int)primes_.size(); ++j) {
    if (primes_[j].q != hc.p) continue;
    if (hc.S.type == SplitType::Inert) {
      p_idx_[0] = j;
      primes_[j].gen = hc.U.x[0];
    } else {
      // match conjugate pair members to x_0 / x_1 by which P_i divides them
      for (int i = 0; i < 2; ++i) {
        if (p_idx_[i] >= 0) continue;
        if (prime_valuation(hc.F, hc.U, primes_[j].gen, i) >= 1) {
          p_idx_[i] = j;
          primes_[j].gen = hc.U.x[i];
          break;
        }
      }
    }
  }
  for (int idx : p_idx_)
    if (idx < 0) fail(ErrKind::InconsistentData, "prime above p missing from the table");
}

QExp SyntheticBuilder::eigenform(const EigenData& d, i64 trace_bound) const {
  const HilbertCtx& hc = *hc_;
  if ((int)d.p_roots.size() != (int)hc.U.x.size())
    fail(ErrKind::InconsistentData, "one root pair per prime above p expected");
  // consistency: alpha * beta = N(P)^{k-1} chi(P)
  for (size_t i = 0; i < d.p_roots.size(); ++i) {
    i64 np = (hc.S.type == SplitType::Inert) ? hc.p * hc.p : hc.p;
    UnramElem chi = UnramElem::one(hc.K());
    auto it = d.neben.find({hc.p, hc.S.type == SplitType::Inert ? 0 : (int)i + 1});
    if (it != d.neben.end()) chi = it->second;
    UnramElem want = UnramElem::from_int(hc.K(), np).pow_i(d.k - 1) * chi;
    if (!(d.p_roots[i].first * d.p_roots[i].second == want))
      fail(ErrKind::InconsistentData, "alpha*beta != N(P)^{k-1} chi(P)");
  }

  // per-prime coefficient a(Q) and chi(Q)
  auto prime_coeff = [&](int j) -> UnramElem {
    for (size_t i = 0; i < p_idx_.size(); ++i)
      if (p_idx_[i] == j) return d.p_roots[i].first + d.p_roots[i].second;
    auto it = d.seeds.find({primes_[j].q, primes_[j].tag});
    if (it == d.seeds.end()) fail(ErrKind::InconsistentData, "missing seed coefficient");
    return it->second;
  };
  auto prime_neben = [&](int j) -> UnramElem {
    auto it = d.neben.find({primes_[j].q, primes_[j].tag});
    if (it != d.neben.end()) return it->second;
    return UnramElem::one(hc.K());
  };

  // prime-power values by the multiplicative Hecke recursion
  std::vector<std::vector<UnramElem>> powers(primes_.size());
  auto power_coeff = [&](int j, int e) -> UnramElem {
    auto& tab = powers[j];
    if (tab.empty()) {
      tab.push_back(UnramElem::one(hc.K()));
      tab.push_back(prime_coeff(j));
    }
    UnramElem npk = UnramElem::from_int(hc.K(), primes_[j].norm).pow_i(d.k - 1) * prime_neben(j);
    while ((int)tab.size() <= e) {
      size_t r = tab.size() - 1;
      tab.push_back(tab[r] * tab[1] - tab[r - 1] * npk);
    }
    return tab[e];
  };

  QExp g(&hc, trace_bound);
  for (i64 t = 1; t <= trace_bound; ++t) {
    for (MonoidIdx b : hc.F.trace_fiber(t)) {
      auto fac = factor_ideal(hc.F, primes_, b);
      UnramElem a = UnramElem::one(hc.K());
      for (auto [j, e] : fac) a *= power_coeff(j, e);
      g.set(b, a);
    }
  }
  return g;  // a_0 = 0: cuspidal
}

EigenData random_eigen_data(const HilbertCtx& hc, i64 k, i64 norm_bound, Rng& rng) {
  EigenData d;
  d.k = k;
  for (size_t i = 0; i < hc.U.x.size(); ++i) {
    i64 np = (hc.S.type == SplitType::Inert) ? hc.p * hc.p : hc.p;
    UnramElem alpha = random_unit(hc.K(), rng);
    UnramElem beta = UnramElem::from_int(hc.K(), np).pow_i(k - 1) * alpha.inv();
    d.p_roots.push_back({alpha, beta});
  }
  auto table = prime_ideals_up_to(hc.F, norm_bound);
  for (const auto& pi : table) {
    if (pi.q == hc.p) continue;
    d.seeds[{pi.q, pi.tag}] = random_unit(hc.K(), rng);
  }
  return d;
}

// --- Q-side ------------------------------------------------------------------

EllipticEigenData random_elliptic_eigen_data(const PadicCtx& cx, i64 p, i64 k, i64 bound,
                                             Rng& rng) {
  EllipticEigenData d;
  d.k = k;
  d.chi_p = UnramElem::one(cx);
  d.alpha = random_unit(cx, rng);
  d.beta = UnramElem::from_int(cx, p).pow_i(k - 1) * d.chi_p * d.alpha.inv();
  for (i64 q = 2; q <= bound; ++q) {
    bool prime = q >= 2;
    for (i64 t = 2; t * t <= q; ++t)
      if (q % t == 0) prime = false;
    if (!prime || q == p) continue;
    d.seeds[q] = random_unit(cx, rng);
  }
  return d;
}

QLine elliptic_eigenform(const PadicCtx& cx, i64 p, const EllipticEigenData& d, i64 bound) {
  std::map<i64, std::vector<UnramElem>> powers;
  auto power_coeff = [&](i64 q, int e) -> UnramElem {
    auto& tab = powers[q];
    if (tab.empty()) {
      tab.push_back(UnramElem::one(cx));
      if (q == p)
        tab.push_back(d.alpha + d.beta);
      else {
        auto it = d.seeds.find(q);
        if (it == d.seeds.end()) fail(ErrKind::InconsistentData, "missing seed at q");
        tab.push_back(it->second);
      }
    }
    UnramElem chi = q == p ? d.chi_p : UnramElem::one(cx);
    auto itn = d.neben.find(q);
    if (itn != d.neben.end()) chi = itn->second;
    UnramElem qk = UnramElem::from_int(cx, q).pow_i(d.k - 1) * chi;
    while ((int)tab.size() <= e) {
      size_t r = tab.size() - 1;
      tab.push_back(tab[r] * tab[1] - tab[r - 1] * qk);
    }
    return tab[e];
  };
  QLine g(&cx, bound);
  for (i64 m = 1; m <= bound; ++m) {
    i64 rem = m;
    UnramElem a = UnramElem::one(cx);
    for (i64 q = 2; q * q <= rem; ++q) {
      if (rem % q) continue;
      int e = 0;
      while (rem % q == 0) rem /= q, ++e;
      a *= power_coeff(q, e);
    }
    if (rem > 1) a *= power_coeff(rem, 1);
    g.set(m, a);
  }
  return g;
}

QLine qline_stabilize(const QLine& f, const UnramElem& other_root, i64 p) {
  return f - qline_V(f, p).truncated(f.bound()).scaled(other_root);
}

}  // namespace hmf
