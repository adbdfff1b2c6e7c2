#include "hmf/selftest.hpp"

#include "hmf/chart.hpp"

#include <ostream>
#include <sstream>

namespace hmf {

void AcceptanceReport::add(int id, const std::string& name, bool pass,
                           const std::string& detail) {
  results.push_back({id, name, pass, detail});
  if (!pass) all_pass = false;
}

namespace {

QExp random_qexp(const HilbertCtx& hc, i64 T, Rng& rng, bool depleted) {
  QExp g(&hc, T);
  for (i64 t = 1; t <= T; ++t)
    for (MonoidIdx b : hc.F.trace_fiber(t)) {
      bool div = false;
      for (int i = 0; i < (int)hc.U.x.size(); ++i)
        if (prime_valuation(hc.F, hc.U, b, i) >= 1) div = true;
      if (depleted && div) continue;
      g.set(b, random_element(hc.K(), rng));
    }
  return g;
}

NocForm random_noc(const HilbertCtx& hc, const Weight& w, int order, i64 T, Rng& rng) {
  NocForm h(&hc, w, order, T);
  for (int d0 = 0; d0 <= order; ++d0)
    for (int d1 = 0; d0 + d1 <= order; ++d1)
      h.set_component({d0, d1}, random_qexp(hc, T, rng, false));
  return h;
}

// ---- criterion 1: iteration vs direct --------------------------------------

bool criterion_iteration(const AcceptanceConfig& cfg, const HilbertCtx& hc, Rng& rng,
                         std::string& detail) {
  const int target = 8;
  std::vector<i64> weights = cfg.quick ? std::vector<i64>{2, 5} : std::vector<i64>{2, 3, 4, 5, 6};
  std::vector<i64> ts = cfg.quick ? std::vector<i64>{1, 2} : std::vector<i64>{1, 2, 3};
  i64 T = cfg.trace_bound;
  i64 norm_bound = (T / 2 + 2) * (T / 2 + 2);
  SyntheticBuilder builder(hc, norm_bound);
  int worst = hc.K().M;
  for (i64 u : weights) {
    EigenData ed = random_eigen_data(hc, u, norm_bound, rng);
    QExp g0 = builder.eigenform(ed, T);
    std::vector<int> all_primes;
    for (int i = 0; i < (int)hc.U.x.size(); ++i) all_primes.push_back(i);
    QExp gdep = deplete(g0, all_primes);
    Weight w = classical_weight(hc.S, {u, u});
    NocForm g = noc_from_modular(gdep, w);
    for (i64 t : ts) {
      // direct: t-fold Eq. (12) per embedding
      NocForm direct = nabla_iterated(nabla_iterated(g, 0, (int)t), 1, (int)t);
      // series: v_sigma = t
      int mmax = default_m_max(hc.p, target);
      std::vector<IterationPlan> plans = {
          {0, UnramElem::from_int(hc.K(), t), mmax, target},
          {1, UnramElem::from_int(hc.K(), t), mmax, target}};
      int cert = 0;
      NocForm series = nabla_s(g, plans, &cert);
      // compare every coefficient and every V-degree
      int agree = hc.K().M;
      NocForm diff = series - direct;
      for (const auto& [d, q] : diff.terms()) agree = std::min(agree, q.min_val());
      worst = std::min(worst, agree);
      if (agree < target) {
        detail = "p=" + std::to_string(hc.p) + " u=" + std::to_string(u) +
                 " t=" + std::to_string(t) + " agreement " + std::to_string(agree);
        return false;
      }
    }
  }
  detail = "p=" + std::to_string(hc.p) + " worst agreement " + std::to_string(worst) +
           " (target " + std::to_string(target) + ")";
  return true;
}

// ---- criterion 2: depletion congruence --------------------------------------

bool criterion_depletion_congruence(const AcceptanceConfig& cfg, const HilbertCtx& hc, Rng& rng,
                                    std::string& detail) {
  int draws = cfg.quick ? 20 : 100;  // per splitting type; two types = 200 total
  i64 T = 14;
  Weight w = classical_weight(hc.S, {3, 2});
  int P1 = 1;
  for (int i = 0; i < hc.S.f_sigma(0); ++i) P1 *= (int)hc.p;
  for (int d = 0; d < draws; ++d) {
    QExp g0 = random_qexp(hc, T, rng, true);
    NocForm g = noc_from_modular(g0, w);
    NocForm up = nabla_iterated(g, 0, P1 - 1);
    // collapse of (nabla^{p^f-1} - id)(g): componentwise difference
    NocForm diff = up - g;
    if (diff.min_val() < 1) {
      detail = "depleted draw " + std::to_string(d) + " violated the congruence";
      return false;
    }
  }
  // negative control: a non-depleted input violates it
  QExp bad(&hc, 14);
  MonoidIdx pb = hc.F.mul_int(hc.U.x[0], 1);
  if (hc.S.type == SplitType::Split) pb = hc.F.mul(hc.U.x[0], hc.U.x[1]);
  bad.set(pb, UnramElem::one(hc.K()));
  NocForm nb = noc_from_modular(bad, w);
  NocForm nup = nabla_iterated(nb, 0, P1 - 1);
  if ((nup - nb).min_val() >= 1) {
    detail = "negative control passed the congruence";
    return false;
  }
  detail = std::to_string(draws) + " depleted draws >= p^1, negative control caught";
  return true;
}

// ---- criterion 3: commutation ------------------------------------------------

bool criterion_commutation(const AcceptanceConfig& cfg, const HilbertCtx& hc, Rng& rng,
                           std::string& detail) {
  int draws = cfg.quick ? 10 : 50;  // per splitting type; two types = 100 total
  i64 T = 12;
  for (int d = 0; d < draws; ++d) {
    std::vector<u128> dummy;
    Weight w;
    w.u = {random_element(hc.K(), rng), random_element(hc.K(), rng)};
    w.chi = std::vector<i64>(hc.S.h(), 0);
    w.n = 1;
    NocForm h = random_noc(hc, w, 2, T, rng);
    NocForm ab = nabla_sigma(nabla_sigma(h, 0), 1);
    NocForm ba = nabla_sigma(nabla_sigma(h, 1), 0);
    if (agreement_valuation(ab, ba) < hc.K().M) {
      detail = "draw " + std::to_string(d) + " failed to commute exactly";
      return false;
    }
  }
  detail = std::to_string(draws) + " random forms commute exactly mod p^M";
  return true;
}

// ---- criterion 4: closed-form powers ------------------------------------------

bool criterion_closed_powers(const AcceptanceConfig& cfg, const HilbertCtx& hc, Rng& rng,
                             std::string& detail) {
  int draws = cfg.quick ? 4 : 12;
  i64 T = 12;
  for (int d = 0; d < draws; ++d) {
    Weight w;
    w.u = {random_element(hc.K(), rng), random_element(hc.K(), rng)};
    w.chi = std::vector<i64>(hc.S.h(), 0);
    w.n = 1;
    QExp g = random_qexp(hc, T, rng, false);
    for (int N = 0; N <= 5; ++N) {
      NocForm closed = nabla_power_closed(g, N, 0, w);
      NocForm iter = nabla_iterated(noc_from_modular(g, w), 0, N);
      if (agreement_valuation(closed, iter) < hc.K().M) {
        detail = "N=" + std::to_string(N) + " draw " + std::to_string(d) + " mismatch";
        return false;
      }
    }
  }
  detail = std::to_string(draws) + " draws, N <= 5 exact";
  return true;
}

// ---- criterion 5: U/V/depletion algebra ---------------------------------------

bool criterion_uv_algebra(const AcceptanceConfig& cfg, const HilbertCtx& hc, Rng& rng,
                          std::string& detail) {
  (void)cfg;
  i64 T = 40;
  QExp g = random_qexp(hc, T, rng, false);
  // U V = id on the supported range
  if (agreement_valuation(u_full(v_full(g)), g) < hc.K().M) {
    detail = "U V != id";
    return false;
  }
  // partial operators: U_{P_i} V_{P_i} = id, prod U_{P_i} = U
  if (hc.S.type == SplitType::Split) {
    for (int i = 0; i < 2; ++i) {
      QExp uv = u_partial(v_partial(g, i), i);
      QExp tr = g.truncated(uv.trace_bound());
      if (agreement_valuation(uv, tr) < hc.K().M) {
        detail = "partial U V != id at prime " + std::to_string(i);
        return false;
      }
    }
    QExp via_partial = u_partial(u_partial(g, 0), 1);
    QExp full = u_full(g).truncated(via_partial.trace_bound());
    if (agreement_valuation(via_partial, full.truncated(via_partial.trace_bound())) < hc.K().M) {
      detail = "prod U_partial != U_full";
      return false;
    }
    // partial operators at distinct primes commute
    QExp u01 = u_partial(u_partial(g, 0), 1);
    QExp u10 = u_partial(u_partial(g, 1), 0);
    i64 B = std::min(u01.trace_bound(), u10.trace_bound());
    if (agreement_valuation(u01.truncated(B), u10.truncated(B)) < hc.K().M) {
      detail = "partial operators do not commute";
      return false;
    }
  }
  // depletion: support characterization, idempotence, U kills it
  std::vector<int> all_primes;
  for (int i = 0; i < (int)hc.U.x.size(); ++i) all_primes.push_back(i);
  QExp dep = deplete(g, all_primes);
  for (const auto& [b, v] : g.coeffs()) {
    bool in_prime = false;
    for (int i : all_primes)
      if (prime_valuation(hc.F, hc.U, b, i) >= 1) in_prime = true;
    UnramElem expect = in_prime ? UnramElem::zero(hc.K()) : v;
    if (!(dep.get(b) == expect)) {
      detail = "depletion support mismatch";
      return false;
    }
  }
  if (agreement_valuation(deplete(dep, all_primes), dep) < hc.K().M) {
    detail = "depletion not idempotent";
    return false;
  }
  for (int i : all_primes)
    if (!u_partial(deplete(g, {i}), i).is_zero()) {
      detail = "U_partial does not kill the depletion";
      return false;
    }
  detail = "U/V algebra exact on window " + std::to_string(T);
  return true;
}

// ---- criterion 6: VBMS isotypy -------------------------------------------------

bool criterion_vbms(const AcceptanceConfig& cfg, Rng& rng, std::string& detail) {
  i64 p = cfg.p_split;
  int M = cfg.M;
  int dZ = M + 4, dW = 3;
  PadicCtx cx = PadicCtx::make(p, 1, M + 6);  // guard digits for the series
  for (int g = 1; g <= 2; ++g) {
    ChartWeight k;
    k.n = 1;
    for (int s = 0; s < g; ++s) k.u.push_back(random_element(cx, rng));
    SpanReport rep = isotypic_span_check(cx, k, g, dW, dZ, dW, M);
    int expect_dim = g == 1 ? dW + 1 : (dW + 1) * (dW + 2) / 2;
    if (!rep.all_isotypic || !rep.independent_mod_p || rep.dimension != expect_dim) {
      detail = "g=" + std::to_string(g) + " span check failed";
      return false;
    }
    // negative witness: bare Z_sigma with a nontrivial weight
    ChartPoly z(&cx, g, dZ, dW);
    z.set({1, 0, 0, 0}, UnramElem::one(cx));
    if (isotypic_check(z, k, M)) {
      detail = "bare Z passed the isotypic check";
      return false;
    }
  }
  detail = "g in {1,2}, dW <= 3: isotypic + independent, witness rejected";
  return true;
}

// ---- criterion 7: overconvergent projection ------------------------------------

bool criterion_ocproj(const AcceptanceConfig& cfg, Rng& rng, std::string& detail) {
  i64 p = cfg.p_split;
  PadicCtx cx = PadicCtx::make(p, 1, cfg.M);
  int draws = cfg.quick ? 40 : 200;
  i64 B = 12;
  auto random_line = [&](i64 bound) {
    QLine l(&cx, bound);
    for (i64 m = 0; m <= bound; ++m) l.set(m, random_element(cx, rng));
    return l;
  };
  auto wF = [&](i64 u) {
    Weight w;
    w.u = {UnramElem::from_int(cx, u)};
    w.chi = {((u % (p - 1)) + (p - 1)) % (p - 1)};
    w.n = 1;
    return w;
  };
  for (int d = 0; d < draws; ++d) {
    i64 u_h = 6 + (i64)(rng() % 5);  // generic weights: u_h - 2 - j units for j <= 2
    int N = 1 + (int)(rng() % 3);
    QNoc h(&cx, wF(u_h), N, B);
    for (int j = 0; j <= N; ++j) h.set_component(j, random_line(B));
    bool singular = false;
    for (int j = 0; j < N; ++j)
      if ((u_h - 2 - j) % p == 0) singular = true;
    if (singular) continue;
    auto pr = oc_project(h);
    // digit-loss accounting: loss = order + val(lambda), slack 0
    UnramElem lam = lambda_denominator(cx, UnramElem::from_int(cx, u_h - 2), N);
    if (pr.loss_digits != N + lam.val()) {
      detail = "digit-loss accounting mismatch";
      return false;
    }
    // reconstruction at scale: p^L h = noc(h0) + nabla(phi) exactly mod p^M
    QNoc recon = qnoc_from_line(pr.h0_scaled, h.weight()) + qnoc_nabla(pr.phi_scaled);
    UnramElem pL = UnramElem::from_int(cx, p).pow_i(pr.loss_digits);
    if (agreement_valuation(h.scaled(pL), recon) < cx.M) {
      detail = "reconstruction failed at draw " + std::to_string(d);
      return false;
    }
  }
  // H-dagger of an exact form vanishes
  for (int d = 0; d < 10; ++d) {
    i64 u_phi = 5 + (i64)(rng() % 4);
    int N = (int)(rng() % 3);
    QNoc phi(&cx, wF(u_phi), N, B);
    for (int j = 0; j <= N; ++j) phi.set_component(j, random_line(B));
    QNoc h = qnoc_nabla(phi);
    auto pr = oc_project(h);
    if (!pr.h0_scaled.is_zero()) {
      detail = "H-dagger of an exact class is nonzero";
      return false;
    }
  }
  // idempotence on Fil_0
  {
    QLine h0 = random_line(B);
    QNoc h = qnoc_from_line(h0, wF(7));
    auto pr = oc_project(h);
    if (!(agreement_valuation(pr.h0_scaled, h0) == cx.M) || pr.loss_digits != 0) {
      detail = "projection is not the identity on Fil_0";
      return false;
    }
  }
  // singular weights u in {1,2,3}: SingularWeight exactly when a
  // denominator vanishes, i.e. when N >= u+1 (u = u_h - 2)
  for (i64 u = 1; u <= 3; ++u) {
    for (int N = 1; N <= (int)u + 2; ++N) {
      QNoc h(&cx, wF(u + 2), N, B);
      for (int j = 0; j <= N; ++j) h.set_component(j, random_line(B));
      bool threw = false;
      try {
        oc_project(h);
      } catch (const Error& e) {
        if (e.kind != ErrKind::SingularWeight) throw;
        threw = true;
      }
      bool expect = N >= u + 1;
      if (threw != expect) {
        detail = "singular-weight trigger wrong at u=" + std::to_string(u) +
                 " N=" + std::to_string(N);
        return false;
      }
    }
  }
  detail = std::to_string(draws) + " reconstructions exact, loss = val(lambda)+order";
  return true;
}

// ---- criterion 8: the section-7 identity chains --------------------------------

bool criterion_triple(const AcceptanceConfig& cfg, const HilbertCtx& hc, Rng& rng,
                      std::string& detail) {
  int draws = cfg.quick ? 3 : 20;
  int worst = 1 << 20;
  for (i64 t = 0; t <= 2; ++t) {
    for (int d = 0; d < draws; ++d) {
      TripleParams par;
      par.t1 = t;
      par.t2 = 0;
      par.trace_bound = 24;
      par.budget = 6;
      par.seed = rng();
      // choose the smallest weight making every projection denominator a unit
      for (par.k_g = 2; par.k_g <= 8; ++par.k_g) {
        bool ok = true;
        i64 uF = 2 * par.k_g + 2 * (par.t1 + par.t2) - 2;
        for (i64 j = 0; j < par.t1 + par.t2; ++j)
          if ((uF - j) % hc.p == 0) ok = false;
        if (ok) break;
      }
      TripleReport rep = verify_depletion_identities(hc, par);
      for (const auto& l : rep.lines) {
        worst = std::min(worst, l.residual_val - (l.required - cfg.M < 0 ? 0 : 0));
        if (!l.pass) {
          detail = "t=" + std::to_string(t) + " draw " + std::to_string(d) + ": " + l.name +
                   " at " + std::to_string(l.residual_val) + " < " + std::to_string(l.required);
          return false;
        }
      }
    }
  }
  detail = "p=" + std::to_string(hc.p) + ", t in {0,1,2} x " + std::to_string(draws) +
           " draws, all identity lines hold";
  return true;
}

// ---- criterion 9: U-nabla intertwining ------------------------------------------

bool criterion_u_nabla(const AcceptanceConfig& cfg, const HilbertCtx& hc, Rng& rng,
                       std::string& detail) {
  (void)cfg;
  i64 T_out = 8;
  i64 T_in = T_out * hc.p;
  i64 norm_bound = (T_in / 2 + 2) * (T_in / 2 + 2);
  SyntheticBuilder builder(hc, norm_bound);
  EigenData ed = random_eigen_data(hc, 2, norm_bound, rng);
  QExp g0 = builder.eigenform(ed, T_in);
  Weight w = classical_weight(hc.S, {2, 2});
  for (i64 t = 0; t <= 2; ++t) {
    NocForm g = noc_from_modular(g0, w);
    NocForm lhs = noc_u_full(nabla_iterated(nabla_iterated(g, 0, (int)t), 1, (int)t));
    i64 t_p = 2 * t;  // t_p = sum over sigma | p of t_sigma
    NocForm rhs = nabla_iterated(nabla_iterated(noc_from_modular(u_full(g0), w), 0, (int)t), 1,
                                 (int)t)
                      .scaled(UnramElem::from_int(hc.K(), hc.p).pow_i(t_p));
    if (agreement_valuation(lhs, rhs) < hc.K().M) {
      detail = "full U intertwining failed at t=" + std::to_string(t);
      return false;
    }
  }
  // normalized partial operator on the modular (theta) avatar
  if (hc.S.type == SplitType::Split) {
    for (i64 t1 = 0; t1 <= 2; ++t1) {
      std::vector<i64> v = {1, 2};  // integer v-part of the arithmetic weight
      UnramElem kv = u_partial_norm_scalar(hc, 0, v);
      std::vector<i64> vt = {v[0] + t1, v[1]};
      UnramElem kvt = u_partial_norm_scalar(hc, 0, vt);
      QExp theta_t = g0;
      for (i64 i = 0; i < t1; ++i) theta_t = theta_sigma(theta_t, 0);
      QExp lhs = u_partial(theta_t, 0).scaled(kvt);
      QExp rhs = u_partial(g0, 0);
      for (i64 i = 0; i < t1; ++i) rhs = theta_sigma(rhs, 0);
      rhs = rhs.scaled(kv * UnramElem::from_int(hc.K(), hc.p).pow_i(t1));
      i64 B = std::min(lhs.trace_bound(), rhs.trace_bound());
      if (agreement_valuation(lhs.truncated(B), rhs.truncated(B)) < hc.K().M) {
        detail = "normalized partial theta intertwining failed";
        return false;
      }
    }
  }
  detail = "p=" + std::to_string(hc.p) + ": full-U exact for t <= 2";
  return true;
}

// ---- criterion 10: kernel arithmetic ---------------------------------------------

bool criterion_kernel(const AcceptanceConfig& cfg, Rng& rng, std::string& detail) {
  int draws = cfg.quick ? 100 : 1000;
  for (int f = 1; f <= 2; ++f) {
    PadicCtx cx = PadicCtx::make(cfg.p_split, f, cfg.M);
    for (int d = 0; d < draws / 2; ++d) {
      UnramElem x = random_one_unit(cx, rng);
      if (!(padic_exp(padic_log(x)) == x)) {
        detail = "exp(log x) != x";
        return false;
      }
      UnramElem y = random_element(cx, rng).mul_int(cx.p);
      if (!(padic_log(padic_exp(y)) == y)) {
        detail = "log(exp y) != y";
        return false;
      }
      UnramElem u = random_unit(cx, rng);
      UnramElem w = teichmuller(u);
      UnramElem wq = w;
      for (int i = 0; i < f; ++i) wq = wq.pow_i(cx.p);
      if (!(wq == w) || (w - u).val() < 1) {
        detail = "teichmuller torsion/congruence failed";
        return false;
      }
      // hensel on x^2 - c for a random square c
      UnramElem r0 = random_unit(cx, rng);
      UnramElem c = r0 * r0;
      std::vector<UnramElem> poly = {-c, UnramElem::zero(cx), UnramElem::one(cx)};
      UnramElem r = hensel_root(poly, r0 + (random_element(cx, rng).mul_int(cx.p)));
      if (!poly_eval(poly, r).is_zero()) {
        detail = "hensel residual nonzero";
        return false;
      }
    }
  }
  // exhaustive small cases: teichmuller over all units mod 7, exp/log at 1+p
  PadicCtx cx = PadicCtx::make(cfg.p_split, 1, cfg.M);
  for (i64 a = 1; a < cfg.p_split; ++a) {
    UnramElem w = teichmuller(UnramElem::from_int(cx, a));
    if (!(w.pow_i(cfg.p_split - 1) == UnramElem::one(cx))) {
      detail = "teichmuller root-of-unity failed";
      return false;
    }
  }
  detail = std::to_string(draws) + " randomized draws exact, small cases exhaustive";
  return true;
}

}  // namespace

AcceptanceReport run_acceptance(const AcceptanceConfig& cfg, std::ostream* log) {
  AcceptanceReport rep;
  auto emit = [&](int id, const std::string& name, bool pass, const std::string& detail) {
    rep.add(id, name, pass, detail);
    if (log)
      (*log) << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << name << " — "
             << detail << "\n";
  };
  auto guarded = [&](int id, const std::string& name, auto&& fn) {
    std::string detail;
    bool pass = false;
    try {
      pass = fn(detail);
    } catch (const Error& e) {
      detail = std::string("error: ") + e.what();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    emit(id, name, pass, detail);
  };

  Rng rng(cfg.seed);
  HilbertCtx hc_split = HilbertCtx::make(cfg.D, cfg.p_split, cfg.M);
  HilbertCtx hc_inert = HilbertCtx::make(cfg.D, cfg.p_inert, cfg.M);

  guarded(1, "iteration-vs-direct oracle (split)", [&](std::string& d) {
    return criterion_iteration(cfg, hc_split, rng, d);
  });
  guarded(1, "iteration-vs-direct oracle (inert)", [&](std::string& d) {
    return criterion_iteration(cfg, hc_inert, rng, d);
  });
  guarded(2, "depletion congruence", [&](std::string& d) {
    return criterion_depletion_congruence(cfg, hc_split, rng, d) &&
           criterion_depletion_congruence(cfg, hc_inert, rng, d);
  });
  guarded(3, "commutation of partial connections", [&](std::string& d) {
    return criterion_commutation(cfg, hc_split, rng, d) &&
           criterion_commutation(cfg, hc_inert, rng, d);
  });
  guarded(4, "closed-form powers", [&](std::string& d) {
    return criterion_closed_powers(cfg, hc_split, rng, d) &&
           criterion_closed_powers(cfg, hc_inert, rng, d);
  });
  guarded(5, "U/V/depletion algebra", [&](std::string& d) {
    return criterion_uv_algebra(cfg, hc_split, rng, d) &&
           criterion_uv_algebra(cfg, hc_inert, rng, d);
  });
  guarded(6, "VBMS isotypy", [&](std::string& d) { return criterion_vbms(cfg, rng, d); });
  guarded(7, "overconvergent projection contract",
          [&](std::string& d) { return criterion_ocproj(cfg, rng, d); });
  guarded(8, "twisted triple product identity chains (split)",
          [&](std::string& d) { return criterion_triple(cfg, hc_split, rng, d); });
  guarded(8, "twisted triple product identity chains (inert)",
          [&](std::string& d) { return criterion_triple(cfg, hc_inert, rng, d); });
  guarded(9, "U-nabla intertwining", [&](std::string& d) {
    return criterion_u_nabla(cfg, hc_split, rng, d) && criterion_u_nabla(cfg, hc_inert, rng, d);
  });
  guarded(10, "kernel arithmetic",
          [&](std::string& d) { return criterion_kernel(cfg, rng, d); });
  return rep;
}

}  // namespace hmf
