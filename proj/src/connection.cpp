#include "hmf/connection.hpp"

namespace hmf {

NocForm nabla_sigma(const NocForm& h, int sigma) {
  const HilbertCtx& hc = h.hctx();
  const PadicCtx& K = hc.K();
  Weight w_out = weight_shift(hc.S, h.weight(), sigma, 2);
  NocForm out(&hc, w_out, h.order_bound() + 1, h.trace_bound());
  const UnramElem& u_sigma = h.weight().u[sigma];
  for (const auto& [d, a] : h.terms()) {
    out.add_component(d, theta_sigma(a, sigma));
    UnramElem c = (u_sigma - UnramElem::from_int(K, d[sigma])).mul_int(hc.p);
    VDeg up = d;
    up[sigma] += 1;
    out.add_component(up, a.scaled(c));
  }
  return out;
}

NocForm nabla_iterated(const NocForm& h, int sigma, int times) {
  NocForm cur = h;
  for (int i = 0; i < times; ++i) cur = nabla_sigma(cur, sigma);
  return cur;
}

NocForm nabla_power_closed(const QExp& g, int N, int sigma, const Weight& k) {
  const HilbertCtx& hc = g.hctx();
  const PadicCtx& K = hc.K();
  if (N < 0) fail(ErrKind::Domain, "negative power");
  Weight w_out = k;
  for (int i = 0; i < N; ++i) w_out = weight_shift(hc.S, w_out, sigma, 2);
  NocForm out(&hc, w_out, N, g.trace_bound());
  const UnramElem& u = k.u[sigma];
  // theta^{N-j}(g), computed once per j from the top
  std::vector<QExp> thetas(N + 1);
  thetas[0] = g;
  for (int i = 1; i <= N; ++i) thetas[i] = theta_sigma(thetas[i - 1], sigma);
  UnramElem binom = UnramElem::one(K);    // binom(N, j)
  UnramElem fall = UnramElem::one(K);     // (u+N-1)(u+N-2)...(u+N-j)
  UnramElem ppow = UnramElem::one(K);     // p^j
  for (int j = 0; j <= N; ++j) {
    if (j > 0) {
      binom = binom.mul_int(N - j + 1);
      // binomial coefficients of integers: the division by j is exact
      int v = (int)vp_int(K.p, j);
      i64 ju = j;
      while (ju % K.p == 0) ju /= K.p;
      binom = binom.div_by_p_pow(v) * UnramElem::from_int(K, ju).inv();
      fall *= u + UnramElem::from_int(K, N - j);
      ppow = ppow.mul_int(hc.p);
    }
    QExp piece = thetas[N - j].scaled(binom * fall * ppow);
    VDeg d{0, 0};
    d[sigma] = j;
    if (!piece.is_zero()) out.add_component(d, piece);
  }
  return out;
}

Rational term_valuation_bound(const std::vector<i64>& js, i64 p) {
  if (js.empty()) return Rational(0, 1);
  i64 sum = 0, vsum = 0;
  for (i64 j : js) {
    if (j < 1) fail(ErrKind::Domain, "series indices are positive");
    sum += j;
    vsum += vp_int(p, j);
  }
  i64 i = (i64)js.size();
  // v_p(i!) by Legendre
  i64 vif = 0;
  for (i64 q = p; q <= i; q *= p) vif += i / q;
  return Rational(sum - vif - vsum, 1);
}

Rational simplified_tail_bound(i64 sum_j, i64 p) { return Rational(sum_j * (p - 2), p - 1); }

int default_m_max(i64 p, int target) {
  int m = 1;
  while (simplified_tail_bound(m + 1, p) < Rational(target, 1)) ++m;
  return 2 * m + 8;
}

void validate_plan(const HilbertCtx& hc, const IterationPlan& plan) {
  if (plan.v.val() < 0) fail(ErrKind::Domain, "v_sigma must be integral");
  // the pen-and-paper floor is a necessary minimum; the runtime stopping
  // rule additionally demands observed stability (see nabla_sigma_s)
  Rational tail = simplified_tail_bound(plan.m_max + 1, hc.p);
  if (tail < Rational(plan.target_precision, 1))
    fail(ErrKind::ConvergenceBudget,
         "m_max insufficient for the requested precision (predicted tail " +
             std::to_string(tail.num) + "/" + std::to_string(tail.den) + ")");
}

NocForm GradedNoc::collapse(const Weight& final_weight) const {
  if (comps.empty()) fail(ErrKind::Domain, "collapse of an empty stack");
  const NocForm& first = comps.begin()->second;
  int ob = 0;
  i64 tb = first.trace_bound();
  for (const auto& [j, h] : comps) {
    ob = std::max(ob, h.order());
    tb = std::min(tb, h.trace_bound());
  }
  NocForm out(&first.hctx(), final_weight, ob, tb);
  for (const auto& [j, h] : comps)
    for (const auto& [d, q] : h.terms())
      if (d[0] + d[1] <= ob) out.add_component(d, q.truncated(tb));
  return out;
}

namespace {

// one application of nabla(sigma)^{p^f - 1} - id on the weight-graded stack
GradedNoc apply_D(const GradedNoc& G, int sigma, int P) {
  GradedNoc out;
  for (const auto& [j, h] : G.comps) {
    NocForm up = nabla_iterated(h, sigma, P);
    auto it = out.comps.find(j + 1);
    if (it == out.comps.end())
      out.comps.emplace(j + 1, up);
    else
      it->second = it->second + up;
  }
  for (const auto& [j, h] : G.comps) {
    auto it = out.comps.find(j);
    if (it == out.comps.end())
      out.comps.emplace(j, h.scaled(-UnramElem::one(h.hctx().K())));
    else
      it->second = it->second - h;
  }
  return out;
}

void check_depleted(const NocForm& g, int prime_i) {
  for (const auto& [d, q] : g.terms())
    if (!is_depleted(q, prime_i))
      fail(ErrKind::NotDepleted, "input is not depleted at the prime of sigma");
}

}  // namespace

// The valuation growth of the iteration lives on the collapsed function,
// not on the individual weight-graded components (the tag pieces of
// nabla^P g - g separately have valuation 0). Each series term is therefore
// collapsed before dividing and accumulating.
NocForm log_nabla(const NocForm& g, int sigma, int m) {
  const HilbertCtx& hc = g.hctx();
  const PadicCtx& K = hc.K();
  check_depleted(g, hc.S.prime_of_sigma(sigma));
  int P = 1;
  for (int i = 0; i < hc.S.f_sigma(sigma); ++i) P *= (int)hc.p;
  P -= 1;
  Weight wfinal = g.weight();  // the log lives at the base weight symbolically
  NocForm acc(&hc, wfinal, g.order_bound(), g.trace_bound());
  GradedNoc Dn;
  Dn.comps.emplace(0, g);
  for (int j = 1; j <= m; ++j) {
    Dn = apply_D(Dn, sigma, P);
    int v = (int)vp_int(K.p, j);
    i64 ju = j;
    while (ju % K.p == 0) ju /= K.p;
    UnramElem c = UnramElem::from_int(K, ju).inv();
    if (j % 2 == 0) c = -c;
    NocForm term = Dn.collapse(wfinal).scaled(c);
    // divide by the p-part of j; D^j of a depleted form is divisible by p^j
    NocForm divided(&hc, wfinal, term.order(), term.trace_bound());
    for (const auto& [d, q] : term.terms()) {
      QExp qq(&hc, q.trace_bound());
      for (const auto& [b, val] : q.coeffs()) {
        if (val.val() < v)
          fail(ErrKind::Domain, "depletion congruence violated in the log series");
        qq.set(b, val.div_by_p_pow(v));
      }
      divided.set_component(d, qq);
    }
    acc = acc + divided;
  }
  return acc;
}

NocForm nabla_sigma_s(const NocForm& g, const IterationPlan& plan, IterationDiagnostics* diag) {
  const HilbertCtx& hc = g.hctx();
  const PadicCtx& K = hc.K();
  int sigma = plan.sigma;
  check_depleted(g, hc.S.prime_of_sigma(sigma));
  validate_plan(hc, plan);
  int P = 1;
  for (int i = 0; i < hc.S.f_sigma(sigma); ++i) P *= (int)hc.p;
  P -= 1;
  // w = v / (p^f - 1) is integral since p^f - 1 is a unit
  UnramElem w = plan.v * UnramElem::from_int(K, P).inv();

  // final symbolic weight: u_sigma += 2 v (the analytic shift; s-type
  // weights are trivial on torsion so chi is unchanged)
  Weight wf = g.weight();
  wf.u[sigma] = wf.u[sigma] + plan.v.mul_int(2);

  // per-term collapse: the n-th term is binom(w,n) (nabla^P - id)^n g, whose
  // collapsed coefficients carry valuation >= n - v_p(n!)
  NocForm acc(&hc, wf, g.order_bound(), g.trace_bound());
  for (const auto& [d, q] : g.terms()) acc.set_component(d, q);  // n = 0 term
  GradedNoc Dn;
  Dn.comps.emplace(0, g);
  UnramElem binom = UnramElem::one(K);
  if (diag) {
    diag->term_valuations.clear();
    diag->term_valuations.push_back(g.min_val());
  }
  int n_used = 0;
  int stable_run = 0;
  bool stabilized = false;
  for (int n = 1; n <= plan.m_max; ++n) {
    Dn = apply_D(Dn, sigma, P);
    // binom(w, n) = binom(w, n-1) (w - n + 1) / n, exact in Z_p
    binom = binom * (w - UnramElem::from_int(K, n - 1));
    int v = (int)vp_int(K.p, n);
    i64 nu = n;
    while (nu % K.p == 0) nu /= K.p;
    if (binom.val() < v) fail(ErrKind::ConvergenceBudget, "binomial division not exact");
    binom = binom.div_by_p_pow(v) * UnramElem::from_int(K, nu).inv();

    NocForm term = Dn.collapse(wf).scaled(binom);
    int term_min = term.min_val();
    acc = acc + term;
    if (diag) diag->term_valuations.push_back(term_min);
    n_used = n;
    // Stability-based stopping: the observed term valuations grow linearly
    // but lag the pen-and-paper floor beyond the first application (the
    // V-raising coefficients drift with the weight tag), so the rule is
    // three consecutive terms at or above the target once the floor has
    // been passed.
    if (term_min >= plan.target_precision)
      ++stable_run;
    else
      stable_run = 0;
    Rational tail = simplified_tail_bound(n + 1, hc.p);
    if (stable_run >= 3 && Rational(plan.target_precision, 1) <= tail) {
      stabilized = true;
      break;
    }
  }
  if (!stabilized)
    fail(ErrKind::ConvergenceBudget,
         "series did not stabilize at the requested precision within m_max");
  if (diag) {
    diag->terms_used = n_used;
    diag->certified = plan.target_precision;
  }
  return acc;
}

NocForm nabla_s(const NocForm& g, const std::vector<IterationPlan>& plans, int* certified,
                std::vector<IterationDiagnostics>* diags) {
  const HilbertCtx& hc = g.hctx();
  for (int i = 0; i < (int)hc.U.x.size(); ++i) check_depleted(g, i);
  NocForm cur = g;
  int cert = hc.K().M;
  for (const auto& plan : plans) {
    IterationDiagnostics d;
    cur = nabla_sigma_s(cur, plan, &d);
    cert = std::min(cert, plan.target_precision);
    if (diags) diags->push_back(d);
  }
  if (certified) *certified = cert;
  return cur;
}

}  // namespace hmf
