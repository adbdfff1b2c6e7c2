#include "hmf/triple.hpp"

namespace hmf {

QNoc diag_restrict(const NocForm& h) {
  const HilbertCtx& hc = h.hctx();
  Weight wF = restrict_to_F(hc.S, h.weight());
  QNoc out(&hc.K(), wF, h.order_bound(), h.trace_bound());
  for (const auto& [d, q] : h.terms()) {
    QLine line(&hc.K(), h.trace_bound());
    for (const auto& [b, v] : q.coeffs()) line.add_to(hc.F.trace(b), v);
    out.add_component(d[0] + d[1], line);
  }
  return out;
}

// --- scaled scalars ---------------------------------------------------------

ScaledElem ScaledElem::operator*(const ScaledElem& o) const {
  return ScaledElem(u * o.u, e + o.e).normalized();
}

ScaledElem ScaledElem::operator+(const ScaledElem& o) const {
  int ec = std::max(e, o.e);
  UnramElem a = u, b = o.u;
  for (int t = 0; t < ec - e; ++t) a = a.mul_int(a.ctx().p);
  for (int t = 0; t < ec - o.e; ++t) b = b.mul_int(b.ctx().p);
  return ScaledElem(a + b, ec).normalized();
}

ScaledElem ScaledElem::operator-(const ScaledElem& o) const {
  ScaledElem neg(-o.u, o.e);
  return *this + neg;
}

ScaledElem ScaledElem::inverse() const {
  ScaledElem n = normalized();
  int v = n.u.val();
  if (v >= n.u.ctx().M) fail(ErrKind::Domain, "inverse of zero scaled value");
  UnramElem unit_inv = n.u.div_by_p_pow(v).inv();
  // value = p^{v-e} * unit, inverse = p^{e-v} * unit^{-1}
  int e2 = v - n.e;
  if (e2 >= 0) return ScaledElem(unit_inv, e2);
  UnramElem r = unit_inv;
  for (int t = 0; t < -e2; ++t) r = r.mul_int(r.ctx().p);
  return ScaledElem(r, 0);
}

ScaledElem ScaledElem::normalized() const {
  ScaledElem r = *this;
  while (r.e > 0 && !r.u.is_zero() && r.u.val() >= 1) {
    r.u = r.u.div_by_p_pow(1);
    r.e -= 1;
  }
  return r;
}

int scaled_agreement(const ScaledElem& a, const ScaledElem& b) { return (a - b).true_val(); }

ScaledElem RationalFactor::eval(const UnramElem& T) const {
  const PadicCtx& cx = T.ctx();
  auto horner = [&](const std::vector<UnramElem>& c) {
    UnramElem acc = UnramElem::zero(cx);
    for (int i = (int)c.size() - 1; i >= 0; --i) acc = acc * T + c[i];
    return acc;
  };
  ScaledElem n(horner(num), 0), d(horner(den), 0);
  return n * d.inverse();
}

UnramElem euler_E(const UnramElem& x, const UnramElem& y) {
  if (!y.is_unit()) fail(ErrKind::Domain, "euler_E: y must be a unit");
  return UnramElem::one(x.ctx()) - x * y.inv();
}

RationalFactor euler_E1(const PadicCtx& cx, const UnramElem& ap_star, const UnramElem& chi_p,
                        i64 k, i64 p) {
  // (p^{k-1}(p+1) - a* chi T) / (p^{k-1}(p+1))
  UnramElem c = UnramElem::from_int(cx, p).pow_i(k - 1).mul_int(p + 1);
  RationalFactor r;
  r.num = {c, -(ap_star * chi_p)};
  r.den = {c};
  return r;
}

RationalFactor euler_Ep_inert(const PadicCtx& cx, const UnramElem& alpha, const UnramElem& beta,
                              i64 t_p, i64 p) {
  // (T - p^t alpha)(T - p^t beta) / T^2
  UnramElem pt = UnramElem::from_int(cx, p).pow_i(t_p);
  UnramElem a = pt * alpha, b = pt * beta;
  RationalFactor r;
  r.num = {a * b, -(a + b), UnramElem::one(cx)};
  r.den = {UnramElem::zero(cx), UnramElem::zero(cx), UnramElem::one(cx)};
  return r;
}

RationalFactor euler_Ep_split(const PadicCtx& cx, const std::pair<UnramElem, UnramElem>& r1,
                              const std::pair<UnramElem, UnramElem>& r2, i64 t_p, i64 p) {
  UnramElem pt = UnramElem::from_int(cx, p).pow_i(t_p);
  std::vector<UnramElem> roots = {pt * r1.first * r2.first, pt * r1.first * r2.second,
                                  pt * r1.second * r2.first, pt * r1.second * r2.second};
  // prod (T - root) / T^4
  std::vector<UnramElem> numc = {UnramElem::one(cx)};
  for (const auto& rt : roots) {
    std::vector<UnramElem> nx(numc.size() + 1, UnramElem::zero(cx));
    for (size_t i = 0; i < numc.size(); ++i) {
      nx[i + 1] += numc[i];
      nx[i] -= numc[i] * rt;
    }
    numc = std::move(nx);
  }
  RationalFactor r;
  r.num = numc;
  r.den.assign(5, UnramElem::zero(cx));
  r.den[4] = UnramElem::one(cx);
  return r;
}

RationalFactor euler_E0_split(const PadicCtx& cx, const std::pair<UnramElem, UnramElem>& r1,
                              const std::pair<UnramElem, UnramElem>& r2, i64 t_p, i64 p) {
  UnramElem p2t = UnramElem::from_int(cx, p).pow_i(2 * t_p);
  UnramElem prod = r1.first * r1.second * r2.first * r2.second;
  RationalFactor r;
  r.num = {-(p2t * prod), UnramElem::zero(cx), UnramElem::one(cx)};
  r.den = {UnramElem::zero(cx), UnramElem::zero(cx), UnramElem::one(cx)};
  return r;
}

PairingResult pairing(const QLine& h, const std::vector<QLine>& basis, int loss_budget,
                      int residual_floor) {
  if (basis.empty()) fail(ErrKind::Domain, "empty basis");
  i64 B = h.bound();
  for (const auto& b : basis) B = std::min(B, b.bound());
  std::vector<std::vector<UnramElem>> A;
  std::vector<UnramElem> rhs;
  for (i64 m = 0; m <= B; ++m) {
    std::vector<UnramElem> row;
    bool nontrivial = false;
    for (const auto& b : basis) {
      row.push_back(b.get(m));
      if (!row.back().is_zero()) nontrivial = true;
    }
    if (!nontrivial && h.get(m).is_zero()) continue;
    A.push_back(row);
    rhs.push_back(h.get(m));
  }
  auto sol = solve_mod_pM(std::move(A), std::move(rhs), loss_budget, residual_floor);
  PairingResult res;
  res.coords = std::move(sol.x);
  res.digits_lost = sol.digits_lost;
  res.residual_val = sol.residual_val;
  return res;
}

void TripleReport::add(const std::string& name, int got, int required) {
  IdentityLine l;
  l.name = name;
  l.residual_val = got;
  l.required = required;
  l.pass = got >= required;
  if (!l.pass) all_pass = false;
  lines.push_back(l);
}

// --- the identity chains -----------------------------------------------------

namespace {

struct APipe {
  const HilbertCtx* hc;
  Weight w_g;
  i64 t1, t2;
  int forced_order;

  QNoc pre_H(const QExp& x) const {  // zeta* nabla^t
    NocForm h = noc_from_modular(x, w_g);
    h = nabla_iterated(h, 0, (int)t1);
    h = nabla_iterated(h, 1, (int)t2);
    return diag_restrict(h);
  }
  QLine line(const QExp& x) const {  // H-dagger zeta* nabla^t (scaled output)
    auto pr = oc_project(pre_H(x), forced_order);
    return pr.h0_scaled;
  }
};

int line_agreement(const QLine& a, const QLine& b) {
  i64 B = std::min(a.bound(), b.bound());
  return agreement_valuation(a.truncated(B), b.truncated(B));
}

UnramElem upow(const PadicCtx& cx, i64 p, i64 e) {
  return UnramElem::from_int(cx, p).pow_i(e);
}

}  // namespace

TripleReport verify_depletion_identities(const HilbertCtx& hc, const TripleParams& par) {
  TripleReport rep;
  const PadicCtx& K = hc.K();
  const int Mf = K.M;
  Rng rng(par.seed);
  const i64 p = hc.p;
  const i64 t_p = par.t1 + par.t2;
  const bool split = hc.S.type == SplitType::Split;

  // weight chosen by the driver so that the projection denominators are units
  Weight w_g = classical_weight(hc.S, {par.k_g, par.k_g});
  {
    i64 uF = 2 * par.k_g + 2 * t_p - 2;
    for (i64 j = 0; j < t_p; ++j)
      if ((uF - j) % p == 0)
        fail(ErrKind::SingularWeight, "driver chose a singular weight for this (p, t)");
  }

  APipe A{&hc, w_g, par.t1, par.t2, (int)t_p};

  i64 T = par.trace_bound;
  i64 norm_bound = (T / 2 + 2) * (T / 2 + 2);
  SyntheticBuilder builder(hc, norm_bound);
  EigenData ed = random_eigen_data(hc, par.k_g, norm_bound, rng);
  QExp g_small = builder.eigenform(ed, T);

  if (split) {
    auto [a1, b1] = ed.p_roots[0];
    auto [a2, b2] = ed.p_roots[1];
    QExp g_dep = deplete(g_small, {0, 1});
    QLine A_dep = A.line(g_dep);

    // epsilon_i(star_i) = A(V_i (g_{star_i})^{[P_j]}), exactly U_p-killed
    auto eps = [&](int i, const UnramElem& other_root) {
      int j = 1 - i;
      QExp s = p_stabilize(g_small, other_root, i);
      QExp s_dep = deplete(s, {j});
      QExp v = v_partial(s_dep, i);
      QNoc y = A.pre_H(v);
      rep.add("U kills zeta*(nabla^t V_" + std::to_string(i + 1) + " g^{[P_" +
                  std::to_string(j + 1) + "]})",
              qnoc_U(y, p).is_zero() ? Mf : qnoc_U(y, p).min_val(), Mf);
      return oc_project(y, (int)t_p).h0_scaled;
    };
    QLine eps1_a = eps(0, b1), eps1_b = eps(0, a1);
    QLine eps2_a = eps(1, b2), eps2_b = eps(1, a2);

    // the four double stabilizations
    struct Choice {
      UnramElem star1, star2, oth1, oth2;
      const QLine *e1, *e2;
      const char* tag;
    };
    std::vector<Choice> choices = {{a1, a2, b1, b2, &eps1_a, &eps2_a, "(a1,a2)"},
                                   {a1, b2, b1, a2, &eps1_a, &eps2_b, "(a1,b2)"},
                                   {b1, a2, a1, b2, &eps1_b, &eps2_a, "(b1,a2)"},
                                   {b1, b2, a1, a2, &eps1_b, &eps2_b, "(b1,b2)"}};
    std::vector<QLine> A_stab;
    for (const auto& ch : choices) {
      QExp gs = p_stabilize(p_stabilize(g_small, ch.oth1, 0), ch.oth2, 1);
      QLine As = A.line(gs);
      A_stab.push_back(As);
      // LHS: A(g^{[P]}) + star1 eps1 + star2 eps2
      QLine lhs = A_dep + ch.e1->scaled(ch.star1) + ch.e2->scaled(ch.star2);
      // RHS: (1 - star1 star2 p^{t_p} V) A(g_star)
      QLine rhs = As - qline_V(As, p).truncated(As.bound()).scaled(
                           ch.star1 * ch.star2 * upow(K, p, t_p));
      rep.add(std::string("depletion chain ") + ch.tag, line_agreement(lhs, rhs), Mf);
    }

    // partial fractions: A(g) = sum c_star A(g_star)
    {
      UnramElem inv1 = (a1 - b1).inv(), inv2 = (a2 - b2).inv();
      QLine acc(&K, A_stab[0].bound());
      std::vector<UnramElem> cs = {a1 * a2, -(a1 * b2), -(b1 * a2), b1 * b2};
      for (int i = 0; i < 4; ++i) acc = acc + A_stab[i].scaled(cs[i] * inv1 * inv2);
      rep.add("stabilization partial fractions", line_agreement(A.line(g_small), acc), Mf);
    }

    // V_p intertwining through the whole pipeline
    {
      QExp gv = v_full(g_small);
      QLine lhs = A.line(gv);
      QLine rhs = qline_V(A.line(g_small), p).scaled(upow(K, p, t_p));
      rep.add("H zeta* nabla^t V_p = p^{t_p} V_p H zeta* nabla^t", line_agreement(lhs, rhs), Mf);
    }
  } else {
    auto [ag, bg] = ed.p_roots[0];
    QExp g_dep = deplete(g_small, {0});
    QLine A_dep = A.line(g_dep);
    std::vector<QLine> A_stab;
    std::vector<std::pair<UnramElem, UnramElem>> chs = {{ag, bg}, {bg, ag}};
    for (auto& [star, oth] : chs) {
      QExp gs = p_stabilize(g_small, oth, 0);
      QLine As = A.line(gs);
      A_stab.push_back(As);
      QLine rhs = As - qline_V(As, p).truncated(As.bound()).scaled(star * upow(K, p, t_p));
      rep.add(std::string("depletion chain (") + (A_stab.size() == 1 ? "alpha" : "beta") + ")",
              line_agreement(A_dep, rhs), Mf);
    }
    {
      UnramElem inv = (ag - bg).inv();
      QLine acc = A_stab[0].scaled(ag * inv) - A_stab[1].scaled(bg * inv);
      rep.add("stabilization partial fractions", line_agreement(A.line(g_small), acc), Mf);
    }
    {
      QExp gv = v_full(g_small);
      QLine lhs = A.line(gv);
      QLine rhs = qline_V(A.line(g_small), p).scaled(upow(K, p, t_p));
      rep.add("H zeta* nabla^t V_p = p^{t_p} V_p H zeta* nabla^t", line_agreement(lhs, rhs), Mf);
    }
  }

  // --- pairing solver on the synthetic span (form precision) -----------------
  {
    i64 k_f = 2 * par.k_g + 2 * t_p;
    EllipticEigenData fd = random_elliptic_eigen_data(K, p, k_f, T, rng);
    QLine fstar = elliptic_eigenform(K, p, fd, T);
    QLine fs_a = qline_stabilize(fstar, fd.beta, p);   // U_p-eigenvalue alpha*
    QLine fs_b = qline_stabilize(fstar, fd.alpha, p);  // U_p-eigenvalue beta*
    UnramElem c1 = random_unit(K, rng), c2 = random_unit(K, rng);
    QLine gamma = fstar.scaled(c1) + qline_V(fstar, p).truncated(fstar.bound()).scaled(c2);
    UnramElem dab_inv = (fd.alpha - fd.beta).inv();
    UnramElem d_a = (c1 * fd.alpha + c2) * dab_inv;
    UnramElem d_b = -(c1 * fd.beta + c2) * dab_inv;
    auto pr = pairing(gamma, {fs_a, fs_b}, /*loss_budget=*/4, /*residual_floor=*/Mf - 4);
    int got = std::min((pr.coords[0] - d_a).val(), (pr.coords[1] - d_b).val());
    rep.add("pairing eigencomponent extraction", got, Mf - 4);
  }

  // --- Euler-factor / interpolation bracket (scalar layer, high precision) ---
  {
    PadicCtx cxP = PadicCtx::make(p, K.f, par.pairing_M);
    i64 k_f = 2 * par.k_g + 2 * t_p;
    UnramElem chi1 = UnramElem::one(cxP);
    UnramElem as = random_unit(cxP, rng);
    UnramElem bs = upow(cxP, p, k_f - 1) * as.inv();  // alpha* beta* = p^{k_f-1}
    // gamma = c f* on the f*-line, the domain of the V_p-pairing lemma
    UnramElem c = random_unit(cxP, rng);

    // kappa = <V_p f*, f*>/<f*, f*> = a_p* chi(p) / (p^{k_f-1}(p+1))
    ScaledElem kappa =
        ScaledElem((as + bs) * UnramElem::from_int(cxP, p + 1).inv(), (int)(k_f - 1));
    ScaledElem one(UnramElem::one(cxP), 0);
    // ell on the span: ell(f*) = 1, ell(V f*) = kappa
    ScaledElem ell_fs_a = one - ScaledElem(bs, 0) * kappa;
    ScaledElem ell_fs_b = one - ScaledElem(as, 0) * kappa;
    // coordinates of gamma in the stabilization basis
    UnramElem dab_inv = (as - bs).inv();
    UnramElem d_a = c * as * dab_inv;
    UnramElem d_b = -(c * bs) * dab_inv;

    RationalFactor E1 = euler_E1(cxP, as + bs, chi1, k_f, p);
    ScaledElem phi_a, phi_b, brk;
    if (split) {
      auto r1 = std::make_pair(random_unit(cxP, rng), UnramElem());
      r1.second = upow(cxP, p, par.k_g - 1) * r1.first.inv();
      auto r2 = std::make_pair(random_unit(cxP, rng), UnramElem());
      r2.second = upow(cxP, p, par.k_g - 1) * r2.first.inv();
      RationalFactor Ep = euler_Ep_split(cxP, r1, r2, t_p, p);
      RationalFactor E0 = euler_E0_split(cxP, r1, r2, t_p, p);
      phi_a = Ep.eval(as) * E0.eval(as).inverse();
      phi_b = Ep.eval(bs) * E0.eval(bs).inverse();
      // bracket = Ep(a*)E1(b*)/(E(b*,a*)E0(a*)) + Ep(b*)E1(a*)/(E(a*,b*)E0(b*))
      ScaledElem Eba(euler_E(bs, as), 0);
      ScaledElem Eab = one - ScaledElem(as, 0) * ScaledElem(bs, 0).inverse();
      brk = Ep.eval(as) * E1.eval(bs) * (Eba * E0.eval(as)).inverse() +
            Ep.eval(bs) * E1.eval(as) * (Eab * E0.eval(bs)).inverse();
    } else {
      UnramElem ag2 = random_unit(cxP, rng);
      UnramElem bg2 = upow(cxP, p, 2 * (par.k_g - 1)) * ag2.inv();
      RationalFactor Ep = euler_Ep_inert(cxP, ag2, bg2, t_p, p);
      phi_a = Ep.eval(as);
      phi_b = Ep.eval(bs);
      ScaledElem Eba(euler_E(bs, as), 0);
      ScaledElem Eab = one - ScaledElem(as, 0) * ScaledElem(bs, 0).inverse();
      brk = Ep.eval(as) * E1.eval(bs) * Eba.inverse() + Ep.eval(bs) * E1.eval(as) * Eab.inverse();
    }
    // left pipeline: decompose gamma, apply Phi(U_p) componentwise, pair
    ScaledElem left = ScaledElem(d_a, 0) * phi_a * ell_fs_a + ScaledElem(d_b, 0) * phi_b * ell_fs_b;
    // right pipeline: the interpolation bracket times ell(gamma)
    ScaledElem right = brk * ScaledElem(c, 0);
    rep.add("Euler-factor interpolation bracket", scaled_agreement(left, right), par.budget);
    rep.interpolation_ratio = brk;
  }

  return rep;
}

}  // namespace hmf
