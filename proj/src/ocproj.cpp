#include "hmf/ocproj.hpp"

namespace hmf {

QNoc qnoc_nabla(const QNoc& h) {
  const PadicCtx& cx = h.ctx();
  Weight w = h.weight();
  const UnramElem u = w.u[0];
  Weight w_out = w;
  w_out.u[0] = u + UnramElem::from_int(cx, 2);
  i64 pm1 = cx.p - 1;
  w_out.chi = {((w.chi[0] + 2) % pm1 + pm1) % pm1};
  QNoc out(&cx, w_out, h.order_bound() + 1, h.bound());
  i64 p = cx.p;
  for (const auto& [d, a] : h.terms()) {
    out.add_component(d, qline_theta(a));
    UnramElem c = (u - UnramElem::from_int(cx, d)).mul_int(p);
    out.add_component(d + 1, a.scaled(c));
  }
  return out;
}

UnramElem lambda_denominator(const PadicCtx& cx, const UnramElem& u, int N) {
  UnramElem acc = UnramElem::one(cx);
  for (int i = 0; i < N; ++i) acc *= u - UnramElem::from_int(cx, i);
  return acc;
}

OcProjResult oc_project(const QNoc& h, int forced_order) {
  const PadicCtx& cx = h.ctx();
  int N = forced_order >= 0 ? forced_order : h.order();
  if (h.order() > N) fail(ErrKind::Domain, "forced order below the actual order");
  OcProjResult res;
  if (N == 0) {
    res.h0_scaled = h.component(0);
    Weight wphi = h.weight();
    wphi.u[0] = wphi.u[0] - UnramElem::from_int(cx, 2);
    res.phi_scaled = QNoc(&cx, wphi, 0, h.bound());
    res.loss_digits = 0;
    return res;
  }
  // u is the exponent of phi's weight = weight(h) - 2
  UnramElem u = h.weight().u[0] - UnramElem::from_int(cx, 2);
  // denominators p (u - j), j = N-1 ... 0; check singularity up front
  std::vector<UnramElem> w(N), w_unit_inv(N);
  std::vector<int> wval(N);
  for (int j = 0; j < N; ++j) {
    w[j] = u - UnramElem::from_int(cx, j);
    wval[j] = w[j].val();
    if (wval[j] >= cx.M)
      fail(ErrKind::SingularWeight,
           "weight denominator (u - " + std::to_string(j) + ") vanishes mod p^M");
    w_unit_inv[j] = w[j].div_by_p_pow(wval[j]).inv();
  }
  // integral recursion on C_j = p^{e_j} b_j with e_j = sum_{l>=j} (1 + val w_l):
  //   C_{N-1} = a_N * unit(w_{N-1})^{-1}
  //   C_{j-1} = (p^{e_j} a_j - theta(C_j)) * unit(w_{j-1})^{-1}
  std::vector<QLine> C(N);
  std::vector<int> e(N + 1, 0);
  for (int j = N - 1; j >= 0; --j) e[j] = e[j + 1] + 1 + wval[j];
  C[N - 1] = h.component(N).scaled(w_unit_inv[N - 1]);
  for (int j = N - 1; j >= 1; --j) {
    UnramElem pe = UnramElem::from_int(cx, 1);
    for (int t = 0; t < e[j]; ++t) pe = pe.mul_int(cx.p);
    C[j - 1] = (h.component(j).scaled(pe) - qline_theta(C[j])).scaled(w_unit_inv[j - 1]);
  }
  int L = e[0];
  UnramElem pL = UnramElem::one(cx);
  for (int t = 0; t < L; ++t) pL = pL.mul_int(cx.p);
  res.h0_scaled = h.component(0).scaled(pL) - qline_theta(C[0]);
  Weight wphi = h.weight();
  wphi.u[0] = u;
  i64 pm1 = cx.p - 1;
  wphi.chi = {((h.weight().chi[0] - 2) % pm1 + pm1) % pm1};
  res.phi_scaled = QNoc(&cx, wphi, N - 1, h.bound());
  for (int j = 0; j < N; ++j) {
    // common scale p^L: Phi_j = p^{L - e_j} C_j
    UnramElem scale = UnramElem::one(cx);
    for (int t = 0; t < L - e[j]; ++t) scale = scale.mul_int(cx.p);
    res.phi_scaled.add_component(j, C[j].scaled(scale));
  }
  res.loss_digits = L;
  return res;
}

}  // namespace hmf
