#pragma once

// Overconvergent projection on the F = Q chart: split a nearly-
// overconvergent form into holomorphic part plus an exact part, with the
// explicit weight denominators prod (u - i).

#include "hmf/qexp.hpp"

namespace hmf {

// the connection on the Q-chart: a V^i -> theta(a) V^i + p(u-i) a V^{i+1},
// weight shifted by 2
QNoc qnoc_nabla(const QNoc& h);

// lambda = prod_{i=0}^{N-1}(u - i), u the F-chart exponent of the *source*
// weight of the nabla step (= weight(h) - 2 in oc_project)
UnramElem lambda_denominator(const PadicCtx& cx, const UnramElem& u, int N);

// All outputs are scaled by p^{loss_digits} to stay integral: the true
// decomposition is h = h0_scaled/p^L + nabla(phi_scaled/p^L) with
// L = loss_digits = N + val(lambda); equivalently
//   p^L h = noc(h0_scaled) + nabla(phi_scaled)   exactly mod p^M.
struct OcProjResult {
  QLine h0_scaled;
  QNoc phi_scaled;
  int loss_digits = 0;
};

// forced_order = -1 uses the actual order of h; passing an explicit order
// pins the denominator set (and hence the scale) across a family of inputs
OcProjResult oc_project(const QNoc& h, int forced_order = -1);

}  // namespace hmf
