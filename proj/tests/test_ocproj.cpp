#include "hmf/linalg.hpp"
#include "hmf/ocproj.hpp"
#include "hmf/random.hpp"

#include <doctest.h>

using namespace hmf;

namespace {

Weight wF(const PadicCtx& cx, i64 u) {
  Weight w;
  w.u = {UnramElem::from_int(cx, u)};
  w.chi = {((u % (cx.p - 1)) + (cx.p - 1)) % (cx.p - 1)};
  w.n = 1;
  return w;
}

QLine random_line(const PadicCtx& cx, i64 B, Rng& rng) {
  QLine l(&cx, B);
  for (i64 m = 0; m <= B; ++m) l.set(m, random_element(cx, rng));
  return l;
}

}  // namespace

TEST_CASE("order-0 input is returned unchanged") {
  PadicCtx cx = PadicCtx::make(7, 1, 10);
  Rng rng(3);
  QLine h0 = random_line(cx, 10, rng);
  auto pr = oc_project(qnoc_from_line(h0, wF(cx, 9)));
  CHECK(agreement_valuation(pr.h0_scaled, h0) == cx.M);
  CHECK(pr.loss_digits == 0);
  CHECK(pr.phi_scaled.is_zero());
}

TEST_CASE("one-step recursion satisfies the reconstruction contract") {
  PadicCtx cx = PadicCtx::make(7, 1, 10);
  Rng rng(5);
  // h = a V at weight k+2 with u = k a unit
  i64 k = 9;
  QNoc h(&cx, wF(cx, k + 2), 1, 8);
  h.set_component(1, random_line(cx, 8, rng));
  auto pr = oc_project(h);
  CHECK(pr.loss_digits == 1);  // one division by p, unit weight factor
  QNoc recon = qnoc_from_line(pr.h0_scaled, h.weight()) + qnoc_nabla(pr.phi_scaled);
  CHECK(agreement_valuation(h.scaled(UnramElem::from_int(cx, 7)), recon) == cx.M);
}

TEST_CASE("projection kills exact classes and fixes Fil_0") {
  PadicCtx cx = PadicCtx::make(7, 1, 12);
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    i64 u_phi = 4 + (i64)(rng() % 5);
    int N = (int)(rng() % 3);
    QNoc phi(&cx, wF(cx, u_phi), N, 8);
    for (int j = 0; j <= N; ++j) phi.set_component(j, random_line(cx, 8, rng));
    QNoc h = qnoc_nabla(phi);
    bool singular = false;
    for (int j = 0; j <= N; ++j)
      if ((u_phi - j) % 7 == 0) singular = true;
    if (singular) continue;
    auto pr = oc_project(h);
    CHECK(pr.h0_scaled.is_zero());
    // the projection recovers an exact primitive: nabla(phi') = p^L nabla(phi)
    UnramElem pL = UnramElem::from_int(cx, 7).pow_i(pr.loss_digits);
    CHECK(agreement_valuation(qnoc_nabla(pr.phi_scaled), qnoc_nabla(phi).scaled(pL)) == cx.M);
  }
}

TEST_CASE("lambda denominator") {
  PadicCtx cx = PadicCtx::make(7, 1, 10);
  // N=1, g=1, u=5: the single factor (5 - 0)
  CHECK(lambda_denominator(cx, UnramElem::from_int(cx, 5), 1) == UnramElem::from_int(cx, 5));
  // u = 3, N >= 4 contains the zero factor (3 - 3)
  CHECK(lambda_denominator(cx, UnramElem::from_int(cx, 3), 4).is_zero());
  // generic unit-valued u gives a unit lambda
  CHECK(lambda_denominator(cx, UnramElem::from_int(cx, 12), 3).val() == 0);
}

TEST_CASE("singular weights raise exactly at the vanishing denominator") {
  PadicCtx cx = PadicCtx::make(7, 1, 10);
  Rng rng(11);
  for (i64 u = 1; u <= 3; ++u) {
    for (int N = 1; N <= (int)u + 2; ++N) {
      QNoc h(&cx, wF(cx, u + 2), N, 6);
      for (int j = 0; j <= N; ++j) h.set_component(j, random_line(cx, 6, rng));
      bool threw = false;
      try {
        oc_project(h);
      } catch (const Error& e) {
        REQUIRE(e.kind == ErrKind::SingularWeight);
        threw = true;
      }
      CHECK(threw == (N >= u + 1));
    }
  }
}

TEST_CASE("classical consistency against the dense linear-algebra oracle") {
  PadicCtx cx = PadicCtx::make(7, 1, 12);
  Rng rng(13);
  i64 B = 6;
  i64 u_h = 10;
  int N = 3;
  QNoc h(&cx, wF(cx, u_h), N, B);
  for (int j = 0; j <= N; ++j) h.set_component(j, random_line(cx, B, rng));
  auto pr = oc_project(h);
  UnramElem u = UnramElem::from_int(cx, u_h - 2);
  UnramElem pL = UnramElem::from_int(cx, 7).pow_i(pr.loss_digits);
  // dense solve of p^L h = noc(H0) + nabla(Phi), decoupled per q-index m:
  // unknowns (H0(m), Phi_0(m), ..., Phi_{N-1}(m)); equations per V-degree
  for (i64 m = 0; m <= B; ++m) {
    std::vector<std::vector<UnramElem>> A(N + 1,
                                          std::vector<UnramElem>(N + 1, UnramElem::zero(cx)));
    std::vector<UnramElem> b(N + 1, UnramElem::zero(cx));
    // degree 0 equation: H0 + theta(Phi_0) = p^L a_0
    A[0][0] = UnramElem::one(cx);
    A[0][1] = UnramElem::from_int(cx, m);
    b[0] = h.component(0).get(m) * pL;
    // degree j >= 1: theta(Phi_j) + p (u - (j-1)) Phi_{j-1} = p^L a_j
    for (int j = 1; j <= N; ++j) {
      if (j < N) A[j][1 + j] = UnramElem::from_int(cx, m);
      A[j][j] = (u - UnramElem::from_int(cx, j - 1)).mul_int(7);
      b[j] = h.component(j).get(m) * pL;
    }
    auto sol = solve_mod_pM(A, b, /*loss_budget=*/N + 2, /*residual_floor=*/cx.M - N - 2);
    // the solver loses the pivot digits; compare up to that precision
    int cmp = cx.M - sol.digits_lost;
    CHECK((sol.x[0] - pr.h0_scaled.get(m)).val() >= cmp);
    for (int j = 0; j < N; ++j)
      CHECK((sol.x[1 + j] - pr.phi_scaled.component(j).get(m)).val() >= cmp);
  }
}

TEST_CASE("solver diagnostics") {
  PadicCtx cx = PadicCtx::make(7, 1, 10);
  Rng rng(17);
  // ill-conditioned: a column divisible by a high power of p
  std::vector<std::vector<UnramElem>> A = {
      {UnramElem::from_int(cx, 7 * 7 * 7)},
      {UnramElem::from_int(cx, 2 * 7 * 7 * 7)},
  };
  std::vector<UnramElem> b = {UnramElem::from_int(cx, 7), UnramElem::from_int(cx, 14)};
  CHECK_THROWS_AS(solve_mod_pM(A, b, 1, 0), Error);
  // inconsistent overdetermined system reports NotInSpan
  std::vector<std::vector<UnramElem>> A2 = {{UnramElem::one(cx)}, {UnramElem::one(cx)}};
  std::vector<UnramElem> b2 = {UnramElem::one(cx), UnramElem::from_int(cx, 2)};
  bool threw = false;
  try {
    solve_mod_pM(A2, b2, 4, cx.M);
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::NotInSpan);
    threw = true;
  }
  CHECK(threw);
}
