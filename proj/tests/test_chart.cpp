#include "hmf/chart.hpp"
#include "hmf/random.hpp"

#include <doctest.h>

using namespace hmf;

namespace {

ChartPoly random_chart(const PadicCtx& cx, int g, int dZ, int dW, Rng& rng) {
  ChartPoly f(&cx, g, dZ, dW);
  for (int i = 0; i < 40; ++i) {
    ChartKey k{(int)(rng() % (dZ / 2 + 1)), 0, (int)(rng() % (dW + 1)), 0};
    if (g == 2) {
      k[1] = (int)(rng() % (dZ / 2 + 1));
      k[3] = (int)(rng() % (dW + 1));
    }
    f.add_to(k, random_element(cx, rng));
  }
  return f;
}

}  // namespace

TEST_CASE("torus action: identity, displayed formula, group law, inverse") {
  PadicCtx cx = PadicCtx::make(7, 1, 12);
  Rng rng(3);
  int g = 2, dZ = 8, dW = 2;
  ChartPoly f = random_chart(cx, g, dZ, dW, rng);
  // act(1, f) = f
  std::vector<TorusUnit> one = {{1, UnramElem::zero(cx)}, {1, UnramElem::zero(cx)}};
  CHECK(agreement_valuation(torus_act(one, f), f) == cx.M);
  // act(lambda, Z) = (lambda-1)/p^n + lambda Z
  ChartPoly z(&cx, g, dZ, dW);
  z.set({1, 0, 0, 0}, UnramElem::one(cx));
  TorusUnit l0{1, random_element(cx, rng)};
  std::vector<TorusUnit> lam = {l0, {1, random_element(cx, rng)}};
  ChartPoly az = torus_act(lam, z);
  CHECK(az.get({0, 0, 0, 0}) == l0.c);
  CHECK(az.get({1, 0, 0, 0}) == l0.lambda());
  // group law and inverse
  std::vector<TorusUnit> mu = {{1, random_element(cx, rng)}, {1, random_element(cx, rng)}};
  std::vector<TorusUnit> lm = {torus_mul(lam[0], mu[0]), torus_mul(lam[1], mu[1])};
  CHECK(agreement_valuation(torus_act(lam, torus_act(mu, f)), torus_act(lm, f)) == cx.M);
  std::vector<TorusUnit> li = {torus_inv(lam[0]), torus_inv(lam[1])};
  CHECK(agreement_valuation(torus_act(lam, torus_act(li, f)), f) == cx.M);
  // W scales by lambda
  ChartPoly w(&cx, g, dZ, dW);
  w.set({0, 0, 1, 0}, UnramElem::one(cx));
  CHECK(torus_act(lam, w).get({0, 0, 1, 0}) == lam[0].lambda());
}

TEST_CASE("isotypic generators and the bare-Z witness") {
  int M = 10;
  PadicCtx cx = PadicCtx::make(7, 1, M + 4);
  int dZ = M + 6, dW = 3;
  Rng rng(7);
  for (int g = 1; g <= 2; ++g) {
    ChartWeight k;
    k.n = 1;
    for (int s = 0; s < g; ++s) k.u.push_back(random_element(cx, rng));
    // the character generator itself is isotypic
    ChartPoly gen = chart_char_generator(cx, k, g, dZ, dW);
    CHECK(isotypic_check(gen, k, M));
    // V^i times the generator is isotypic; mod p it is W^i
    std::array<int, 2> ideg{1, g == 2 ? 2 : 0};
    ChartPoly vb = chart_v_basis(cx, k, g, ideg, dZ, dW);
    CHECK(isotypic_check(vb, k, M));
    ChartPoly wmono(&cx, g, dZ, dW);
    wmono.set({0, 0, ideg[0], ideg[1]}, UnramElem::one(cx));
    CHECK(agreement_valuation(vb, wmono) >= 1);
    // a bare Z coordinate is not isotypic, even for the trivial weight
    ChartPoly z(&cx, g, dZ, dW);
    z.set({1, 0, 0, 0}, UnramElem::one(cx));
    CHECK(!isotypic_check(z, k, M));
    ChartWeight ktriv;
    ktriv.n = 1;
    for (int s = 0; s < g; ++s) ktriv.u.push_back(UnramElem::zero(cx));
    CHECK(!isotypic_check(z, ktriv, M));
    // scaling by a unit does not change the verdict
    CHECK(isotypic_check(vb.scaled(random_unit(cx, rng)), k, M));
  }
}

TEST_CASE("span report") {
  int M = 8;
  PadicCtx cx = PadicCtx::make(7, 1, M + 4);
  int dZ = M + 6, dW = 3;
  Rng rng(11);
  // d = 0: a single generator
  ChartWeight k1;
  k1.n = 1;
  k1.u = {random_element(cx, rng)};
  SpanReport r0 = isotypic_span_check(cx, k1, 1, 0, dZ, dW, M);
  CHECK(r0.dimension == 1);
  CHECK(r0.all_isotypic);
  CHECK(r0.independent_mod_p);
  // elliptic chart, d = 2: three independent isotypic vectors
  SpanReport r2 = isotypic_span_check(cx, k1, 1, 2, dZ, dW, M);
  CHECK(r2.dimension == 3);
  CHECK(r2.all_isotypic);
  CHECK(r2.independent_mod_p);
  // dimensions are monotone in d
  SpanReport r1 = isotypic_span_check(cx, k1, 1, 1, dZ, dW, M);
  CHECK(r1.dimension < r2.dimension);
}
