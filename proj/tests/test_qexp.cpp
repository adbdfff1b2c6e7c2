#include "hmf/qexp.hpp"
#include "hmf/random.hpp"

#include <doctest.h>

using namespace hmf;

namespace {

QExp random_sparse(const HilbertCtx& hc, i64 T, Rng& rng, int count) {
  QExp g(&hc, T);
  auto pts = hc.F.enumerate_lattice(T);
  for (int i = 0; i < count; ++i) {
    MonoidIdx b = pts[rng() % pts.size()];
    g.set(b, random_element(hc.K(), rng));
  }
  return g;
}

}  // namespace

TEST_CASE("theta_sigma") {
  HilbertCtx hc = HilbertCtx::make(2, 7, 4);
  QExp g(&hc, 6);
  g.set({0, 0}, UnramElem::from_int(hc.K(), 5));
  CHECK(theta_sigma(g, 0).is_zero());  // sigma(0) = 0
  QExp h(&hc, 6);
  h.set({2, 1}, UnramElem::one(hc.K()));
  CHECK(theta_sigma(h, 0).get({2, 1}).coord(0) % 49 == u128(12));  // 2 + 10 mod 49
  // diagonal multipliers commute
  HilbertCtx hc8 = HilbertCtx::make(2, 7, 8);
  Rng rng(3);
  QExp r = random_sparse(hc8, 10, rng, 30);
  CHECK(agreement_valuation(theta_sigma(theta_sigma(r, 0), 1),
                            theta_sigma(theta_sigma(r, 1), 0)) == hc8.K().M);
}

TEST_CASE("monoid multiplication against a dense convolution oracle") {
  HilbertCtx hc = HilbertCtx::make(2, 7, 8);
  Rng rng(7);
  i64 T = 10;
  QExp a = random_sparse(hc, T, rng, 25), b = random_sparse(hc, T, rng, 25);
  QExp ab = qexp_mul(a, b, T);
  // dense oracle: loop over all pairs of lattice points
  auto pts = hc.F.enumerate_lattice(T);
  QExp oracle(&hc, T);
  for (auto x : pts)
    for (auto y : pts) {
      if (hc.F.trace(x) + hc.F.trace(y) > T) continue;
      UnramElem v = a.get(x) * b.get(y);
      if (!v.is_zero()) oracle.add_to(hc.F.add(x, y), v);
    }
  CHECK(agreement_valuation(ab, oracle) == hc.K().M);
  // unit element, monoid law
  QExp one(&hc, T);
  one.set({0, 0}, UnramElem::one(hc.K()));
  CHECK(agreement_valuation(qexp_mul(a, one, T), a) == hc.K().M);
  // distributivity
  QExp c = random_sparse(hc, T, rng, 20);
  CHECK(agreement_valuation(qexp_mul(a + c, b, T), qexp_mul(a, b, T) + qexp_mul(c, b, T)) ==
        hc.K().M);
  // requesting a bound beyond the inputs overflows
  CHECK_THROWS_AS(qexp_mul(a, b, T + 1), Error);
}

TEST_CASE("theta is a derivation for the monoid product") {
  HilbertCtx hc = HilbertCtx::make(2, 7, 8);
  Rng rng(11);
  i64 T = 10;
  for (int trial = 0; trial < 5; ++trial) {
    QExp a = random_sparse(hc, T, rng, 20), b = random_sparse(hc, T, rng, 20);
    for (int s = 0; s < 2; ++s) {
      QExp lhs = theta_sigma(qexp_mul(a, b, T), s);
      QExp rhs = qexp_mul(theta_sigma(a, s), b, T) + qexp_mul(a, theta_sigma(b, s), T);
      CHECK(agreement_valuation(lhs, rhs) == hc.K().M);
    }
  }
}

TEST_CASE("nearly-overconvergent wrappers") {
  HilbertCtx hc = HilbertCtx::make(2, 7, 8);
  Rng rng(13);
  QExp g = random_sparse(hc, 8, rng, 15);
  Weight w = classical_weight(hc.S, {2, 2});
  NocForm h = noc_from_modular(g, w);
  CHECK(h.order() == 0);
  CHECK(agreement_valuation(h.component({0, 0}), g) == hc.K().M);
  NocForm z = noc_from_modular(QExp(&hc, 8), w);
  CHECK(z.is_zero());
  // component arithmetic
  NocForm sum = h + h;
  CHECK(agreement_valuation(sum.component({0, 0}), g + g) == hc.K().M);
  CHECK((h - h).is_zero());
}

TEST_CASE("q-side line expansions") {
  PadicCtx cx = PadicCtx::make(7, 1, 8);
  Rng rng(17);
  QLine a(&cx, 20), b(&cx, 20);
  for (i64 m = 0; m <= 20; ++m) {
    a.set(m, random_element(cx, rng));
    b.set(m, random_element(cx, rng));
  }
  // U V = id, V U keeps only p-divisible support
  CHECK(agreement_valuation(qline_U(qline_V(a, 7), 7), a) == cx.M);
  QLine vu = qline_V(qline_U(a, 7), 7).truncated(20);
  for (const auto& [m, v] : vu.coeffs()) CHECK(m % 7 == 0);
  // theta multiplies by the index
  CHECK(qline_theta(a).get(5) == a.get(5).mul_int(5));
  // convolution is commutative
  CHECK(agreement_valuation(qline_mul(a, b, 20), qline_mul(b, a, 20)) == cx.M);
}
