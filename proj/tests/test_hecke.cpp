#include "hmf/hecke.hpp"

#include <doctest.h>

using namespace hmf;

namespace {

struct Fx {
  HilbertCtx hc;
  SyntheticBuilder builder;
  EigenData ed;
  QExp g;
  Fx(i64 p, i64 T, i64 k, std::uint64_t seed)
      : hc(HilbertCtx::make(2, p, 12)),
        builder(hc, (T / 2 + 2) * (T / 2 + 2)),
        ed(),
        g() {
    Rng rng(seed);
    ed = random_eigen_data(hc, k, (T / 2 + 2) * (T / 2 + 2), rng);
    g = builder.eigenform(ed, T);
  }
};

}  // namespace

TEST_CASE("U and V index maps") {
  HilbertCtx hc = HilbertCtx::make(2, 7, 8);
  QExp g(&hc, 70);
  MonoidIdx b{4, 1};
  g.set(hc.F.mul_int(b, 7), UnramElem::one(hc.K()));
  QExp u = u_full(g);
  CHECK(u.get(b) == UnramElem::one(hc.K()));
  CHECK(u.coeffs().size() == 1);
  // U of an index outside p * lattice vanishes
  QExp h(&hc, 70);
  h.set({4, 1}, UnramElem::one(hc.K()));
  CHECK(u_full(h).is_zero());
  // V fixes beta = 0
  QExp c(&hc, 10);
  c.set({0, 0}, UnramElem::from_int(hc.K(), 3));
  CHECK(v_full(c).get({0, 0}) == UnramElem::from_int(hc.K(), 3));
  // partial: division by x_1 = 3 - sqrt 2 side, verified by re-multiplying
  QExp s(&hc, 40);
  MonoidIdx beta{2, 1};
  s.set(hc.F.mul(hc.U.x[0], beta), UnramElem::from_int(hc.K(), 9));
  QExp up = u_partial(s, 0);
  CHECK(up.get(beta) == UnramElem::from_int(hc.K(), 9));
  // one-sided inverse: U V = id but V U != id generically
  Rng rng(5);
  QExp r(&hc, 10);
  for (MonoidIdx x : hc.F.enumerate_lattice(10))
    if (!hc.F.is_zero(x)) r.set(x, random_element(hc.K(), rng));
  CHECK(agreement_valuation(u_full(v_full(r)), r) == hc.K().M);
  CHECK(agreement_valuation(v_full(u_full(r)).truncated(10), r) < hc.K().M);
}

TEST_CASE("depletion support is exact and idempotent") {
  Fx fx(7, 40, 2, 101);
  const HilbertCtx& hc = fx.hc;
  QExp dep = deplete(fx.g, {0, 1});
  for (const auto& [b, v] : fx.g.coeffs()) {
    bool killed = prime_valuation(hc.F, hc.U, b, 0) >= 1 ||
                  prime_valuation(hc.F, hc.U, b, 1) >= 1;
    if (killed)
      CHECK(dep.get(b).is_zero());
    else
      CHECK(dep.get(b) == v);
  }
  CHECK(agreement_valuation(deplete(dep, {0, 1}), dep) == hc.K().M);
  CHECK(u_partial(deplete(fx.g, {0}), 0).is_zero());
  CHECK(u_full(deplete(fx.g, {0, 1})).is_zero());
}

TEST_CASE("synthetic eigenforms carry the prescribed Hecke data") {
  Fx fx(7, 40, 2, 202);
  const HilbertCtx& hc = fx.hc;
  // the coefficient at a prime ideal equals the seeded value
  auto primes = fx.builder.primes();
  for (size_t j = 0; j < primes.size(); ++j) {
    if (primes[j].q == hc.p) continue;
    if (hc.F.trace(primes[j].gen) > fx.g.trace_bound()) continue;
    auto it = fx.ed.seeds.find({primes[j].q, primes[j].tag});
    REQUIRE(it != fx.ed.seeds.end());
    CHECK(fx.g.get(primes[j].gen) == it->second);
  }
  // a(0) = 0 for the cuspidal model
  CHECK(fx.g.get({0, 0}).is_zero());
  // coefficients are constant on unit orbits by construction
  Rng rng(7);
  for (const auto& [b, v] : fx.g.coeffs()) {
    MonoidIdx moved = hc.F.mul(b, hc.F.eps_plus);
    if (hc.F.trace(moved) <= fx.g.trace_bound()) CHECK(fx.g.get(moved) == v);
  }
  // U_P g = a_P g - alpha beta V_P g (the eigen relation behind stabilization)
  for (int i = 0; i < 2; ++i) {
    auto [al, be] = fx.ed.p_roots[i];
    QExp lhs = u_partial(fx.g, i);
    QExp rhs = fx.g.scaled(al + be) -
               v_partial(fx.g, i).truncated(fx.g.trace_bound()).scaled(al * be);
    i64 B = std::min(lhs.trace_bound(), rhs.trace_bound());
    CHECK(agreement_valuation(lhs.truncated(B), rhs.truncated(B)) == hc.K().M);
  }
}

TEST_CASE("p-stabilization produces U-eigenvectors") {
  for (i64 p : {7, 5}) {
    Fx fx(p, 40, 2, 303 + p);
    const HilbertCtx& hc = fx.hc;
    for (size_t i = 0; i < hc.U.x.size(); ++i) {
      auto [al, be] = fx.ed.p_roots[i];
      QExp stab = p_stabilize(fx.g, be, (int)i);  // eigenvalue alpha
      QExp u = u_partial(stab, (int)i);
      QExp expect = stab.truncated(u.trace_bound()).scaled(al);
      CHECK(agreement_valuation(u, expect) == hc.K().M);
      // depletion forgets the stabilization
      QExp d1 = deplete(stab, {(int)i});
      QExp d2 = deplete(fx.g.truncated(stab.trace_bound()), {(int)i});
      i64 B = std::min(d1.trace_bound(), d2.trace_bound());
      CHECK(agreement_valuation(d1.truncated(B), d2.truncated(B)) == hc.K().M);
      // stabilizing with 0 is the identity
      CHECK(agreement_valuation(p_stabilize(fx.g, UnramElem::zero(hc.K()), (int)i),
                                fx.g) == hc.K().M);
    }
  }
}

TEST_CASE("inconsistent eigen data is rejected") {
  HilbertCtx hc = HilbertCtx::make(2, 7, 12);
  SyntheticBuilder builder(hc, 100);
  Rng rng(11);
  EigenData ed = random_eigen_data(hc, 2, 100, rng);
  ed.p_roots[0].second = ed.p_roots[0].second + UnramElem::one(hc.K());
  CHECK_THROWS_AS(builder.eigenform(ed, 10), Error);
}

TEST_CASE("elliptic synthetic eigenforms on the Q-side") {
  PadicCtx cx = PadicCtx::make(7, 1, 12);
  Rng rng(13);
  EllipticEigenData d = random_elliptic_eigen_data(cx, 7, 4, 60, rng);
  QLine f = elliptic_eigenform(cx, 7, d, 60);
  CHECK(f.get(1) == UnramElem::one(cx));
  CHECK(f.get(7) == d.alpha + d.beta);
  // multiplicativity at coprime indices
  CHECK(f.get(6) == f.get(2) * f.get(3));
  CHECK(f.get(35) == f.get(5) * f.get(7));
  // Hecke recursion at a prime square: a_{q^2} = a_q^2 - q^{k-1} chi
  CHECK(f.get(4) == f.get(2) * f.get(2) - UnramElem::from_int(cx, 2).pow_i(3));
  // stabilization is a U_p-eigenvector
  QLine stab = qline_stabilize(f, d.beta, 7);
  CHECK(agreement_valuation(qline_U(stab, 7), stab.truncated(stab.bound() / 7).scaled(d.alpha)) ==
        cx.M);
}
