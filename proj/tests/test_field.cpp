#include "hmf/field.hpp"
#include "hmf/random.hpp"

#include <doctest.h>

using namespace hmf;

TEST_CASE("field construction and the narrow-class-number gate") {
  RealQuadField F = RealQuadField::make(2);
  CHECK(F.disc == 8);
  CHECK(F.eps_fund.m == 1);  // 1 + sqrt 2
  CHECK(F.eps_fund.n == 1);
  CHECK(F.eps_norm == -1);
  CHECK(F.norm(F.eps_plus) == 1);  // 3 + 2 sqrt 2
  CHECK(F.eps_plus.m == 3);
  RealQuadField F5 = RealQuadField::make(5);
  CHECK(F5.half_basis);
  CHECK(F5.disc == 5);
  CHECK(F5.eps_norm == -1);
  // norm +1 fundamental unit means narrow class number 2: rejected
  CHECK_THROWS_AS(RealQuadField::make(3), Error);
}

TEST_CASE("splitting type with Hensel-lifted roots") {
  RealQuadField F = RealQuadField::make(2);
  SplittingData S7 = splitting_type(F, 7, 4);
  CHECK(S7.type == SplitType::Split);
  CHECK(S7.wroot[0].coord(0) % 49 == u128(10));  // least seed 3 lifts to 10 mod 49
  CHECK(S7.wroot[1].coord(0) % 49 == u128(39));
  SplittingData S5 = splitting_type(F, 5, 4);
  CHECK(S5.type == SplitType::Inert);
  CHECK(S5.ctx().f == 2);
  CHECK_THROWS_AS(splitting_type(F, 2, 4), Error);
  try {
    splitting_type(F, 2, 4);
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::RamifiedPrime);
  }
  // split roots multiply to N(w) and sum to Tr(w)
  SplittingData S = splitting_type(F, 7, 8);
  CHECK(S.wroot[0] * S.wroot[1] == UnramElem::from_int(S.ctx(), F.nm_w));
  CHECK(S.wroot[0] + S.wroot[1] == UnramElem::from_int(S.ctx(), F.tr_w));
}

TEST_CASE("positive monoid enumeration") {
  RealQuadField F = RealQuadField::make(2);
  auto none = F.enumerate_positive(0);
  REQUIRE(none.size() == 1);
  CHECK(F.is_zero(none[0]));
  auto reps = F.enumerate_positive(4);
  auto has = [&](i64 m, i64 n) {
    for (auto b : reps)
      if (b.m == m && b.n == n) return true;
    return false;
  };
  CHECK(has(2, 0));
  // the orbit of 2 + sqrt 2 is represented (its canonical member under the
  // (trace, m, n) tie-break is the conjugate 2 - sqrt 2)
  CHECK((has(2, -1) || has(2, 1)));
  CHECK(F.unit_orbit_rep({2, 1}) == MonoidIdx{2, -1});
  CHECK(!has(1, 1));  // 1 + sqrt 2 has a negative embedding
  for (auto b : reps) {
    CHECK(F.is_s_positive(b));
    if (!F.is_zero(b)) CHECK(F.unit_orbit_rep(b) == b);
  }
  // monotone in the bound
  auto reps8 = F.enumerate_positive(8);
  for (auto b : reps) {
    bool found = false;
    for (auto c : reps8)
      if (c == b) found = true;
    CHECK(found);
  }
}

TEST_CASE("unit orbit representatives") {
  RealQuadField F = RealQuadField::make(2);
  CHECK(F.unit_orbit_rep({0, 0}) == MonoidIdx{0, 0});
  // (3 + 2 sqrt 2) * 2 reduces to 2
  MonoidIdx two{2, 0};
  MonoidIdx moved = F.mul(F.eps_plus, two);
  CHECK(F.unit_orbit_rep(moved) == two);
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    MonoidIdx b{(i64)(rng() % 30 + 1), (i64)(rng() % 15)};
    if (!F.is_s_positive(b)) continue;
    MonoidIdx r = F.unit_orbit_rep(b);
    CHECK(F.unit_orbit_rep(r) == r);
    CHECK(F.trace(r) <= F.trace(b));
  }
}

TEST_CASE("embeddings are ring homomorphisms") {
  RealQuadField F = RealQuadField::make(2);
  SplittingData S = splitting_type(F, 7, 8);
  // beta = 0 embeds to 0; the quoted example 2 + sqrt 2 -> 12 mod 49
  CHECK(embed_sigma(F, S, {0, 0}, 0).is_zero());
  SplittingData S2 = splitting_type(F, 7, 4);
  CHECK(embed_sigma(F, S2, {2, 1}, 0).coord(0) % 49 == u128(12));
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    MonoidIdx a{(i64)(rng() % 40) - 20, (i64)(rng() % 20) - 10};
    MonoidIdx b{(i64)(rng() % 40) - 20, (i64)(rng() % 20) - 10};
    for (int s = 0; s < 2; ++s) {
      CHECK(embed_sigma(F, S, F.mul(a, b), s) ==
            embed_sigma(F, S, a, s) * embed_sigma(F, S, b, s));
      CHECK(embed_sigma(F, S, F.add(a, b), s) ==
            embed_sigma(F, S, a, s) + embed_sigma(F, S, b, s));
    }
    // trace identity
    CHECK(embed_sigma(F, S, a, 0) + embed_sigma(F, S, a, 1) ==
          UnramElem::from_int(S.ctx(), F.trace(a)));
  }
  // inert: the two embeddings are Frobenius conjugate
  SplittingData SI = splitting_type(F, 5, 6);
  MonoidIdx b{3, 2};
  CHECK(embed_sigma(F, SI, b, 0).frobenius() == embed_sigma(F, SI, b, 1));
}

TEST_CASE("uniformizers") {
  RealQuadField F = RealQuadField::make(2);
  SplittingData S = splitting_type(F, 7, 8);
  Uniformizers U = choose_uniformizers(F, S, 7);
  REQUIRE(U.x.size() == 2);
  // the set {3 + sqrt 2, 3 - sqrt 2}, both totally positive, product 7
  CHECK(F.mul(U.x[0], U.x[1]) == MonoidIdx{7, 0});
  for (auto x : U.x) CHECK(F.is_tot_positive(x));
  CHECK(((U.x[0].m == 3 && std::abs((double)U.x[0].n) == 1)));
  // sigma_i(x_i) = 0 mod p labels
  CHECK(embed_sigma(F, S, U.x[0], 0).val() >= 1);
  CHECK(embed_sigma(F, S, U.x[1], 1).val() >= 1);
  CHECK(embed_sigma(F, S, U.x[0], 1).val() == 0);
  // inert: { p }
  SplittingData SI = splitting_type(F, 5, 6);
  Uniformizers UI = choose_uniformizers(F, SI, 5);
  REQUIRE(UI.x.size() == 1);
  CHECK(UI.x[0] == MonoidIdx{5, 0});
}

TEST_CASE("prime ideal tables and factorization") {
  RealQuadField F = RealQuadField::make(2);
  auto primes = prime_ideals_up_to(F, 60);
  // 7 splits: two entries; 5 inert: one of norm 25; 2 ramified
  int n7 = 0, n5 = 0, n2 = 0;
  for (const auto& pi : primes) {
    if (pi.q == 7) ++n7;
    if (pi.q == 5) ++n5;
    if (pi.q == 2) ++n2;
    CHECK(std::llabs(F.norm(pi.gen)) == pi.norm);
    CHECK(F.is_tot_positive(pi.gen));
  }
  CHECK(n7 == 2);
  CHECK(n5 == 1);
  CHECK(n2 == 1);
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    MonoidIdx b{(i64)(rng() % 12 + 1), (i64)(rng() % 6)};
    if (!F.is_tot_positive(b)) continue;
    if (std::llabs(F.norm(b)) > 60) continue;
    auto fac = factor_ideal(F, primes, b);
    // the norm is the product of the factor norms
    i64 nb = std::llabs(F.norm(b));
    i64 prod = 1;
    for (auto [j, e] : fac)
      for (int t = 0; t < e; ++t) prod *= primes[j].norm;
    CHECK(prod == nb);
  }
}
