#include "hmf/weight.hpp"
#include "hmf/random.hpp"

#include <doctest.h>

using namespace hmf;

namespace {

struct Fixture {
  RealQuadField F = RealQuadField::make(2);
  SplittingData S;
  Fixture(i64 p, int M) { S = splitting_type(F, p, M); }
};

}  // namespace

TEST_CASE("trivial weight evaluates to 1") {
  Fixture fx(7, 8);
  Weight w = trivial_weight(fx.S);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    std::vector<UnramElem> t = {random_unit(fx.S.ctx(), rng), random_unit(fx.S.ctx(), rng)};
    CHECK(eval_character(fx.S, w, t) == UnramElem::one(fx.S.ctx()));
  }
}

TEST_CASE("classical parallel weight matches integer powers") {
  for (i64 p : {7, 5}) {
    Fixture fx(p, 10);
    Weight w = classical_weight(fx.S, {3, 3});
    const PadicCtx& cx = fx.S.ctx();
    // t = 1+p diagonally: value is (1+p)^{3g} by the integer-power oracle
    std::vector<UnramElem> t(fx.S.h(), UnramElem::from_int(cx, 1 + p));
    UnramElem got = eval_character(fx.S, w, t);
    UnramElem expect = UnramElem::from_int(cx, 1 + p).pow_i(6);
    CHECK(got == expect);
    // and on random integral units via integer exponentiation
    Rng rng(7);
    for (int i = 0; i < 10; ++i) {
      i64 a = 1 + (i64)(rng() % 50);
      if (a % p == 0) continue;
      std::vector<UnramElem> tt(fx.S.h(), UnramElem::from_int(cx, a));
      UnramElem v = eval_character(fx.S, w, tt);
      UnramElem e = fx.S.type == SplitType::Split
                        ? UnramElem::from_int(cx, a).pow_i(6)
                        : UnramElem::from_int(cx, a).pow_i(6);
      CHECK(v == e);
    }
  }
}

TEST_CASE("character multiplicativity in t and in k") {
  Fixture fx(7, 10);
  const PadicCtx& cx = fx.S.ctx();
  Rng rng(11);
  Weight w = classical_weight(fx.S, {2, 5});
  for (int i = 0; i < 30; ++i) {
    std::vector<UnramElem> t = {random_unit(cx, rng), random_unit(cx, rng)};
    std::vector<UnramElem> s = {random_unit(cx, rng), random_unit(cx, rng)};
    std::vector<UnramElem> ts = {t[0] * s[0], t[1] * s[1]};
    CHECK(eval_character(fx.S, w, ts) ==
          eval_character(fx.S, w, t) * eval_character(fx.S, w, s));
  }
  // adding exponents multiplies values
  Weight w1 = classical_weight(fx.S, {2, 0});
  Weight w2 = classical_weight(fx.S, {3, 4});
  Weight w12 = classical_weight(fx.S, {5, 4});
  std::vector<UnramElem> t = {random_unit(cx, rng), random_unit(cx, rng)};
  CHECK(eval_character(fx.S, w12, t) ==
        eval_character(fx.S, w1, t) * eval_character(fx.S, w2, t));
}

TEST_CASE("weight shift") {
  Fixture fx(7, 8);
  Weight k = classical_weight(fx.S, {5, 2});
  CHECK(weight_shift(fx.S, k, 0, 0) == k);
  CHECK(weight_shift(fx.S, weight_shift(fx.S, k, 0, 2), 0, -2) == k);
  Weight k2 = weight_shift(fx.S, k, 0, 2);
  CHECK(k2.u[0] == UnramElem::from_int(fx.S.ctx(), 7));
  CHECK(k2.u[1] == k.u[1]);
  CHECK(weight_shift(fx.S, k, 0, 2) == classical_weight(fx.S, {7, 2}));
}

TEST_CASE("analyticity level") {
  Fixture fx(7, 8);
  Weight k = classical_weight(fx.S, {9, 1});
  CHECK(analyticity_level(fx.S, k) == 1);
  // scaling u by p cannot increase the level
  Weight kp = k;
  kp.u[0] = k.u[0].mul_int(7);
  kp.u[1] = k.u[1].mul_int(7);
  CHECK(analyticity_level(fx.S, kp) <= analyticity_level(fx.S, k));
}

TEST_CASE("restriction to the subfield weight") {
  for (i64 p : {7, 5}) {
    Fixture fx(p, 8);
    Weight k = classical_weight(fx.S, {3, 4});
    Weight r = restrict_to_F(fx.S, k);
    CHECK(r.u.size() == 1);
    CHECK(r.u[0] == UnramElem::from_int(fx.S.ctx(), 7));
    CHECK(restrict_to_F(fx.S, classical_weight(fx.S, {0, 0})).u[0].is_zero());
    // restriction commutes with shifting
    Weight a = restrict_to_F(fx.S, weight_shift(fx.S, k, 0, 2));
    CHECK(a.u[0] == UnramElem::from_int(fx.S.ctx(), 9));
    CHECK(a.chi[0] == (r.chi[0] + 2) % (p - 1));
  }
}
