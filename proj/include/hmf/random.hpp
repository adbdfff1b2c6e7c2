#pragma once

#include "hmf/padic.hpp"

#include <random>

namespace hmf {

using Rng = std::mt19937_64;

inline UnramElem random_element(const PadicCtx& cx, Rng& rng) {
  std::vector<u128> co(cx.f);
  for (int i = 0; i < cx.f; ++i) {
    u128 v = (u128(rng()) << 64) | u128(rng());
    co[i] = v % cx.pM;
  }
  return UnramElem::from_coords(cx, co);
}

inline UnramElem random_unit(const PadicCtx& cx, Rng& rng) {
  for (;;) {
    UnramElem e = random_element(cx, rng);
    if (e.is_unit()) return e;
  }
}

inline UnramElem random_one_unit(const PadicCtx& cx, Rng& rng) {
  UnramElem e = random_element(cx, rng);
  // 1 + p * e
  return UnramElem::one(cx) + e.mul_int(cx.p);
}

}  // namespace hmf
