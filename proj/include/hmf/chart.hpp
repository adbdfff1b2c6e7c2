#pragma once

// Local coordinate model of the vector bundle with marked sections and
// marked splitting: polynomials in Z_sigma, W_sigma with the torus action
//   lambda * Z = (lambda-1)/p^n + lambda Z,   lambda * W = lambda W
// and the k-isotypic basis V^i k(1+p^n Z), V = W/(1+p^n Z).

#include "hmf/padic.hpp"

#include <array>
#include <map>
#include <vector>

namespace hmf {

using ChartKey = std::array<int, 4>;  // (z_0, z_1, w_0, w_1); unused slots stay 0

class ChartPoly {
 public:
  ChartPoly() = default;
  ChartPoly(const PadicCtx* cx, int g, int dZ, int dW) : cx_(cx), g_(g), dZ_(dZ), dW_(dW) {}

  const PadicCtx& ctx() const { return *cx_; }
  int vars() const { return g_; }
  int dz() const { return dZ_; }
  int dw() const { return dW_; }
  const std::map<ChartKey, UnramElem>& coeffs() const { return c_; }

  UnramElem get(ChartKey k) const;
  void add_to(ChartKey k, const UnramElem& v);  // silently drops beyond dZ/dW
  void set(ChartKey k, const UnramElem& v);

  ChartPoly operator+(const ChartPoly& o) const;
  ChartPoly operator-(const ChartPoly& o) const;
  ChartPoly scaled(const UnramElem& s) const;
  bool is_zero() const;
  int min_val() const;

  static ChartPoly one(const PadicCtx& cx, int g, int dZ, int dW);

 private:
  const PadicCtx* cx_ = nullptr;
  int g_ = 1, dZ_ = 0, dW_ = 0;
  std::map<ChartKey, UnramElem> c_;
};

ChartPoly chart_mul(const ChartPoly& a, const ChartPoly& b);
int agreement_valuation(const ChartPoly& a, const ChartPoly& b);

// 1-units 1 + p^n c with exact group law on the c-coordinate
struct TorusUnit {
  int n = 1;
  UnramElem c;
  UnramElem lambda() const;
};
TorusUnit torus_mul(const TorusUnit& a, const TorusUnit& b);
TorusUnit torus_inv(const TorusUnit& a);

// the torus action by one 1-unit per variable
ChartPoly torus_act(const std::vector<TorusUnit>& lam, const ChartPoly& f);

// weight exponents for the chart are supplied directly (one per variable)
struct ChartWeight {
  std::vector<UnramElem> u;
  int n = 1;
};

// k(lambda) = prod exp(u_sigma log lambda_sigma)
UnramElem chart_char_value(const ChartWeight& k, const std::vector<TorusUnit>& lam);

// the generator k(1 + p^n Z) = prod exp(u_sigma log(1 + p^n Z_sigma))
ChartPoly chart_char_generator(const PadicCtx& cx, const ChartWeight& k, int g, int dZ, int dW);

// V^i k(1+p^n Z) with V_sigma = W_sigma (1 + p^n Z_sigma)^{-1}
ChartPoly chart_v_basis(const PadicCtx& cx, const ChartWeight& k, int g,
                        const std::array<int, 2>& ideg, int dZ, int dW);

// act(gamma, f) = k(gamma) f for the topological generator gamma = 1 + p^n
// (diagonally), compared at the given precision
bool isotypic_check(const ChartPoly& f, const ChartWeight& k, int target_prec);

struct SpanReport {
  int dimension = 0;
  bool all_isotypic = false;
  bool independent_mod_p = false;
};

// checks every V^i k(1+p^nZ), |i| <= d: isotypy under the generator action,
// and mod-p independence via W-leading triangularity (V^i k = W^i mod p)
SpanReport isotypic_span_check(const PadicCtx& cx, const ChartWeight& k, int g, int d, int dZ,
                               int dW, int target_prec);

}  // namespace hmf
