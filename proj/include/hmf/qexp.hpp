#pragma once

// Truncated q-expansions over the totally positive monoid of a real
// quadratic field, nearly-overconvergent forms as V-polynomials over them,
// and their one-variable analogues on the Q-side of the diagonal.

#include "hmf/field.hpp"
#include "hmf/weight.hpp"

#include <array>
#include <map>

namespace hmf {

// Everything a q-expansion needs to know about its home: the field, the
// splitting of p, and the fixed totally positive uniformizers.
struct HilbertCtx {
  RealQuadField F;
  SplittingData S;
  Uniformizers U;
  i64 p = 0;

  const PadicCtx& K() const { return S.ctx(); }
  static HilbertCtx make(i64 D, i64 p, int M);
};

class QExp {
 public:
  QExp() = default;
  QExp(const HilbertCtx* hc, i64 trace_bound) : hc_(hc), T_(trace_bound) {}

  const HilbertCtx& hctx() const { return *hc_; }
  i64 trace_bound() const { return T_; }
  const std::map<MonoidIdx, UnramElem, MonoidIdxLess>& coeffs() const { return c_; }

  UnramElem get(MonoidIdx b) const;
  void set(MonoidIdx b, const UnramElem& v);
  void add_to(MonoidIdx b, const UnramElem& v);
  bool in_window(MonoidIdx b) const { return hc_->F.trace(b) <= T_; }

  QExp truncated(i64 new_bound) const;

  QExp operator+(const QExp& o) const;
  QExp operator-(const QExp& o) const;
  QExp scaled(const UnramElem& s) const;
  bool is_zero() const;

  // minimum coefficient valuation (M if empty/zero)
  int min_val() const;

 private:
  const HilbertCtx* hc_ = nullptr;
  i64 T_ = 0;
  std::map<MonoidIdx, UnramElem, MonoidIdxLess> c_;
};

// monoid convolution; output bound must be <= min of the input bounds
QExp qexp_mul(const QExp& a, const QExp& b, i64 out_bound);

// theta_sigma: coefficient at beta is multiplied by sigma(beta)
QExp theta_sigma(const QExp& g, int sigma);

// multidegree in the V_sigma variables
using VDeg = std::array<int, 2>;

class NocForm {
 public:
  NocForm() = default;
  NocForm(const HilbertCtx* hc, const Weight& w, int order_bound, i64 trace_bound)
      : hc_(hc), w_(w), order_(order_bound), T_(trace_bound) {}

  const HilbertCtx& hctx() const { return *hc_; }
  const Weight& weight() const { return w_; }
  void set_weight(const Weight& w) { w_ = w; }
  int order_bound() const { return order_; }
  i64 trace_bound() const { return T_; }
  const std::map<VDeg, QExp>& terms() const { return terms_; }

  QExp component(VDeg d) const;
  void set_component(VDeg d, const QExp& q);
  void add_component(VDeg d, const QExp& q);
  int order() const;  // max total degree with a nonzero component

  NocForm operator+(const NocForm& o) const;  // weights must agree
  NocForm operator-(const NocForm& o) const;
  NocForm scaled(const UnramElem& s) const;
  bool is_zero() const;
  int min_val() const;

 private:
  const HilbertCtx* hc_ = nullptr;
  Weight w_;
  int order_ = 0;
  i64 T_ = 0;
  std::map<VDeg, QExp> terms_;
};

NocForm noc_from_modular(const QExp& g, const Weight& w);

// agreement valuation: min over all components/coefficients of
// val(a - b); M when equal (weights are not compared)
int agreement_valuation(const NocForm& a, const NocForm& b);
int agreement_valuation(const QExp& a, const QExp& b);

// --- Q-side (F = Q chart) ------------------------------------------------

class QLine {
 public:
  QLine() = default;
  QLine(const PadicCtx* cx, i64 bound) : cx_(cx), B_(bound) {}

  const PadicCtx& ctx() const { return *cx_; }
  i64 bound() const { return B_; }
  const std::map<i64, UnramElem>& coeffs() const { return c_; }

  UnramElem get(i64 m) const;
  void set(i64 m, const UnramElem& v);
  void add_to(i64 m, const UnramElem& v);

  QLine truncated(i64 new_bound) const;
  QLine operator+(const QLine& o) const;
  QLine operator-(const QLine& o) const;
  QLine scaled(const UnramElem& s) const;
  bool is_zero() const;
  int min_val() const;

 private:
  const PadicCtx* cx_ = nullptr;
  i64 B_ = 0;
  std::map<i64, UnramElem> c_;
};

QLine qline_mul(const QLine& a, const QLine& b, i64 out_bound);
QLine qline_theta(const QLine& g);            // a_m -> m a_m
QLine qline_U(const QLine& g, i64 p);         // a_m -> a_{pm}, bound/p
QLine qline_V(const QLine& g, i64 p);         // a_m -> coefficient at pm, bound*p
int agreement_valuation(const QLine& a, const QLine& b);

class QNoc {
 public:
  QNoc() = default;
  QNoc(const PadicCtx* cx, const Weight& w, int order_bound, i64 bound)
      : cx_(cx), w_(w), order_(order_bound), B_(bound) {}

  const PadicCtx& ctx() const { return *cx_; }
  const Weight& weight() const { return w_; }
  void set_weight(const Weight& w) { w_ = w; }
  int order_bound() const { return order_; }
  i64 bound() const { return B_; }
  const std::map<int, QLine>& terms() const { return terms_; }

  QLine component(int d) const;
  void set_component(int d, const QLine& q);
  void add_component(int d, const QLine& q);
  int order() const;

  QNoc operator+(const QNoc& o) const;
  QNoc operator-(const QNoc& o) const;
  QNoc scaled(const UnramElem& s) const;
  bool is_zero() const;
  int min_val() const;

 private:
  const PadicCtx* cx_ = nullptr;
  Weight w_;
  int order_ = 0;
  i64 B_ = 0;
  std::map<int, QLine> terms_;
};

QNoc qnoc_from_line(const QLine& g, const Weight& wF);
int agreement_valuation(const QNoc& a, const QNoc& b);

// graded U_p on Q-side nearly-overconvergent forms: V-degree i picks up p^i
QNoc qnoc_U(const QNoc& h, i64 p);
// graded V_p: requires every degree-i component divisible by p^i
QNoc qnoc_V(const QNoc& h, i64 p);

}  // namespace hmf
