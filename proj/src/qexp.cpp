#include "hmf/qexp.hpp"

namespace hmf {

HilbertCtx HilbertCtx::make(i64 D, i64 p, int M) {
  HilbertCtx hc;
  hc.F = RealQuadField::make(D);
  hc.S = splitting_type(hc.F, p, M);
  hc.U = choose_uniformizers(hc.F, hc.S, p);
  hc.p = p;
  return hc;
}

UnramElem QExp::get(MonoidIdx b) const {
  auto it = c_.find(b);
  if (it == c_.end()) return UnramElem::zero(hc_->K());
  return it->second;
}

void QExp::set(MonoidIdx b, const UnramElem& v) {
  if (!in_window(b)) fail(ErrKind::TruncationOverflow, "QExp::set beyond trace bound");
  if (v.is_zero())
    c_.erase(b);
  else
    c_[b] = v;
}

void QExp::add_to(MonoidIdx b, const UnramElem& v) {
  if (v.is_zero()) return;
  if (!in_window(b)) fail(ErrKind::TruncationOverflow, "QExp::add_to beyond trace bound");
  auto it = c_.find(b);
  if (it == c_.end()) {
    c_[b] = v;
  } else {
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
}

QExp QExp::truncated(i64 new_bound) const {
  QExp r(hc_, new_bound);
  for (const auto& [b, v] : c_)
    if (hc_->F.trace(b) <= new_bound) r.c_[b] = v;
  return r;
}

QExp QExp::operator+(const QExp& o) const {
  QExp r = truncated(std::min(T_, o.T_));
  for (const auto& [b, v] : o.c_)
    if (r.in_window(b)) r.add_to(b, v);
  return r;
}

QExp QExp::operator-(const QExp& o) const {
  QExp r = truncated(std::min(T_, o.T_));
  for (const auto& [b, v] : o.c_)
    if (r.in_window(b)) r.add_to(b, -v);
  return r;
}

QExp QExp::scaled(const UnramElem& s) const {
  QExp r(hc_, T_);
  for (const auto& [b, v] : c_) {
    UnramElem t = v * s;
    if (!t.is_zero()) r.c_[b] = t;
  }
  return r;
}

bool QExp::is_zero() const {
  for (const auto& [b, v] : c_)
    if (!v.is_zero()) return false;
  return true;
}

int QExp::min_val() const {
  int mv = hc_->K().M;
  for (const auto& [b, v] : c_) mv = std::min(mv, v.val());
  return mv;
}

QExp qexp_mul(const QExp& a, const QExp& b, i64 out_bound) {
  if (out_bound > std::min(a.trace_bound(), b.trace_bound()))
    fail(ErrKind::TruncationOverflow, "qexp_mul: requested bound exceeds inputs");
  const HilbertCtx& hc = a.hctx();
  QExp r(&hc, out_bound);
  for (const auto& [ba, va] : a.coeffs()) {
    i64 ta = hc.F.trace(ba);
    if (ta > out_bound) continue;
    for (const auto& [bb, vb] : b.coeffs()) {
      if (ta + hc.F.trace(bb) > out_bound) continue;
      r.add_to(hc.F.add(ba, bb), va * vb);
    }
  }
  return r;
}

QExp theta_sigma(const QExp& g, int sigma) {
  const HilbertCtx& hc = g.hctx();
  QExp r(&hc, g.trace_bound());
  for (const auto& [b, v] : g.coeffs()) {
    UnramElem t = embed_sigma(hc.F, hc.S, b, sigma) * v;
    if (!t.is_zero()) r.set(b, t);
  }
  return r;
}

QExp NocForm::component(VDeg d) const {
  auto it = terms_.find(d);
  if (it == terms_.end()) return QExp(hc_, T_);
  return it->second;
}

void NocForm::set_component(VDeg d, const QExp& q) {
  if (d[0] + d[1] > order_) fail(ErrKind::TruncationOverflow, "NocForm: V-order bound exceeded");
  if (q.is_zero())
    terms_.erase(d);
  else
    terms_[d] = q;
}

void NocForm::add_component(VDeg d, const QExp& q) {
  if (q.is_zero()) return;
  if (d[0] + d[1] > order_) fail(ErrKind::TruncationOverflow, "NocForm: V-order bound exceeded");
  auto it = terms_.find(d);
  if (it == terms_.end())
    terms_[d] = q;
  else {
    it->second = it->second + q;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int NocForm::order() const {
  int o = 0;
  for (const auto& [d, q] : terms_)
    if (!q.is_zero()) o = std::max(o, d[0] + d[1]);
  return o;
}

NocForm NocForm::operator+(const NocForm& o) const {
  NocForm r(hc_, w_, std::max(order_, o.order_), std::min(T_, o.T_));
  for (const auto& [d, q] : terms_) r.add_component(d, q.truncated(r.T_));
  for (const auto& [d, q] : o.terms_) r.add_component(d, q.truncated(r.T_));
  return r;
}

NocForm NocForm::operator-(const NocForm& o) const {
  NocForm r(hc_, w_, std::max(order_, o.order_), std::min(T_, o.T_));
  for (const auto& [d, q] : terms_) r.add_component(d, q.truncated(r.T_));
  for (const auto& [d, q] : o.terms_) r.add_component(d, q.truncated(r.T_).scaled(-UnramElem::one(hc_->K())));
  return r;
}

NocForm NocForm::scaled(const UnramElem& s) const {
  NocForm r(hc_, w_, order_, T_);
  for (const auto& [d, q] : terms_) {
    QExp t = q.scaled(s);
    if (!t.is_zero()) r.terms_[d] = t;
  }
  return r;
}

bool NocForm::is_zero() const {
  for (const auto& [d, q] : terms_)
    if (!q.is_zero()) return false;
  return true;
}

int NocForm::min_val() const {
  int mv = hc_->K().M;
  for (const auto& [d, q] : terms_) mv = std::min(mv, q.min_val());
  return mv;
}

NocForm noc_from_modular(const QExp& g, const Weight& w) {
  NocForm r(&g.hctx(), w, 0, g.trace_bound());
  if (!g.is_zero()) r.set_component({0, 0}, g);
  return r;
}

int agreement_valuation(const QExp& a, const QExp& b) { return (a - b).min_val(); }

int agreement_valuation(const NocForm& a, const NocForm& b) {
  int mv = a.hctx().K().M;
  NocForm d = a - b;
  for (const auto& [deg, q] : d.terms()) mv = std::min(mv, q.min_val());
  return mv;
}

// --- Q-side ---------------------------------------------------------------

UnramElem QLine::get(i64 m) const {
  auto it = c_.find(m);
  if (it == c_.end()) return UnramElem::zero(*cx_);
  return it->second;
}

void QLine::set(i64 m, const UnramElem& v) {
  if (m > B_ || m < 0) fail(ErrKind::TruncationOverflow, "QLine::set beyond bound");
  if (v.is_zero())
    c_.erase(m);
  else
    c_[m] = v;
}

void QLine::add_to(i64 m, const UnramElem& v) {
  if (v.is_zero()) return;
  if (m > B_ || m < 0) fail(ErrKind::TruncationOverflow, "QLine::add_to beyond bound");
  auto it = c_.find(m);
  if (it == c_.end())
    c_[m] = v;
  else {
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
}

QLine QLine::truncated(i64 nb) const {
  QLine r(cx_, nb);
  for (const auto& [m, v] : c_)
    if (m <= nb) r.c_[m] = v;
  return r;
}

QLine QLine::operator+(const QLine& o) const {
  QLine r = truncated(std::min(B_, o.B_));
  for (const auto& [m, v] : o.c_)
    if (m <= r.B_) r.add_to(m, v);
  return r;
}

QLine QLine::operator-(const QLine& o) const {
  QLine r = truncated(std::min(B_, o.B_));
  for (const auto& [m, v] : o.c_)
    if (m <= r.B_) r.add_to(m, -v);
  return r;
}

QLine QLine::scaled(const UnramElem& s) const {
  QLine r(cx_, B_);
  for (const auto& [m, v] : c_) {
    UnramElem t = v * s;
    if (!t.is_zero()) r.c_[m] = t;
  }
  return r;
}

bool QLine::is_zero() const {
  for (const auto& [m, v] : c_)
    if (!v.is_zero()) return false;
  return true;
}

int QLine::min_val() const {
  int mv = cx_->M;
  for (const auto& [m, v] : c_) mv = std::min(mv, v.val());
  return mv;
}

QLine qline_mul(const QLine& a, const QLine& b, i64 out_bound) {
  if (out_bound > std::min(a.bound(), b.bound()))
    fail(ErrKind::TruncationOverflow, "qline_mul: requested bound exceeds inputs");
  QLine r(&a.ctx(), out_bound);
  for (const auto& [ma, va] : a.coeffs()) {
    if (ma > out_bound) continue;
    for (const auto& [mb, vb] : b.coeffs()) {
      if (ma + mb > out_bound) break;
      r.add_to(ma + mb, va * vb);
    }
  }
  return r;
}

QLine qline_theta(const QLine& g) {
  QLine r(&g.ctx(), g.bound());
  for (const auto& [m, v] : g.coeffs()) {
    UnramElem t = v.mul_int(m);
    if (!t.is_zero()) r.set(m, t);
  }
  return r;
}

QLine qline_U(const QLine& g, i64 p) {
  QLine r(&g.ctx(), g.bound() / p);
  for (const auto& [m, v] : g.coeffs())
    if (m % p == 0 && m / p <= r.bound()) r.set(m / p, v);
  return r;
}

QLine qline_V(const QLine& g, i64 p) {
  QLine r(&g.ctx(), g.bound() * p);
  for (const auto& [m, v] : g.coeffs()) r.set(m * p, v);
  return r;
}

int agreement_valuation(const QLine& a, const QLine& b) { return (a - b).min_val(); }

QLine QNoc::component(int d) const {
  auto it = terms_.find(d);
  if (it == terms_.end()) return QLine(cx_, B_);
  return it->second;
}

void QNoc::set_component(int d, const QLine& q) {
  if (d > order_) fail(ErrKind::TruncationOverflow, "QNoc: V-order bound exceeded");
  if (q.is_zero())
    terms_.erase(d);
  else
    terms_[d] = q;
}

void QNoc::add_component(int d, const QLine& q) {
  if (q.is_zero()) return;
  if (d > order_) fail(ErrKind::TruncationOverflow, "QNoc: V-order bound exceeded");
  auto it = terms_.find(d);
  if (it == terms_.end())
    terms_[d] = q;
  else {
    it->second = it->second + q;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int QNoc::order() const {
  int o = 0;
  for (const auto& [d, q] : terms_)
    if (!q.is_zero()) o = std::max(o, d);
  return o;
}

QNoc QNoc::operator+(const QNoc& o) const {
  QNoc r(cx_, w_, std::max(order_, o.order_), std::min(B_, o.B_));
  for (const auto& [d, q] : terms_) r.add_component(d, q.truncated(r.B_));
  for (const auto& [d, q] : o.terms_) r.add_component(d, q.truncated(r.B_));
  return r;
}

QNoc QNoc::operator-(const QNoc& o) const {
  QNoc r(cx_, w_, std::max(order_, o.order_), std::min(B_, o.B_));
  for (const auto& [d, q] : terms_) r.add_component(d, q.truncated(r.B_));
  for (const auto& [d, q] : o.terms_)
    r.add_component(d, q.truncated(r.B_).scaled(-UnramElem::one(*cx_)));
  return r;
}

QNoc QNoc::scaled(const UnramElem& s) const {
  QNoc r(cx_, w_, order_, B_);
  for (const auto& [d, q] : terms_) {
    QLine t = q.scaled(s);
    if (!t.is_zero()) r.terms_[d] = t;
  }
  return r;
}

bool QNoc::is_zero() const {
  for (const auto& [d, q] : terms_)
    if (!q.is_zero()) return false;
  return true;
}

int QNoc::min_val() const {
  int mv = cx_->M;
  for (const auto& [d, q] : terms_) mv = std::min(mv, q.min_val());
  return mv;
}

QNoc qnoc_from_line(const QLine& g, const Weight& wF) {
  QNoc r(&g.ctx(), wF, 0, g.bound());
  if (!g.is_zero()) r.set_component(0, g);
  return r;
}

int agreement_valuation(const QNoc& a, const QNoc& b) {
  QNoc d = a - b;
  int mv = a.ctx().M;
  for (const auto& [deg, q] : d.terms()) mv = std::min(mv, q.min_val());
  return mv;
}

QNoc qnoc_U(const QNoc& h, i64 p) {
  QNoc r(&h.ctx(), h.weight(), h.order_bound(), h.bound() / p);
  for (const auto& [d, q] : h.terms()) {
    QLine u = qline_U(q, p);
    UnramElem pw = UnramElem::from_int(h.ctx(), p).pow_i(d);
    r.set_component(d, u.scaled(pw));
  }
  return r;
}

QNoc qnoc_V(const QNoc& h, i64 p) {
  QNoc r(&h.ctx(), h.weight(), h.order_bound(), h.bound() * p);
  for (const auto& [d, q] : h.terms()) {
    QLine v(&h.ctx(), q.bound());
    for (const auto& [m, coef] : q.coeffs()) {
      if (coef.val() < d)
        fail(ErrKind::Domain, "qnoc_V: component not divisible by p^degree");
      v.set(m, coef.div_by_p_pow(d));
    }
    r.set_component(d, qline_V(v, p));
  }
  return r;
}

}  // namespace hmf
