#include "hmf/weight.hpp"

namespace hmf {

bool Weight::operator==(const Weight& w) const {
  if (u.size() != w.u.size() || chi != w.chi || n != w.n) return false;
  for (size_t i = 0; i < u.size(); ++i)
    if (u[i] != w.u[i]) return false;
  return true;
}

i64 torsion_order(const SplittingData& S, int prime_idx) {
  i64 q = 1;
  for (int i = 0; i < S.fdeg[prime_idx]; ++i) q *= S.ctx().p;
  return q - 1;
}

Weight classical_weight(const SplittingData& S, const std::vector<i64>& k) {
  if ((int)k.size() != 2) fail(ErrKind::Config, "expected one exponent per embedding");
  Weight w;
  for (i64 ki : k) w.u.push_back(UnramElem::from_int(S.ctx(), ki));
  if (S.type == SplitType::Split) {
    // per split prime the torsion character is omega^{k_i}
    w.chi = {((k[0] % torsion_order(S, 0)) + torsion_order(S, 0)) % torsion_order(S, 0),
             ((k[1] % torsion_order(S, 1)) + torsion_order(S, 1)) % torsion_order(S, 1)};
  } else {
    // sigma_2 = Frobenius o sigma_1, so t^{k} has torsion omega^{k_1 + p k_2}
    i64 ord = torsion_order(S, 0);
    w.chi = {(((k[0] + S.ctx().p * k[1]) % ord) + ord) % ord};
  }
  w.n = 1;
  return w;
}

Weight trivial_weight(const SplittingData& S) { return classical_weight(S, {0, 0}); }

Weight weight_shift(const SplittingData& S, const Weight& w, int sigma, i64 amount) {
  Weight r = w;
  r.u[sigma] = r.u[sigma] + UnramElem::from_int(S.ctx(), amount);
  int pi = S.prime_of_sigma(sigma);
  i64 ord = torsion_order(S, pi);
  i64 mult = 1;
  if (S.type == SplitType::Inert && sigma == 1) mult = S.ctx().p;  // Frobenius twist
  r.chi[pi] = ((r.chi[pi] + amount % ord * mult) % ord + ord) % ord;
  return r;
}

int analyticity_level(const SplittingData& S, const Weight& w) {
  (void)S;
  int minval = 1 << 20;
  for (const auto& us : w.u) minval = std::min(minval, us.val());
  if (minval < 0) fail(ErrKind::Domain, "non-integral exponent");
  // val(log t) >= n for t = 1 mod p^n (p >= 3), so integral u gives n = 1
  return 1;
}

namespace {

// Teichmuller character of the residue field of prime i, evaluated at a
// unit t of that completion, raised to the stored exponent.
UnramElem torsion_value(const SplittingData& S, const Weight& w, int prime_idx,
                        const UnramElem& t) {
  UnramElem om = teichmuller(t);
  i64 e = w.chi[prime_idx] % torsion_order(S, prime_idx);
  return om.pow_i(e);
}

}  // namespace

UnramElem eval_character(const SplittingData& S, const Weight& w,
                         const std::vector<UnramElem>& t) {
  if ((int)t.size() != S.h()) fail(ErrKind::Config, "one unit per prime above p expected");
  for (const auto& ti : t)
    if (!ti.is_unit()) fail(ErrKind::Domain, "eval_character: non-unit argument");
  UnramElem acc = UnramElem::one(S.ctx());
  // torsion part
  for (int i = 0; i < S.h(); ++i) acc *= torsion_value(S, w, i, t[i]);
  // analytic part: prod over embeddings of exp(u_sigma log <sigma(t_i)>)
  for (int sigma = 0; sigma < 2; ++sigma) {
    const UnramElem& ti = t[S.prime_of_sigma(sigma)];
    UnramElem emb = (S.type == SplitType::Inert && sigma == 1) ? ti.frobenius() : ti;
    UnramElem one_unit = one_unit_part(emb);
    acc *= padic_exp(w.u[sigma] * padic_log(one_unit));
  }
  return acc;
}

UnramElem eval_analytic_at_embeddings(const SplittingData& S, const Weight& w,
                                      const std::vector<UnramElem>& t_sigma) {
  UnramElem acc = UnramElem::one(S.ctx());
  for (int sigma = 0; sigma < 2; ++sigma)
    acc *= padic_exp(w.u[sigma] * padic_log(t_sigma[sigma]));
  return acc;
}

Weight restrict_to_F(const SplittingData& S, const Weight& w) {
  Weight r;
  r.u = {w.u[0] + w.u[1]};
  i64 pm1 = S.ctx().p - 1;
  if (S.type == SplitType::Split) {
    r.chi = {((w.chi[0] + w.chi[1]) % pm1 + pm1) % pm1};
  } else {
    // omega_{p^2} restricted to Z_p^x is omega, exponent mod p-1
    r.chi = {(w.chi[0] % pm1 + pm1) % pm1};
  }
  r.n = w.n;
  return r;
}

}  // namespace hmf
