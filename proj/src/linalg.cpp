#include "hmf/linalg.hpp"

namespace hmf {

LinSolveResult solve_mod_pM(std::vector<std::vector<UnramElem>> A, std::vector<UnramElem> b,
                            int loss_budget, int residual_floor) {
  const size_t rows = A.size();
  if (rows == 0) fail(ErrKind::Domain, "empty system");
  const size_t cols = A[0].size();
  if (b.size() != rows) fail(ErrKind::Domain, "rhs size mismatch");
  const PadicCtx& cx = b[0].ctx();
  const int M = cx.M;

  std::vector<std::vector<UnramElem>> A0 = A;  // for the residual check
  std::vector<UnramElem> b0 = b;

  std::vector<int> pivot_row(cols, -1);
  std::vector<bool> used(rows, false);
  int loss = 0;

  for (size_t j = 0; j < cols; ++j) {
    int best = -1, bestval = M;
    for (size_t i = 0; i < rows; ++i) {
      if (used[i]) continue;
      int v = A[i][j].val();
      if (v < bestval) {
        bestval = v;
        best = (int)i;
      }
    }
    if (best < 0 || bestval >= M)
      fail(ErrKind::IllConditioned, "rank-deficient system at column " + std::to_string(j));
    loss += bestval;
    if (loss > loss_budget)
      fail(ErrKind::IllConditioned, "pivot loss " + std::to_string(loss) + " exceeds budget");
    used[best] = true;
    pivot_row[j] = best;
    // eliminate column j from all other unused rows: row_i -= (a_ij / a_pj) row_p
    UnramElem piv = A[best][j];
    UnramElem piv_unit_inv = piv.div_by_p_pow(bestval).inv();
    for (size_t i = 0; i < rows; ++i) {
      if ((int)i == best || used[i]) continue;
      if (A[i][j].is_zero()) continue;
      if (A[i][j].val() < bestval)
        fail(ErrKind::IllConditioned, "pivot not minimal in column");  // cannot happen
      UnramElem factor = A[i][j].div_by_p_pow(bestval) * piv_unit_inv;
      for (size_t t = 0; t < cols; ++t) A[i][t] -= factor * A[best][t];
      b[i] -= factor * b[best];
    }
  }

  // back substitution in reverse column order
  std::vector<UnramElem> x(cols, UnramElem::zero(cx));
  for (size_t jj = cols; jj-- > 0;) {
    int r = pivot_row[jj];
    UnramElem rhs = b[r];
    for (size_t t = jj + 1; t < cols; ++t) rhs -= A[r][t] * x[t];
    UnramElem piv = A[r][jj];
    int v = piv.val();
    if (rhs.val() >= v)
      x[jj] = rhs.div_by_p_pow(v) * piv.div_by_p_pow(v).inv();
    // otherwise no exact solution at full precision; leave x_j = 0 and let
    // the residual check decide
  }

  // residual against the original system
  int rmin = M;
  for (size_t i = 0; i < rows; ++i) {
    UnramElem acc = b0[i];
    for (size_t t = 0; t < cols; ++t) acc -= A0[i][t] * x[t];
    rmin = std::min(rmin, acc.val());
  }
  if (rmin < residual_floor)
    fail(ErrKind::NotInSpan,
         "residual valuation " + std::to_string(rmin) + " below floor " +
             std::to_string(residual_floor));
  LinSolveResult res;
  res.x = std::move(x);
  res.digits_lost = loss;
  res.residual_val = rmin;
  return res;
}

}  // namespace hmf
