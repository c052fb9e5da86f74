#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tt/errors.hpp"
#include "tt/grid.hpp"
#include "tt/margins.hpp"

namespace tt {

struct DualVariables {
  std::vector<double> s;  // one per row
  std::vector<double> t;  // one per column
};

// The entropy-optimal fractional table for a set of margins, together with
// the dual certificate it was derived from.
//
// z_ij = 1 / (exp(s_i + t_j) - 1) entrywise, so ln((z_ij+1)/z_ij) is exactly
// additive in (s_i, t_j). `residual` is the max relative margin error of z.
struct TypicalTable {
  RealMat z;
  DualVariables duals;
  Margins margins;
  double residual = 0.0;
  double g_of_z = 0.0;

  // Solve diagnostics.
  int sweeps = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // dual objective after each sweep
};

// Convex dual objective
//   G(s,t) = sum r_i s_i + sum c_j t_j - sum_ij ln(1 - exp(-s_i - t_j)),
// finite only where s_i + t_j > 0 (DomainViolation otherwise).
double dual_objective(const DualVariables& v, const Margins& margins);

// Thrown when the solver hits the sweep limit before reaching tolerance;
// carries the best iterate seen.
struct NoConvergence : Error {
  NoConvergence(TypicalTable best_iterate, int sweeps);
  TypicalTable best;
};

// Minimizes G by exact alternating coordinate minimization (per-row and
// per-column 1-D solves via safeguarded Newton), gauge-fixed after every
// sweep so that min_i s_i == min_j t_j. Stops when the max relative margin
// residual of z drops to `tol`.
TypicalTable solve_typical(const Margins& margins, double tol = 1e-10,
                           int max_sweeps = 100000);

// Same, but starting from caller-supplied duals (shape-checked). Used to
// probe path independence; any valid start converges to the same table.
TypicalTable solve_typical_from(const Margins& margins, DualVariables start,
                                double tol = 1e-10, int max_sweeps = 100000);

// ln rho = g(Z): the natural-log upper bound on the number of tables.
double log_rho(const TypicalTable& tt);

// Two-sided count bracket. The upper bound ln|Sigma| <= log_upper is
// numeric; the lower bound has the form
//   log_upper - gamma * (m + n) * ln N
// for an absolute constant gamma that the bound does not pin down, so it is
// reported symbolically via its coefficient rather than as a number.
struct CountBounds {
  double log_upper = 0.0;
  int margin_dim = 0;   // m + n
  double log_total = 0.0;  // ln N
  std::string lower_form;
};
CountBounds count_bounds(const TypicalTable& tt);

// Max deviation of L_ij = ln((z_ij+1)/z_ij) from the best additive fit
// lambda_i + mu_j (least squares, gauged by lambda_1 = L_11 / 2). Near zero
// exactly when z is a typical table. Entries must be strictly positive.
double check_optimality(const RealMat& z);
double check_optimality(const TypicalTable& tt);

// Guaranteed entrywise floors for the typical table:
//   row_bound    = r_min * c_min / (r_max * m)
//   col_bound    = c_min * r_min / (c_max * n)
//   smooth_bound = delta^3 * N / (m * n), delta = smoothness_delta(margins).
struct EntryFloors {
  double row_bound = 0.0;
  double col_bound = 0.0;
  double smooth_bound = 0.0;
};
EntryFloors entry_lower_bounds(const Margins& margins);

// Rows holding at least one entry z_ij >= alpha * N / (m*n), 0-based and
// sorted. Requires alpha >= 2*m*n/N (AlphaTooSmall otherwise); the count of
// such rows is at most 4*m / (delta*alpha).
std::vector<int> large_entry_rows(const TypicalTable& tt, double alpha);

}  // namespace tt
