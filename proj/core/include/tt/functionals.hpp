#pragma once

#include "tt/grid.hpp"
#include "tt/margins.hpp"

namespace tt {

// g(x) = (x+1) ln(x+1) - x ln x for x >= 0, with g(0) = 0.
// Strictly concave and increasing on [0, inf).
double g_scalar(double x);

// Sum of g over all entries. Throws NegativeEntry on a negative or NaN cell.
double g_value(const RealMat& x);

// Rank-one table y_ij = r_i * c_j / N. Its margins reproduce the input
// margins exactly (up to roundoff).
RealMat independence_table(const Margins& margins);

// Entropy of x/total as a distribution on the cells:
//   H = sum (x_ij / total) ln(total / x_ij), zero cells contributing 0.
// Throws NonPositiveTotal if total <= 0 and NegativeEntry on negative cells.
double entropy_H(const RealMat& x, double total);

// Log-probability of a table under the margin-conditioned independent
// shuffle measure:
//   ln Pr(D) = -ln N! + sum ln r_i! + sum ln c_j! - sum ln d_ij!
// evaluated with lgamma. The table must realize the margins exactly
// (MarginMismatch otherwise).
double fisher_yates_log_mass(const IntMat& d, const Margins& margins);

}  // namespace tt
