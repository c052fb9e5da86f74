#pragma once

#include <cstdint>
#include <vector>

#include "tt/grid.hpp"

namespace tt {

// Row/column sum prescription for a non-negative integer table. Always
// constructed through validate_margins, which establishes the invariants:
// every entry >= 1 and both sides sum to the same total.
struct Margins {
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t total = 0;

  int rows() const { return static_cast<int>(row_sums.size()); }
  int cols() const { return static_cast<int>(col_sums.size()); }

  friend bool operator==(const Margins& a, const Margins& b) {
    return a.row_sums == b.row_sums && a.col_sums == b.col_sums;
  }
};

// Throws MismatchedTotals or NonPositiveEntry.
Margins validate_margins(std::vector<std::int64_t> rows,
                         std::vector<std::int64_t> cols);

// Largest delta in (0,1] such that the margins are delta-smooth:
//   delta*N/m <= r_i <= N/(delta*m),  delta*N/n <= c_j <= N/(delta*n),
//   N/(m*n) >= delta.
// Computed as the min of the defining ratios, capped at 1.
double smoothness_delta(const Margins& margins);

// Replaces each row sum r_i by k consecutive copies of k*r_i, and likewise
// for columns. The total becomes k^2 * N. k >= 1.
Margins clone_margins(const Margins& margins, int k);

// Margins realized by a table. Throws NegativeEntry if the table has a
// negative cell and NonPositiveEntry if some realized row or column sum
// is < 1 (margins must be strictly positive).
Margins margins_of(const IntMat& table);

// True iff the table is entrywise non-negative with exactly these margins.
bool has_margins(const IntMat& table, const Margins& margins);

// Same check, throwing MarginMismatch with context on failure.
void require_margins(const IntMat& table, const Margins& margins);

}  // namespace tt
