#include "tt/margins.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tt/errors.hpp"

namespace tt {

Margins validate_margins(std::vector<std::int64_t> rows,
                         std::vector<std::int64_t> cols) {
  if (rows.empty() || cols.empty())
    throw InvalidArgument("margins need at least one row and one column");

  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i] < 1)
      throw NonPositiveEntry("row sum " + std::to_string(i + 1) + " is " +
                             std::to_string(rows[i]) + "; margins must be >= 1");
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (cols[j] < 1)
      throw NonPositiveEntry("column sum " + std::to_string(j + 1) + " is " +
                             std::to_string(cols[j]) + "; margins must be >= 1");

  const std::int64_t row_total =
      std::accumulate(rows.begin(), rows.end(), std::int64_t{0});
  const std::int64_t col_total =
      std::accumulate(cols.begin(), cols.end(), std::int64_t{0});
  if (row_total != col_total) throw MismatchedTotals(row_total, col_total);

  return Margins{std::move(rows), std::move(cols), row_total};
}

double smoothness_delta(const Margins& margins) {
  const double n_total = static_cast<double>(margins.total);
  const double m = margins.rows();
  const double n = margins.cols();

  double delta = std::min(1.0, n_total / (m * n));
  for (std::int64_t r : margins.row_sums) {
    delta = std::min(delta, static_cast<double>(r) * m / n_total);
    delta = std::min(delta, n_total / (static_cast<double>(r) * m));
  }
  for (std::int64_t c : margins.col_sums) {
    delta = std::min(delta, static_cast<double>(c) * n / n_total);
    delta = std::min(delta, n_total / (static_cast<double>(c) * n));
  }
  return delta;
}

Margins clone_margins(const Margins& margins, int k) {
  if (k < 1) throw InvalidArgument("clone factor must be >= 1");

  std::vector<std::int64_t> rows;
  rows.reserve(margins.row_sums.size() * k);
  for (std::int64_t r : margins.row_sums)
    rows.insert(rows.end(), k, k * r);

  std::vector<std::int64_t> cols;
  cols.reserve(margins.col_sums.size() * k);
  for (std::int64_t c : margins.col_sums)
    cols.insert(cols.end(), k, k * c);

  return validate_margins(std::move(rows), std::move(cols));
}

Margins margins_of(const IntMat& table) {
  for (int i = 0; i < table.rows(); ++i)
    for (int j = 0; j < table.cols(); ++j)
      if (table(i, j) < 0)
        throw NegativeEntry("table cell (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ") is negative");
  return validate_margins(row_sums(table), col_sums(table));
}

bool has_margins(const IntMat& table, const Margins& margins) {
  if (table.rows() != margins.rows() || table.cols() != margins.cols())
    return false;
  for (const auto& v : table.raw())
    if (v < 0) return false;
  return row_sums(table) == margins.row_sums &&
         col_sums(table) == margins.col_sums;
}

void require_margins(const IntMat& table, const Margins& margins) {
  if (!has_margins(table, margins))
    throw MarginMismatch("table does not realize the given margins (shape " +
                         std::to_string(table.rows()) + "x" +
                         std::to_string(table.cols()) + " vs " +
                         std::to_string(margins.rows()) + "x" +
                         std::to_string(margins.cols()) + ")");
}

}  // namespace tt
