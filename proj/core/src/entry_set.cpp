#include "tt/entry_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tt/errors.hpp"

namespace tt {

EntrySet::EntrySet(std::vector<Index> cells) : cells_(std::move(cells)) {
  for (const auto& [i, j] : cells_)
    if (i < 0 || j < 0)
      throw InvalidArgument("entry set cell (" + std::to_string(i) + "," +
                            std::to_string(j) + ") has a negative index");
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

EntrySet EntrySet::all(int m, int n) { return block(0, m, 0, n); }

EntrySet EntrySet::block(int i0, int i1, int j0, int j1) {
  if (i0 < 0 || j0 < 0 || i1 < i0 || j1 < j0)
    throw InvalidArgument("bad block bounds for entry set");
  std::vector<Index> cells;
  cells.reserve(static_cast<std::size_t>(i1 - i0) * (j1 - j0));
  for (int i = i0; i < i1; ++i)
    for (int j = j0; j < j1; ++j) cells.emplace_back(i, j);
  return EntrySet(std::move(cells));
}

EntrySet EntrySet::random_fraction(int m, int n, double f, RandomStream& rng) {
  if (m < 1 || n < 1) throw InvalidArgument("entry set needs a non-empty grid");
  if (!(f > 0.0) || f > 1.0)
    throw InvalidArgument("entry set fraction must lie in (0, 1]");

  const std::uint64_t total = static_cast<std::uint64_t>(m) * n;
  const std::uint64_t want =
      std::min<std::uint64_t>(total, static_cast<std::uint64_t>(
                                         std::ceil(f * static_cast<double>(total))));

  // Partial Fisher-Yates over cell ids, so exactly `want` distinct cells.
  std::vector<std::uint32_t> ids(total);
  for (std::uint64_t c = 0; c < total; ++c) ids[c] = static_cast<std::uint32_t>(c);
  std::vector<Index> cells;
  cells.reserve(want);
  for (std::uint64_t k = 0; k < want; ++k) {
    const std::uint64_t pick = k + rng.below(total - k);
    std::swap(ids[k], ids[pick]);
    cells.emplace_back(static_cast<int>(ids[k] / n), static_cast<int>(ids[k] % n));
  }
  return EntrySet(std::move(cells));
}

void EntrySet::require_within(int m, int n) const {
  for (const auto& [i, j] : cells_)
    if (i >= m || j >= n)
      throw IndexOutOfBounds("entry set cell (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ") outside a " +
                             std::to_string(m) + "x" + std::to_string(n) +
                             " matrix");
}

double nu_S(const RealMat& x, const EntrySet& s) {
  if (s.empty()) throw InvalidArgument("nu_S over an empty entry set");
  s.require_within(x.rows(), x.cols());
  double total = 0.0;
  for (const auto& [i, j] : s.cells()) total += x(i, j) * x(i, j);
  return total;
}

}  // namespace tt
