#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tt/grid.hpp"
#include "tt/random.hpp"

namespace tt {

// A set of cell positions, stored 0-based, sorted, and deduplicated.
// External formats (JSON, CLI set specs) index cells 1-based; conversion
// happens at the serialization boundary.
class EntrySet {
 public:
  using Index = std::pair<int, int>;

  EntrySet() = default;
  explicit EntrySet(std::vector<Index> cells);

  static EntrySet all(int m, int n);

  // Half-open block [i0, i1) x [j0, j1).
  static EntrySet block(int i0, int i1, int j0, int j1);

  // ceil(f * m * n) distinct cells drawn without replacement. 0 < f <= 1.
  static EntrySet random_fraction(int m, int n, double f, RandomStream& rng);

  const std::vector<Index>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  // Throws IndexOutOfBounds unless every cell fits an m x n grid.
  void require_within(int m, int n) const;

  friend bool operator==(const EntrySet& a, const EntrySet& b) {
    return a.cells_ == b.cells_;
  }

 private:
  std::vector<Index> cells_;
};

// Sum of the matrix over the set. The set must be non-empty and inside the
// matrix (InvalidArgument / IndexOutOfBounds otherwise).
template <typename T>
T sigma_S(const Grid<T>& x, const EntrySet& s) {
  if (s.empty()) throw InvalidArgument("sigma_S over an empty entry set");
  s.require_within(x.rows(), x.cols());
  T total{};
  for (const auto& [i, j] : s.cells()) total += x(i, j);
  return total;
}

// Sum of squared entries over the set; the second-moment companion of
// sigma_S used by the tail bounds.
double nu_S(const RealMat& x, const EntrySet& s);

}  // namespace tt
