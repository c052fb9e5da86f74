#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tt/grid.hpp"
#include "tt/margins.hpp"
#include "tt/random.hpp"

namespace tt {

using BigInt = boost::multiprecision::cpp_int;

// Natural log of a positive big integer, via its top bits.
double log_big(const BigInt& x);

// Exact table counts by dynamic programming over columns.
//
// State: (column index j, residual row sums after columns < j). Counts are
// symmetric under row permutation, so states are memoized with the residual
// vector sorted; lookups sort on the fly. The memo built for the full count
// is exactly what per-column conditional sampling needs, so sample() reuses
// it with no extra work.
class DPTable {
 public:
  static constexpr std::uint64_t kDefaultBudget = 10'000'000;

  // Builds the full memo (throws BudgetExceeded before allocating if the
  // a-priori state estimate is over budget, or during the build if the live
  // memo grows past it).
  explicit DPTable(Margins margins, std::uint64_t budget = kDefaultBudget);

  const Margins& margins() const { return margins_; }
  const BigInt& total_count() const { return total_; }
  std::size_t memo_size() const { return memo_.size(); }

  // One exact uniform draw from the tables with these margins. Walks the
  // columns left to right, picking each column vector with probability
  // (tables completing it) / (tables remaining), via an exact uniform
  // big-integer draw. Consumes the stream; pass a fresh child per draw for
  // replayable parallel use.
  IntMat sample(RandomStream& rng) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::int32_t>& v) const;
  };

  const BigInt& count(int j, std::vector<std::int32_t>& residual_sorted);

  Margins margins_;
  BigInt total_ = 0;
  std::uint64_t budget_ = kDefaultBudget;
  std::unordered_map<std::vector<std::int32_t>, BigInt, KeyHash> memo_;
};

// |Sigma(R, C)| as an exact integer.
BigInt count_tables(const Margins& margins,
                    std::uint64_t budget = DPTable::kDefaultBudget);

// Every table with the given margins, in lexicographic order of the
// row-major entry sequence. Independent of the DP above (row-wise DFS), so
// the two can cross-check each other. Throws CapExceeded as soon as more
// than `cap` tables exist.
std::vector<IntMat> enumerate_tables(const Margins& margins,
                                     std::uint64_t cap = 1'000'000);

// Free-function form of DPTable::sample.
IntMat dp_uniform_sample(const DPTable& dp, RandomStream& rng);

}  // namespace tt
