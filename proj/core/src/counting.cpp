#include "tt/counting.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tt/errors.hpp"

namespace tt {

namespace {

const BigInt kOne = 1;

// Exact uniform draw from [0, bound) by assembling random words of the
// right width and rejecting overshoots.
BigInt uniform_below_big(const BigInt& bound, RandomStream& rng) {
  if (bound <= 1) return 0;
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  const unsigned words = (bits + 63) / 64;
  const unsigned top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask =
      top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
  for (;;) {
    BigInt value = 0;
    for (unsigned w = 0; w < words; ++w) {
      std::uint64_t chunk = rng.bits64();
      if (w == 0) chunk &= top_mask;
      value <<= 64;
      value |= chunk;
    }
    if (value < bound) return value;
  }
}

// Walks the column vectors d with sum(d) = amount and 0 <= d_i <= limit_i,
// in ascending lexicographic order, calling visit(d) for each. The bounds
// on each position keep the walk inside the feasible set, so there is no
// dead-end backtracking.
template <typename Visit>
void for_each_column_vector(const std::vector<std::int64_t>& limits,
                            std::int64_t amount, Visit&& visit) {
  const int m = static_cast<int>(limits.size());
  std::vector<std::int64_t> suffix_cap(m + 1, 0);
  for (int i = m - 1; i >= 0; --i) suffix_cap[i] = suffix_cap[i + 1] + limits[i];
  if (amount > suffix_cap[0]) return;

  std::vector<std::int64_t> d(m, 0);
  auto rec = [&](auto&& self, int i, std::int64_t remaining) -> void {
    if (i == m) {
      visit(d);
      return;
    }
    const std::int64_t lo = std::max<std::int64_t>(0, remaining - suffix_cap[i + 1]);
    const std::int64_t hi = std::min<std::int64_t>(remaining, limits[i]);
    for (std::int64_t v = lo; v <= hi; ++v) {
      d[i] = v;
      self(self, i + 1, remaining - v);
    }
    d[i] = 0;
  };
  rec(rec, 0, amount);
}

}  // namespace

double log_big(const BigInt& x) {
  if (x <= 0) throw InvalidArgument("log of a non-positive integer");
  const unsigned bits = boost::multiprecision::msb(x);
  if (bits <= 62) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 52;
  return std::log((x >> shift).convert_to<double>()) +
         static_cast<double>(shift) * std::log(2.0);
}

std::size_t DPTable::KeyHash::operator()(
    const std::vector<std::int32_t>& v) const {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (std::int32_t x : v) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

DPTable::DPTable(Margins margins, std::uint64_t budget)
    : margins_(std::move(margins)), budget_(budget) {
  // Refuse up front if the state space cannot fit. Residual vectors are
  // memoized in sorted order, so the state count is bounded both by
  // prod(r_i + 1) and by the number of multisets of m values in
  // [0, max r_i]; take whichever is smaller.
  const int m = margins_.rows();
  const std::int64_t r_max =
      *std::max_element(margins_.row_sums.begin(), margins_.row_sums.end());

  BigInt product_bound = 1;
  for (std::int64_t r : margins_.row_sums) product_bound *= (r + 1);
  BigInt multiset_bound = 1;
  for (int k = 1; k <= m; ++k) {
    multiset_bound *= (r_max + k);
    multiset_bound /= k;  // exact: running value is C(r_max + k, k)
  }
  const BigInt estimate = std::min(product_bound, multiset_bound);
  if (estimate > budget_)
    throw BudgetExceeded(estimate.convert_to<double>(), budget_);

  std::vector<std::int32_t> root;
  root.reserve(m);
  for (std::int64_t r : margins_.row_sums)
    root.push_back(static_cast<std::int32_t>(r));
  std::sort(root.begin(), root.end());
  total_ = count(0, root);
}

const BigInt& DPTable::count(int j, std::vector<std::int32_t>& residual_sorted) {
  const int n = margins_.cols();
  if (j == n) return kOne;  // residual is forced to zero by the total

  std::vector<std::int32_t> key;
  key.reserve(residual_sorted.size() + 1);
  key.push_back(j);
  key.insert(key.end(), residual_sorted.begin(), residual_sorted.end());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  std::vector<std::int64_t> limits(residual_sorted.begin(),
                                   residual_sorted.end());
  BigInt total = 0;
  for_each_column_vector(
      limits, margins_.col_sums[j], [&](const std::vector<std::int64_t>& d) {
        std::vector<std::int32_t> child(residual_sorted);
        for (std::size_t i = 0; i < d.size(); ++i)
          child[i] -= static_cast<std::int32_t>(d[i]);
        std::sort(child.begin(), child.end());
        total += count(j + 1, child);
      });

  if (memo_.size() >= budget_)
    throw BudgetExceeded(static_cast<double>(memo_.size()) + 1, budget_);
  return memo_.emplace(std::move(key), std::move(total)).first->second;
}

IntMat DPTable::sample(RandomStream& rng) const {
  const int m = margins_.rows();
  const int n = margins_.cols();

  auto lookup = [&](int j,
                    const std::vector<std::int32_t>& sorted) -> const BigInt& {
    if (j == n) return kOne;
    std::vector<std::int32_t> key;
    key.reserve(sorted.size() + 1);
    key.push_back(j);
    key.insert(key.end(), sorted.begin(), sorted.end());
    const auto it = memo_.find(key);
    if (it == memo_.end())
      throw Error("internal: sampling reached a state the count pass missed");
    return it->second;
  };

  IntMat out(m, n);
  std::vector<std::int64_t> residual = margins_.row_sums;

  for (int j = 0; j < n; ++j) {
    std::vector<std::int32_t> sorted(residual.begin(), residual.end());
    std::sort(sorted.begin(), sorted.end());
    BigInt pick = uniform_below_big(lookup(j, sorted), rng);

    bool chosen = false;
    for_each_column_vector(
        residual, margins_.col_sums[j],
        [&](const std::vector<std::int64_t>& d) {
          if (chosen) return;
          std::vector<std::int32_t> child;
          child.reserve(residual.size());
          for (std::size_t i = 0; i < residual.size(); ++i)
            child.push_back(static_cast<std::int32_t>(residual[i] - d[i]));
          std::sort(child.begin(), child.end());
          const BigInt& weight = lookup(j + 1, child);
          if (pick < weight) {
            for (int i = 0; i < m; ++i) out(i, j) = d[i];
            chosen = true;
            return;
          }
          pick -= weight;
        });
    if (!chosen)
      throw Error("internal: conditional column weights did not cover the draw");
    for (int i = 0; i < m; ++i) residual[i] -= out(i, j);
  }
  return out;
}

BigInt count_tables(const Margins& margins, std::uint64_t budget) {
  return DPTable(margins, budget).total_count();
}

std::vector<IntMat> enumerate_tables(const Margins& margins,
                                     std::uint64_t cap) {
  const int m = margins.rows();
  const int n = margins.cols();
  std::vector<IntMat> out;
  IntMat table(m, n);
  std::vector<std::int64_t> col_left = margins.col_sums;

  // Rows are filled top to bottom, each row walked in ascending
  // lexicographic order, so the collected tables come out sorted by their
  // row-major entry sequence. The last row is forced by what is left of
  // the column sums.
  auto fill_from = [&](auto&& self, int i) -> void {
    if (i == m - 1) {
      for (int j = 0; j < n; ++j) table(m - 1, j) = col_left[j];
      if (out.size() >= cap) throw CapExceeded(cap);
      out.push_back(table);
      return;
    }
    for_each_column_vector(col_left, margins.row_sums[i],
                           [&](const std::vector<std::int64_t>& d) {
                             for (int j = 0; j < n; ++j) {
                               table(i, j) = d[j];
                               col_left[j] -= d[j];
                             }
                             self(self, i + 1);
                             for (int j = 0; j < n; ++j) col_left[j] += d[j];
                           });
  };
  fill_from(fill_from, 0);
  return out;
}

IntMat dp_uniform_sample(const DPTable& dp, RandomStream& rng) {
  return dp.sample(rng);
}

}  // namespace tt
