#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tt {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidArgument : Error {
  using Error::Error;
};

// Row and column sums do not add up to the same total.
struct MismatchedTotals : Error {
  MismatchedTotals(std::int64_t row_total, std::int64_t col_total)
      : Error("margin totals differ: rows sum to " + std::to_string(row_total) +
              ", columns sum to " + std::to_string(col_total)),
        row_total(row_total),
        col_total(col_total) {}
  std::int64_t row_total;
  std::int64_t col_total;
};

struct NonPositiveEntry : Error {
  using Error::Error;
};

struct NegativeEntry : Error {
  using Error::Error;
};

struct IndexOutOfBounds : Error {
  using Error::Error;
};

struct NonPositiveTotal : Error {
  using Error::Error;
};

// A table was paired with margins it does not satisfy.
struct MarginMismatch : Error {
  using Error::Error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

// Evaluation requested outside a function's admissible domain,
// e.g. dual variables with s_i + t_j <= 0 or a bound parameter out of range.
struct DomainViolation : Error {
  using Error::Error;
};

// Counting would need more memo states than the configured budget allows.
// `estimated_states` is the a-priori upper bound that tripped the check (or
// the live memo size if the runtime guard fired first).
struct BudgetExceeded : Error {
  BudgetExceeded(double estimated_states, std::uint64_t budget)
      : Error("table counting state estimate " + std::to_string(estimated_states) +
              " exceeds budget " + std::to_string(budget)),
        estimated_states(estimated_states),
        budget(budget) {}
  double estimated_states;
  std::uint64_t budget;
};

struct CapExceeded : Error {
  explicit CapExceeded(std::uint64_t cap)
      : Error("enumeration exceeds cap of " + std::to_string(cap) + " tables"),
        cap(cap) {}
  std::uint64_t cap;
};

struct AttemptsExhausted : Error {
  explicit AttemptsExhausted(std::uint64_t attempts)
      : Error("rejection sampler gave up after " + std::to_string(attempts) +
              " attempts"),
        attempts(attempts) {}
  std::uint64_t attempts;
};

// alpha below the admissible threshold for the large-entry row bound.
struct AlphaTooSmall : Error {
  using Error::Error;
};

// Input claimed to lie in the zero-margin subspace but does not.
struct NotInSubspace : Error {
  using Error::Error;
};

}  // namespace tt
