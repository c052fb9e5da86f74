#pragma once

// Shared helpers for the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "tt/tt.hpp"

namespace ttt {

inline tt::Margins mk(std::vector<std::int64_t> rows,
                      std::vector<std::int64_t> cols) {
  return tt::validate_margins(std::move(rows), std::move(cols));
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Regularized upper incomplete gamma Q(s, x), series + continued fraction.
inline double gamma_q(double s, double x) {
  if (x < 0.0 || s <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  const double log_prefix = -x + s * std::log(x) - std::lgamma(s);
  if (x < s + 1.0) {
    // P by series, Q = 1 - P.
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
      term *= x / (s + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return 1.0 - sum * std::exp(log_prefix);
  }
  // Q by Lentz continued fraction.
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(log_prefix) * h;
}

inline double chi_square_pvalue(double chi2, int df) {
  return gamma_q(0.5 * df, 0.5 * chi2);
}

// Goodness-of-fit p-value for observed counts vs uniform over `cells`.
inline double uniform_chi_square_pvalue(const std::vector<std::int64_t>& observed,
                                        std::int64_t draws) {
  const double expected =
      static_cast<double>(draws) / static_cast<double>(observed.size());
  double chi2 = 0.0;
  for (std::int64_t o : observed) {
    const double diff = static_cast<double>(o) - expected;
    chi2 += diff * diff / expected;
  }
  return chi_square_pvalue(chi2, static_cast<int>(observed.size()) - 1);
}

// Index lookup for sampled tables against an enumerated family.
struct TableIndex {
  std::map<std::vector<std::int64_t>, std::size_t> by_entries;

  explicit TableIndex(const std::vector<tt::IntMat>& tables) {
    for (std::size_t k = 0; k < tables.size(); ++k)
      by_entries.emplace(tables[k].raw(), k);
  }

  std::size_t of(const tt::IntMat& t) const {
    const auto it = by_entries.find(t.raw());
    if (it == by_entries.end())
      throw std::runtime_error("sampled table not in the enumerated family");
    return it->second;
  }

  std::size_t size() const { return by_entries.size(); }
};

}  // namespace ttt
