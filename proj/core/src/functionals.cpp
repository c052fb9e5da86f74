#include "tt/functionals.hpp"

#include <cmath>
#include <string>

#include "tt/errors.hpp"

namespace tt {

double g_scalar(double x) {
  if (!(x >= 0.0)) throw NegativeEntry("g is defined on [0, inf) only");
  if (x == 0.0) return 0.0;
  // (x+1) ln(x+1) - x ln x, written with log1p for small x.
  return x * std::log1p(1.0 / x) + std::log1p(x);
}

double g_value(const RealMat& x) {
  double total = 0.0;
  for (double v : x.raw()) total += g_scalar(v);
  return total;
}

RealMat independence_table(const Margins& margins) {
  RealMat y(margins.rows(), margins.cols());
  const double n_total = static_cast<double>(margins.total);
  for (int i = 0; i < y.rows(); ++i) {
    const double r = static_cast<double>(margins.row_sums[i]);
    for (int j = 0; j < y.cols(); ++j)
      y(i, j) = r * static_cast<double>(margins.col_sums[j]) / n_total;
  }
  return y;
}

double entropy_H(const RealMat& x, double total) {
  if (!(total > 0.0)) throw NonPositiveTotal("entropy needs a positive total");
  double h = 0.0;
  for (double v : x.raw()) {
    if (!(v >= 0.0)) throw NegativeEntry("entropy needs non-negative entries");
    if (v > 0.0) h += (v / total) * std::log(total / v);
  }
  return h;
}

double fisher_yates_log_mass(const IntMat& d, const Margins& margins) {
  require_margins(d, margins);
  double log_mass = -std::lgamma(static_cast<double>(margins.total) + 1.0);
  for (std::int64_t r : margins.row_sums)
    log_mass += std::lgamma(static_cast<double>(r) + 1.0);
  for (std::int64_t c : margins.col_sums)
    log_mass += std::lgamma(static_cast<double>(c) + 1.0);
  for (std::int64_t v : d.raw())
    log_mass -= std::lgamma(static_cast<double>(v) + 1.0);
  return log_mass;
}

}  // namespace tt
