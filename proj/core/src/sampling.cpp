#include "tt/sampling.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tt/errors.hpp"
#include "tt/margins.hpp"

namespace tt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::int64_t geometric_draw(double log_q, RandomStream& rng) {
  if (log_q == kNegInf) return 0;  // point mass at zero
  const double u = rng.uniform01();
  return static_cast<std::int64_t>(std::floor(std::log(u) / log_q));
}

}  // namespace

GeometricMatrixModel GeometricMatrixModel::from_means(const RealMat& z) {
  GeometricMatrixModel model;
  model.z = z;
  model.log_q = RealMat(z.rows(), z.cols());
  model.log_p = RealMat(z.rows(), z.cols());
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j) {
      const double mean = z(i, j);
      if (!(mean >= 0.0) || !std::isfinite(mean))
        throw NegativeEntry("geometric means must be finite and >= 0");
      model.log_p(i, j) = -std::log1p(mean);
      model.log_q(i, j) = mean > 0.0 ? -std::log1p(1.0 / mean) : kNegInf;
    }
  return model;
}

IntMat geometric_matrix_sample(const GeometricMatrixModel& model,
                               RandomStream& rng) {
  IntMat d(model.z.rows(), model.z.cols());
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j)
      d(i, j) = geometric_draw(model.log_q(i, j), rng);
  return d;
}

double log_mass(const GeometricMatrixModel& model, const IntMat& d) {
  if (!d.same_shape(model.z))
    throw ShapeMismatch("table shape does not match the geometric model");
  double total = 0.0;
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) {
      const std::int64_t v = d(i, j);
      if (v < 0) throw NegativeEntry("log_mass of a table with negative cells");
      total += model.log_p(i, j);
      if (v > 0) {
        if (model.log_q(i, j) == kNegInf) return kNegInf;
        total += static_cast<double>(v) * model.log_q(i, j);
      }
    }
  return total;
}

double verify_constant_mass(const TypicalTable& tt,
                            const std::vector<IntMat>& tables) {
  const GeometricMatrixModel model = GeometricMatrixModel::from_means(tt.z);
  double worst = 0.0;
  for (const IntMat& d : tables) {
    require_margins(d, tt.margins);
    worst = std::max(worst, std::abs(log_mass(model, d) + tt.g_of_z));
  }
  return worst;
}

RejectionSample rejection_uniform_sample(const TypicalTable& tt,
                                         RandomStream& stream,
                                         std::uint64_t max_attempts,
                                         const ProgressFn& progress) {
  if (max_attempts == 0) throw InvalidArgument("need at least one attempt");
  const GeometricMatrixModel model = GeometricMatrixModel::from_means(tt.z);
  const int m = tt.margins.rows();
  const int n = tt.margins.cols();

  IntMat d(m, n);
  std::vector<std::int64_t> col_sum(n);

  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    std::fill(col_sum.begin(), col_sum.end(), 0);

    bool rows_ok = true;
    for (int i = 0; i < m && rows_ok; ++i) {
      std::int64_t row_sum = 0;
      for (int j = 0; j < n; ++j) {
        const std::int64_t v = geometric_draw(model.log_q(i, j), stream);
        d(i, j) = v;
        row_sum += v;
        col_sum[j] += v;
        if (row_sum > tt.margins.row_sums[i]) {
          rows_ok = false;  // already over target; the rest cannot fix it
          break;
        }
      }
      if (rows_ok && row_sum != tt.margins.row_sums[i]) rows_ok = false;
    }

    if (rows_ok) {
      bool cols_ok = true;
      for (int j = 0; j < n; ++j)
        if (col_sum[j] != tt.margins.col_sums[j]) {
          cols_ok = false;
          break;
        }
      if (cols_ok) return RejectionSample{d, attempt};
    }

    if (progress && attempt % 1'000'000 == 0) progress(attempt);
  }
  throw AttemptsExhausted(max_attempts);
}

double tail_bound_lower(double sigma, double nu, double a, double t) {
  if (!(sigma >= 0.0) || !(nu >= 0.0))
    throw DomainViolation("sigma and nu must be non-negative");
  if (!(t > 0.0) || t > 2.0)
    throw DomainViolation("lower tail bound needs 0 < t <= 2");
  return std::exp(-t * a + 0.5 * t * t * (sigma + nu));
}

double tail_bound_upper(double sigma, double nu, double a, double t,
                        double z_max_on_s) {
  if (!(sigma >= 0.0) || !(nu >= 0.0))
    throw DomainViolation("sigma and nu must be non-negative");
  if (!(z_max_on_s >= 0.0))
    throw DomainViolation("z_max_on_s must be non-negative");
  double t_cap = 1.0 / 3.0;
  if (z_max_on_s > 0.0) t_cap = std::min(t_cap, 1.0 / (2.0 * z_max_on_s));
  if (!(t > 0.0) || t > t_cap)
    throw DomainViolation("upper tail bound needs 0 < t <= " +
                          std::to_string(t_cap));
  return std::exp(-t * a + 2.0 * t * t * (sigma + nu));
}

double concentration_bound(double delta, double alpha, std::int64_t set_size,
                           double eps, TailSide side) {
  if (!(delta > 0.0) || delta > 1.0)
    throw DomainViolation("delta must lie in (0, 1]");
  if (!(alpha >= 1.0)) throw DomainViolation("alpha must be >= 1");
  if (!(eps > 0.0) || eps >= 1.0)
    throw DomainViolation("eps must lie in (0, 1)");
  if (set_size < 1) throw DomainViolation("entry set must be non-empty");

  const double d4 = delta * delta * delta * delta;
  const double denom =
      side == TailSide::lower ? 2.0 + 2.0 * delta * alpha : 8.0 + 8.0 * delta * alpha;
  return std::exp(-eps * eps * d4 * static_cast<double>(set_size) / denom);
}

}  // namespace tt
