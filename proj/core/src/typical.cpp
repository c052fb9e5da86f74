#include "tt/typical.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <utility>

#include "tt/functionals.hpp"

namespace tt {

namespace {

// 1/(e^x - 1) for x > 0. The two branches keep full precision at both ends;
// at or below 0 we are past the pole, which reads as +inf for the purposes
// of bracketing (the solve never converges there).
double inv_expm1(double x) {
  if (x <= 0.0) return std::numeric_limits<double>::infinity();
  if (x > 1.0) {
    const double e = std::exp(-x);
    return e / (1.0 - e);
  }
  return 1.0 / std::expm1(x);
}

// -ln(1 - e^{-x}) for x > 0, branch-split for accuracy.
double neg_log_one_minus_exp_neg(double x) {
  if (x <= 0.5) return x - std::log(std::expm1(x));
  return -std::log1p(-std::exp(-x));
}

RealMat table_from_duals(const DualVariables& v, int m, int n) {
  RealMat z(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = inv_expm1(v.s[i] + v.t[j]);
  return z;
}

double margin_residual(const RealMat& z, const Margins& margins) {
  double worst = 0.0;
  const auto rs = row_sums(z);
  for (int i = 0; i < margins.rows(); ++i) {
    const double target = static_cast<double>(margins.row_sums[i]);
    worst = std::max(worst, std::abs(rs[i] - target) / std::max(1.0, target));
  }
  const auto cs = col_sums(z);
  for (int j = 0; j < margins.cols(); ++j) {
    const double target = static_cast<double>(margins.col_sums[j]);
    worst = std::max(worst, std::abs(cs[j] - target) / std::max(1.0, target));
  }
  return worst;
}

// Exact 1-D minimization along one dual coordinate: the root of
//   f(u) = sum_k 1/(e^{u + off_k} - 1) - target,
// which is strictly decreasing from +inf (at the pole u = -min off) to
// -target. Newton from a warm start, safeguarded by a sign-tracking
// bracket; any step leaving the bracket becomes a bisection step.
double solve_coordinate(const std::vector<double>& off, double target,
                        double warm_start) {
  const double pole = -*std::min_element(off.begin(), off.end());

  auto f_and_slope = [&](double u, double& slope) {
    double f = -target;
    slope = 0.0;
    for (double o : off) {
      const double z = inv_expm1(u + o);
      f += z;
      slope -= z * (1.0 + z);
    }
    return f;
  };
  auto f_only = [&](double u) {
    double f = -target;
    for (double o : off) f += inv_expm1(u + o);
    return f;
  };

  // Establish a bracket (blo, bhi] with f > 0 on the left and f <= 0 on
  // the right. The pole itself acts as the open left endpoint.
  double blo = pole;
  double bhi;
  double x = std::max(warm_start, pole + 1e-300);
  double fx = f_only(x);
  if (fx > 0.0) {
    blo = x;
    double step = std::max(1.0, std::abs(x));
    for (;;) {
      const double cand = blo + step;
      if (f_only(cand) <= 0.0) {
        bhi = cand;
        break;
      }
      blo = cand;
      step *= 2.0;
    }
    x = 0.5 * (blo + bhi);
  } else {
    bhi = x;
    // Halve the distance to the pole until f turns positive.
    double cand = pole + 0.5 * (x - pole);
    while (f_only(cand) <= 0.0) {
      bhi = cand;
      cand = pole + 0.5 * (cand - pole);
    }
    blo = cand;
    x = 0.5 * (blo + bhi);
  }

  for (int iter = 0; iter < 100; ++iter) {
    double slope;
    fx = f_and_slope(x, slope);
    if (fx == 0.0) break;
    if (fx > 0.0)
      blo = x;
    else
      bhi = x;

    double next = x - fx / slope;
    if (!(next > blo && next < bhi)) next = 0.5 * (blo + bhi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

void require_dual_shape(const DualVariables& v, const Margins& margins) {
  if (static_cast<int>(v.s.size()) != margins.rows() ||
      static_cast<int>(v.t.size()) != margins.cols())
    throw ShapeMismatch("dual variable lengths do not match the margins");
}

TypicalTable solve_impl(const Margins& margins, DualVariables v, double tol,
                        int max_sweeps) {
  require_dual_shape(v, margins);
  if (!(tol > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  if (max_sweeps < 1) throw InvalidArgument("solver needs at least one sweep");

  const int m = margins.rows();
  const int n = margins.cols();

  // The start must be in the dual domain: min s + min t > 0.
  {
    const double lo = *std::min_element(v.s.begin(), v.s.end()) +
                      *std::min_element(v.t.begin(), v.t.end());
    if (!(lo > 0.0))
      throw DomainViolation("initial duals must satisfy s_i + t_j > 0");
  }

  std::vector<double> trace;
  trace.reserve(64);
  double best_residual = std::numeric_limits<double>::infinity();
  DualVariables best = v;
  bool converged = false;
  int sweeps_done = 0;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int i = 0; i < m; ++i)
      v.s[i] = solve_coordinate(v.t, static_cast<double>(margins.row_sums[i]),
                                v.s[i]);
    for (int j = 0; j < n; ++j)
      v.t[j] = solve_coordinate(v.s, static_cast<double>(margins.col_sums[j]),
                                v.t[j]);

    // Gauge freedom: (s, t) and (s - c, t + c) describe the same table.
    // Pin min s == min t so runs are comparable.
    const double shift =
        0.5 * (*std::min_element(v.s.begin(), v.s.end()) -
               *std::min_element(v.t.begin(), v.t.end()));
    for (double& si : v.s) si -= shift;
    for (double& tj : v.t) tj += shift;

    const double objective = dual_objective(v, margins);
    // Each coordinate solve minimizes the (convex) objective exactly along
    // its line, so sweeps can only lower it modulo roundoff.
    assert(trace.empty() ||
           objective <= trace.back() + 1e-9 * (1.0 + std::abs(trace.back())));
    trace.push_back(objective);

    const RealMat z = table_from_duals(v, m, n);
    const double residual = margin_residual(z, margins);
    sweeps_done = sweep + 1;
    if (residual < best_residual) {
      best_residual = residual;
      best = v;
    }
    if (residual <= tol) {
      converged = true;
      break;
    }
  }

  TypicalTable out;
  out.duals = std::move(best);
  out.margins = margins;
  out.z = table_from_duals(out.duals, m, n);
  out.residual = best_residual;
  out.g_of_z = g_value(out.z);
  out.sweeps = sweeps_done;
  out.converged = converged;
  out.objective_trace = std::move(trace);

  if (!converged) throw NoConvergence(std::move(out), sweeps_done);
  return out;
}

}  // namespace

double dual_objective(const DualVariables& v, const Margins& margins) {
  require_dual_shape(v, margins);
  double value = 0.0;
  for (int i = 0; i < margins.rows(); ++i)
    value += static_cast<double>(margins.row_sums[i]) * v.s[i];
  for (int j = 0; j < margins.cols(); ++j)
    value += static_cast<double>(margins.col_sums[j]) * v.t[j];
  for (double si : v.s)
    for (double tj : v.t) {
      const double x = si + tj;
      if (!(x > 0.0))
        throw DomainViolation("dual objective needs s_i + t_j > 0 everywhere");
      value += neg_log_one_minus_exp_neg(x);
    }
  return value;
}

NoConvergence::NoConvergence(TypicalTable best_iterate, int sweeps)
    : Error("typical-table solver still at residual " +
            std::to_string(best_iterate.residual) + " after " +
            std::to_string(sweeps) + " sweeps"),
      best(std::move(best_iterate)) {}

TypicalTable solve_typical(const Margins& margins, double tol, int max_sweeps) {
  DualVariables v;
  v.s.resize(margins.rows());
  v.t.resize(margins.cols());
  // Start at the duals that are exact for constant margins: z_ij = N/(mn)
  // when every r_i = N/m and every c_j = N/n.
  for (int i = 0; i < margins.rows(); ++i)
    v.s[i] = 0.5 * std::log1p(static_cast<double>(margins.cols()) /
                              static_cast<double>(margins.row_sums[i]));
  for (int j = 0; j < margins.cols(); ++j)
    v.t[j] = 0.5 * std::log1p(static_cast<double>(margins.rows()) /
                              static_cast<double>(margins.col_sums[j]));
  return solve_impl(margins, std::move(v), tol, max_sweeps);
}

TypicalTable solve_typical_from(const Margins& margins, DualVariables start,
                                double tol, int max_sweeps) {
  return solve_impl(margins, std::move(start), tol, max_sweeps);
}

double log_rho(const TypicalTable& tt) { return tt.g_of_z; }

CountBounds count_bounds(const TypicalTable& tt) {
  CountBounds b;
  b.log_upper = tt.g_of_z;
  b.margin_dim = tt.margins.rows() + tt.margins.cols();
  b.log_total = std::log(static_cast<double>(tt.margins.total));
  b.lower_form =
      "log_upper - gamma * " + std::to_string(b.margin_dim) + " * " +
      std::to_string(b.log_total) + " for an absolute constant gamma";
  return b;
}

double check_optimality(const RealMat& z) {
  const int m = z.rows();
  const int n = z.cols();
  if (m < 1 || n < 1) throw InvalidArgument("empty matrix");

  RealMat big_l(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      if (!(z(i, j) > 0.0))
        throw NonPositiveEntry("additive fit needs strictly positive entries");
      big_l(i, j) = std::log1p(1.0 / z(i, j));
    }

  // Least-squares additive fit L_ij ~ lambda_i + mu_j has the closed form
  // lambda_i = rowmean_i - u, mu_j = colmean_j - v with u + v = grand mean;
  // the gauge lambda_1 = L_11 / 2 pins u.
  std::vector<double> row_mean(m, 0.0), col_mean(n, 0.0);
  double grand = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      row_mean[i] += big_l(i, j) / n;
      col_mean[j] += big_l(i, j) / m;
      grand += big_l(i, j) / (static_cast<double>(m) * n);
    }
  const double u = row_mean[0] - 0.5 * big_l(0, 0);
  const double w = grand - u;

  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(big_l(i, j) - (row_mean[i] - u) -
                                       (col_mean[j] - w)));
  return worst;
}

double check_optimality(const TypicalTable& tt) { return check_optimality(tt.z); }

EntryFloors entry_lower_bounds(const Margins& margins) {
  const auto [r_min_it, r_max_it] =
      std::minmax_element(margins.row_sums.begin(), margins.row_sums.end());
  const auto [c_min_it, c_max_it] =
      std::minmax_element(margins.col_sums.begin(), margins.col_sums.end());
  const double r_min = static_cast<double>(*r_min_it);
  const double r_max = static_cast<double>(*r_max_it);
  const double c_min = static_cast<double>(*c_min_it);
  const double c_max = static_cast<double>(*c_max_it);
  const double m = margins.rows();
  const double n = margins.cols();
  const double delta = smoothness_delta(margins);

  EntryFloors floors;
  floors.row_bound = r_min * c_min / (r_max * m);
  floors.col_bound = c_min * r_min / (c_max * n);
  floors.smooth_bound =
      delta * delta * delta * static_cast<double>(margins.total) / (m * n);
  return floors;
}

std::vector<int> large_entry_rows(const TypicalTable& tt, double alpha) {
  const double m = tt.margins.rows();
  const double n = tt.margins.cols();
  const double total = static_cast<double>(tt.margins.total);
  if (!(alpha >= 2.0 * m * n / total))
    throw AlphaTooSmall("alpha must be at least 2mn/N = " +
                        std::to_string(2.0 * m * n / total));

  const double threshold = alpha * total / (m * n);
  std::vector<int> rows;
  for (int i = 0; i < tt.z.rows(); ++i)
    for (int j = 0; j < tt.z.cols(); ++j)
      if (tt.z(i, j) >= threshold) {
        rows.push_back(i);
        break;
      }
  return rows;
}

}  // namespace tt
