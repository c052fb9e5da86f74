#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tt/entry_set.hpp"
#include "tt/grid.hpp"
#include "tt/random.hpp"
#include "tt/typical.hpp"

namespace tt {

// Independent geometric cells with prescribed means: cell (i,j) takes value
// k with probability p_ij * q_ij^k where q = z/(1+z), p = 1/(1+z).
//
// When the means are a typical table, every integer table with the right
// margins has the same probability exp(-g(z)) under this model, which is
// what makes rejection-to-margins an exact uniform sampler.
struct GeometricMatrixModel {
  RealMat z;
  RealMat log_q;  // -inf where z == 0
  RealMat log_p;

  static GeometricMatrixModel from_means(const RealMat& z);
};

// One matrix of independent geometric draws (inverse transform:
// k = floor(ln u / ln q)).
IntMat geometric_matrix_sample(const GeometricMatrixModel& model,
                               RandomStream& rng);

// ln Pr{X = d} under the model. d must be entrywise non-negative and match
// the model's shape (NegativeEntry / ShapeMismatch). -inf if d puts mass on
// a zero-mean cell.
double log_mass(const GeometricMatrixModel& model, const IntMat& d);

// Max over the given tables of |log_mass(D) + g(Z)| for the model built
// from tt.z: zero in exact arithmetic, so the return value measures solver
// and roundoff error. Every table must have tt's margins (MarginMismatch).
double verify_constant_mass(const TypicalTable& tt,
                            const std::vector<IntMat>& tables);

struct RejectionSample {
  IntMat table;
  std::uint64_t attempts = 0;
};

using ProgressFn = std::function<void(std::uint64_t attempts)>;

// Exact uniform sample over the tables with tt's margins: draw from the
// geometric model until the margins match. Draws are consumed sequentially
// from `stream`, so the accepted table and attempt count depend only on the
// stream's seed and the margins. Callers wanting independent, order-free
// samples hand each draw its own child stream (see the splitting rule in
// random.hpp); re-seeding per attempt here would cost more than the draws.
// Rows are generated and checked incrementally; a partial row sum already
// above its target aborts the attempt early, which cannot bias the accepted
// distribution because acceptance still requires exact margins.
// Throws AttemptsExhausted after max_attempts. `progress`, if given, is
// called every 1e6 attempts.
RejectionSample rejection_uniform_sample(const TypicalTable& tt,
                                         RandomStream& stream,
                                         std::uint64_t max_attempts = 100'000'000,
                                         const ProgressFn& progress = nullptr);

// Chernoff-style tail bounds for sigma_S(X) under the geometric model,
// in terms of sigma = sigma_S(z) and nu = nu_S(z) (their sum is the exact
// variance of sigma_S(X)).
//
// Lower tail, valid for 0 < t <= 2:
//   Pr{sigma_S(X) <= sigma - a} <= exp(-t a + t^2 (sigma + nu) / 2)
double tail_bound_lower(double sigma, double nu, double a, double t);

// Upper tail, valid for 0 < t <= min(1/3, 1 / (2 max_{S} z_ij)):
//   Pr{sigma_S(X) >= sigma + a} <= exp(-t a + 2 t^2 (sigma + nu))
double tail_bound_upper(double sigma, double nu, double a, double t,
                        double z_max_on_s);

enum class TailSide { lower, upper };

// Closed-form relative-deviation bounds for delta-smooth margins with
// z_ij <= alpha N/(mn) on S (alpha >= 1, 0 < eps < 1, 0 < delta <= 1):
//   lower: Pr{sigma_S(X) <= (1-eps) sigma_S(z)} <= exp(-eps^2 delta^4 |S| / (2 + 2 delta alpha))
//   upper: Pr{sigma_S(X) >= (1+eps) sigma_S(z)} <= exp(-eps^2 delta^4 |S| / (8 + 8 delta alpha))
double concentration_bound(double delta, double alpha, std::int64_t set_size,
                           double eps, TailSide side);

}  // namespace tt
