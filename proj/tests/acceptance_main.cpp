// Acceptance gate: runs the release checklist end to end and prints one
// [PASS]/[FAIL] line per item. Exits with the number of failures, so a
// zero exit means the build is good. The `tt` binary path arrives as
// argv[1] (needed for the byte-identical rerun checks).
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tt/tt.hpp"

namespace fs = std::filesystem;
using namespace tt;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Solver convergence on a suite of random smooth margins.

struct SolvedSuite {
  std::vector<Margins> margins;
  std::vector<TypicalTable> solutions;
};

// Random margins with 2 <= m <= 20, m <= n <= 40 and every margin <= 200.
// Entries start at 1 and the remaining total is spread uniformly, which
// keeps both sides positive; oversized draws are rejected and retried.
Margins random_margins(RandomStream& rng) {
  for (;;) {
    const int m = 2 + static_cast<int>(rng.below(19));
    const int n = m + static_cast<int>(rng.below(static_cast<std::uint64_t>(41 - m)));
    const std::int64_t density = 1 + static_cast<std::int64_t>(rng.below(4));
    const std::int64_t total = density * m * n;
    std::vector<std::int64_t> rows(m, 1), cols(n, 1);
    for (std::int64_t u = 0; u < total - m; ++u) ++rows[rng.below(m)];
    for (std::int64_t u = 0; u < total - n; ++u) ++cols[rng.below(n)];
    const auto oversized = [](const std::vector<std::int64_t>& v) {
      return *std::max_element(v.begin(), v.end()) > 200;
    };
    if (oversized(rows) || oversized(cols)) continue;
    return validate_margins(std::move(rows), std::move(cols));
  }
}

Outcome check_solver_suite(SolvedSuite& suite) {
  const auto start = std::chrono::steady_clock::now();
  RandomStream root(20260819);
  double max_residual = 0.0, max_opt = 0.0;
  for (int i = 0; i < 50; ++i) {
    RandomStream rng = root.child(i);
    Margins m = random_margins(rng);
    TypicalTable t = solve_typical(m);
    max_residual = std::max(max_residual, t.residual);
    max_opt = std::max(max_opt, check_optimality(t));
    if (!t.converged)
      return {false, "instance " + std::to_string(i) + " did not converge"};
    suite.margins.push_back(std::move(m));
    suite.solutions.push_back(std::move(t));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  Outcome out;
  out.ok = max_residual <= 1e-10 && max_opt <= 1e-6 && secs < 5.0;
  out.detail = "50 instances, max residual " + fmt(max_residual) +
               ", max optimality gap " + fmt(max_opt) + ", " + fmt(secs) + "s";
  return out;
}

// ---------------------------------------------------------------------------
// Shared small families (every table enumerable by hand).

const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>
    kSmallFamilies = {
        {{1, 1}, {1, 1}},       {{2, 2}, {2, 2}},    {{1, 1, 1}, {1, 1, 1}},
        {{2, 1}, {1, 1, 1}},    {{3, 2, 1}, {2, 2, 2}},
};

// 2. The geometric model assigns every table of a family the same mass.

Outcome check_constant_mass() {
  double worst_spread = 0.0, worst_rel = 0.0;
  for (const auto& [r, c] : kSmallFamilies) {
    const Margins m = validate_margins(r, c);
    const TypicalTable t = solve_typical(m);
    const auto family = enumerate_tables(m);
    const auto model = GeometricMatrixModel::from_means(t.z);
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (const auto& d : family) {
      const double lm = log_mass(model, d);
      lo = std::min(lo, lm);
      hi = std::max(hi, lm);
    }
    worst_spread = std::max(worst_spread, hi - lo);
    const double rel = std::max(std::abs(hi + t.g_of_z), std::abs(lo + t.g_of_z)) /
                       std::abs(t.g_of_z);
    worst_rel = std::max(worst_rel, rel);
  }
  Outcome out;
  out.ok = worst_spread <= 1e-10 && worst_rel <= 1e-8;
  out.detail = "5 families, max spread " + fmt(worst_spread) +
               ", max relative error vs -g(Z) " + fmt(worst_rel);
  return out;
}

// 3. exp(g(Z)) bounds the exact table count from above.

Outcome check_count_bound() {
  for (const auto& [r, c] : kSmallFamilies) {
    const Margins m = validate_margins(r, c);
    const TypicalTable t = solve_typical(m);
    const BigInt count = count_tables(m);
    if (log_rho(t) < log_big(count) - 1e-9)
      return {false, "bound violated on a " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " family"};
  }
  // frozen values: 729/16 vs 2 tables, and 256 vs 3 tables
  const TypicalTable t1 = solve_typical(validate_margins({1, 1}, {1, 1}));
  const TypicalTable t2 = solve_typical(validate_margins({2, 2}, {2, 2}));
  const bool frozen =
      ttt::close_rel(std::exp(log_rho(t1)), 729.0 / 16.0, 1e-9) &&
      ttt::close_rel(std::exp(log_rho(t2)), 256.0, 1e-9) &&
      count_tables(validate_margins({1, 1}, {1, 1})) == 2 &&
      count_tables(validate_margins({2, 2}, {2, 2})) == 3;
  if (!frozen) return {false, "frozen small-instance values drifted"};
  return {true, "bound holds on all 5 families; 729/16 >= 2 and 256 >= 3"};
}

// ---------------------------------------------------------------------------
// 4. Both samplers are uniform, and rejection accepts at the predicted rate.

struct RejectionRun {
  std::vector<std::int64_t> counts;
  std::uint64_t attempts = 0;
};

RejectionRun run_rejection(const TypicalTable& t,
                           const ttt::TableIndex& index, std::uint64_t draws,
                           std::uint64_t seed) {
  RejectionRun run;
  run.counts.assign(index.size(), 0);
  RandomStream root(seed);
  for (std::uint64_t k = 0; k < draws; ++k) {
    RandomStream lane = root.child(k);
    const RejectionSample s = rejection_uniform_sample(t, lane);
    ++run.counts[index.of(s.table)];
    run.attempts += s.attempts;
  }
  return run;
}

std::vector<std::int64_t> run_dp(const DPTable& dp,
                                 const ttt::TableIndex& index,
                                 std::uint64_t draws, std::uint64_t seed) {
  std::vector<std::int64_t> counts(index.size(), 0);
  RandomStream root(seed);
  for (std::uint64_t k = 0; k < draws; ++k) {
    RandomStream lane = root.child(k);
    ++counts[index.of(dp_uniform_sample(dp, lane))];
  }
  return counts;
}

Outcome check_sampler_uniformity() {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t draws = 100000;
  double min_p = 1.0;
  std::string rate_note;

  const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>
      instances = {{{2, 2}, {2, 2}}, {{1, 1, 1}, {1, 1, 1}}};
  for (const auto& [r, c] : instances) {
    const Margins m = validate_margins(r, c);
    const TypicalTable t = solve_typical(m);
    const auto family = enumerate_tables(m);
    const ttt::TableIndex index(family);

    const RejectionRun rej = run_rejection(t, index, draws, 1001);
    const double p_rej = ttt::uniform_chi_square_pvalue(rej.counts, draws);
    min_p = std::min(min_p, p_rej);

    const DPTable dp(m);
    const auto dp_counts = run_dp(dp, index, draws, 1002);
    min_p = std::min(min_p, ttt::uniform_chi_square_pvalue(dp_counts, draws));

    // acceptance rate vs |family| / exp(g(Z)), within 4 binomial SEs
    const double p_true = static_cast<double>(family.size()) * std::exp(-t.g_of_z);
    const double rate = static_cast<double>(draws) / rej.attempts;
    const double se = std::sqrt(p_true * (1.0 - p_true) / rej.attempts);
    if (std::abs(rate - p_true) > 4.0 * se)
      return {false, "acceptance rate " + fmt(rate) + " outside 4 SE of " +
                         fmt(p_true)};
  }

  // the 2x2 all-ones family accepts ~4.4% of attempts; check it directly
  {
    const Margins m = validate_margins({1, 1}, {1, 1});
    const TypicalTable t = solve_typical(m);
    const ttt::TableIndex index(enumerate_tables(m));
    const RejectionRun rej = run_rejection(t, index, draws, 1003);
    const double p_true = 32.0 / 729.0;
    const double rate = static_cast<double>(draws) / rej.attempts;
    const double se = std::sqrt(p_true * (1.0 - p_true) / rej.attempts);
    if (std::abs(rate - p_true) > 4.0 * se)
      return {false, "2x2 acceptance rate " + fmt(rate) + " outside 4 SE of " +
                         fmt(p_true)};
    rate_note = ", 2x2 acceptance " + fmt(rate) + " vs " + fmt(p_true);
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  Outcome out;
  out.ok = min_p > 0.001 && secs < 60.0;
  out.detail = "min chi-square p " + fmt(min_p) + rate_note + ", " + fmt(secs) + "s";
  return out;
}

// ---------------------------------------------------------------------------
// 5. Tail bounds dominate the observed block-sum tails, and the predicted
//    variance matches.

Outcome check_tail_bounds() {
  const Margins m = validate_margins({10, 10, 10, 10, 10}, {10, 10, 10, 10, 10});
  const TypicalTable t = solve_typical(m);
  const EntrySet s = EntrySet::all(5, 5);
  const double sigma = sigma_S(t.z, s);  // 50: every entry is 2
  const double nu = nu_S(t.z, s);        // 100
  const auto model = GeometricMatrixModel::from_means(t.z);

  const std::uint64_t draws = 100000;
  std::vector<double> sums(draws);
  RandomStream rng(515151);
  for (std::uint64_t k = 0; k < draws; ++k)
    sums[k] = static_cast<double>(sigma_S(geometric_matrix_sample(model, rng), s));

  const double a_grid[5] = {5, 10, 15, 20, 25};
  const double t_lower[5] = {0.02, 0.05, 0.1, 0.15, 0.2};
  const double t_upper[5] = {0.01, 0.02, 0.04, 0.08, 0.16};  // caps at 1/(2*2)

  double worst_margin = HUGE_VAL;  // min over the grid of bound - frequency
  for (double a : a_grid) {
    double freq_lo = 0, freq_hi = 0;
    for (double x : sums) {
      if (x <= sigma - a) ++freq_lo;
      if (x >= sigma + a) ++freq_hi;
    }
    freq_lo /= draws;
    freq_hi /= draws;
    for (int i = 0; i < 5; ++i) {
      worst_margin = std::min(
          worst_margin, tail_bound_lower(sigma, nu, a, t_lower[i]) - freq_lo);
      worst_margin = std::min(
          worst_margin,
          tail_bound_upper(sigma, nu, a, t_upper[i], 2.0) - freq_hi);
    }
  }

  // empirical variance vs sigma + nu, within 5 standard errors
  double mean = 0;
  for (double x : sums) mean += x;
  mean /= draws;
  double var = 0, m4 = 0;
  for (double x : sums) {
    const double d = x - mean;
    var += d * d;
    m4 += d * d * d * d;
  }
  var /= draws;
  m4 /= draws;
  const double se_var = std::sqrt((m4 - var * var) / draws);
  const double var_gap = std::abs(var - (sigma + nu));

  Outcome out;
  out.ok = worst_margin >= 0.0 && var_gap <= 5.0 * se_var;
  out.detail = "min bound slack " + fmt(worst_margin) + ", variance " +
               fmt(var) + " vs " + fmt(sigma + nu) + " (" +
               fmt(var_gap / se_var) + " SE)";
  return out;
}

// ---------------------------------------------------------------------------
// 6. Block sums of uniform draws concentrate around the typical value.

Outcome check_concentration() {
  const auto start = std::chrono::steady_clock::now();
  const Margins m = validate_margins(std::vector<std::int64_t>(5, 40),
                                     std::vector<std::int64_t>(40, 5));
  const TypicalTable t = solve_typical(m);
  const EntrySet s = EntrySet::block(0, 5, 0, 20);  // left half
  const double sigma_z = sigma_S(t.z, s);
  const double delta = smoothness_delta(m);

  const DPTable dp(m);
  const int draws = 1000;
  std::vector<double> ratio(draws);
  RandomStream root(606060);
  for (int k = 0; k < draws; ++k) {
    RandomStream lane = root.child(k);
    ratio[k] =
        static_cast<double>(sigma_S(dp_uniform_sample(dp, lane), s)) / sigma_z;
  }

  double mean = 0;
  int inside = 0;
  for (double r : ratio) {
    mean += r;
    if (r >= 0.8 && r <= 1.2) ++inside;
  }
  mean /= draws;

  // lower-tail frequency vs the theoretical bound at every swept epsilon
  double alpha = 1.0;
  for (const auto& [i, j] : s.cells())
    alpha = std::max(alpha, t.z(i, j) * m.rows() * m.cols() / m.total);
  bool tails_ok = true;
  for (double eps : {0.01, 0.02, 0.05, 0.1, 0.2}) {
    double below = 0;
    for (double r : ratio)
      if (r <= 1.0 - eps) ++below;
    below /= draws;
    const double bound = concentration_bound(
        delta, alpha, static_cast<std::int64_t>(s.size()), eps, TailSide::lower);
    if (below > bound) tails_ok = false;
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  Outcome out;
  out.ok = std::abs(mean - 1.0) <= 0.05 &&
           inside >= static_cast<int>(0.95 * draws) && tails_ok && secs < 120.0;
  out.detail = "mean ratio " + fmt(mean) + ", " + fmt(100.0 * inside / draws) +
               "% within [0.8,1.2], " + fmt(secs) + "s";
  return out;
}

// ---------------------------------------------------------------------------
// 7. The lopsided family concentrates mass in its corner, and cloned
//    margins scale the corner block sum by k^2.

Outcome check_lopsided_and_clones() {
  for (int n : {10, 20, 40}) {
    std::vector<std::int64_t> r(n, n);
    r[0] = 3 * n;
    const Margins m = validate_margins(r, r);
    const TypicalTable t = solve_typical(m);
    const RealMat y = independence_table(m);
    if (!(t.z(0, 0) > 0.58 * n))
      return {false, "corner entry " + fmt(t.z(0, 0)) + " not above 0.58n at n=" +
                         std::to_string(n)};
    if (!(y(0, 0) <= 9.0))
      return {false, "independence corner above 9 at n=" + std::to_string(n)};
  }

  const Margins base = validate_margins({3, 1}, {2, 1, 1});
  double first = 0.0;
  for (int k : {1, 2, 3}) {
    const TypicalTable t = solve_typical(clone_margins(base, k));
    const EntrySet corner = EntrySet::block(0, k, 0, k);
    const double scaled = sigma_S(t.z, corner) / (k * k);
    if (k == 1)
      first = scaled;
    else if (!ttt::close_rel(scaled, first, 1e-6))
      return {false, "corner block sum over k^2 drifted at k=" +
                         std::to_string(k)};
  }
  return {true, "corner above 0.58n for n in {10,20,40}; clone trajectory flat at " +
                    fmt(first)};
}

// ---------------------------------------------------------------------------
// 8. The scaling map lands on the scaled margins, respects the offset and
//    margin windows, contracts block sums, and has small fibers.

Outcome check_scaling_map() {
  RandomStream root(808080);
  std::uint64_t set_lane = 0;
  for (const auto& rc : {std::vector<std::int64_t>{1, 1},
                         std::vector<std::int64_t>{2, 2}}) {
    const Margins m = validate_margins(rc, rc);
    const auto family = enumerate_tables(m);
    for (std::int64_t t = 1; t <= 3; ++t) {
      const ScalingContext ctx = ScalingContext::create(m, t);

      // offset entries sit in [2t, 3t) over the common denominator t
      const RationalMat b = ctx.offset();
      for (std::int64_t v : b.num.raw())
        if (v < 2 * t || v >= 3 * t)
          return {false, "offset outside [2,3) at t=" + std::to_string(t)};

      // scaled margins windows, checked in exact integer arithmetic
      const int n = m.cols(), rows = m.rows();
      for (int i = 0; i < rows; ++i) {
        const std::int64_t rp = ctx.scaled.row_sums[i];
        if (t * (rp - 2 * n) < m.row_sums[i] || t * (rp - 3 * n) > m.row_sums[i])
          return {false, "row margin window violated at t=" + std::to_string(t)};
      }
      for (int j = 0; j < n; ++j) {
        const std::int64_t cp = ctx.scaled.col_sums[j];
        if (t * (cp - 2 * rows) < m.col_sums[j] ||
            t * (cp - 3 * rows) > m.col_sums[j])
          return {false, "column margin window violated at t=" + std::to_string(t)};
      }

      std::map<std::vector<std::int64_t>, std::int64_t> fibers;
      for (const auto& d : family) {
        const IntMat img = t_scale(ctx, d);
        if (!has_margins(img, ctx.scaled))
          return {false, "image margins wrong at t=" + std::to_string(t)};
        ++fibers[img.raw()];

        // block sums contract by t, up to the 5|S|t additive slack
        for (int si = 0; si < 20; ++si) {
          RandomStream rng = root.child(set_lane++);
          const EntrySet s =
              EntrySet::random_fraction(rows, n, 0.5, rng);
          const std::int64_t before = sigma_S(d, s);
          const std::int64_t after = sigma_S(img, s);
          const std::int64_t cells = static_cast<std::int64_t>(s.size());
          if (t * after < before || t * after > before + 5 * cells * t)
            return {false, "block-sum contraction violated at t=" +
                               std::to_string(t)};
        }
      }

      BigInt bound = 1;
      for (int e = 0; e < (rows - 1) * (n - 1); ++e) bound *= t;
      for (const auto& [img, cnt] : fibers)
        if (BigInt(cnt) > bound)
          return {false, "fiber larger than t^((m-1)(n-1)) at t=" +
                             std::to_string(t)};
    }
  }
  return {true, "2 families x t in {1,2,3}: margins, windows, offsets, "
                "contraction, fibers all hold"};
}

// ---------------------------------------------------------------------------
// 9. Entry floors and the large-row bound hold across the solved suite.

Outcome check_structural_bounds(const SolvedSuite& suite) {
  for (std::size_t i = 0; i < suite.solutions.size(); ++i) {
    const Margins& m = suite.margins[i];
    const TypicalTable& t = suite.solutions[i];

    const EntryFloors floors = entry_lower_bounds(m);
    double min_z = HUGE_VAL;
    for (double z : t.z.raw()) min_z = std::min(min_z, z);
    const auto holds = [&](double bound) {
      return min_z >= bound - 1e-9 * std::max(1.0, bound);
    };
    if (!holds(floors.row_bound) || !holds(floors.col_bound) ||
        !holds(floors.smooth_bound))
      return {false, "entry floor violated on suite instance " +
                         std::to_string(i)};

    const double delta = smoothness_delta(m);
    const double base_alpha =
        2.0 * m.rows() * m.cols() / static_cast<double>(m.total);
    for (double c : {1.0, 2.0, 4.0}) {
      const double alpha = c * base_alpha;
      const auto big_rows = large_entry_rows(t, alpha);
      if (static_cast<double>(big_rows.size()) > 4.0 * m.rows() / (delta * alpha))
        return {false, "too many large rows on suite instance " +
                           std::to_string(i)};
    }
  }
  return {true, "floors and large-row bound hold on all 50 suite instances"};
}

// ---------------------------------------------------------------------------
// 10. Rerunning every CLI subcommand with the same config and seed
//     reproduces the output files byte for byte.

int run_cli(const std::string& bin, const std::string& args) {
  const std::string cmd = "\"" + bin + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool same_tree(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> rel;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) rel.push_back(fs::relative(e.path(), a));
  std::size_t b_count = 0;
  for (const auto& e : fs::recursive_directory_iterator(b))
    if (e.is_regular_file()) ++b_count;
  if (b_count != rel.size()) return false;
  for (const auto& r : rel)
    if (!fs::exists(b / r) || slurp(a / r) != slurp(b / r)) return false;
  return true;
}

Outcome check_reproducibility(const std::string& bin) {
  const std::vector<std::pair<std::string, std::string>> cmds = {
      {"typical", "typical --rows 3,1 --cols 2,1,1 --seed 5"},
      {"compare", "compare --rows 3,1 --cols 2,1,1 --clone-ks 1,2,3 --seed 5"},
      {"count", "count --rows 2,2 --cols 2,2 --seed 5"},
      {"sample-rejection",
       "sample --rows 2,2 --cols 2,2 --samples 200 --method rejection "
       "--seed 9 --jobs 2"},
      {"sample-dp",
       "sample --rows 2,2 --cols 2,2 --samples 200 --method dp --seed 9"},
      {"concentrate",
       "concentrate --rows 4,4 --cols 2,2,2,2 --samples 100 --seed 4 "
       "--set \"fraction 0.5\""},
      {"scale", "scale --rows 2,2 --cols 2,2 --t 2 --seed 3"},
  };

  const fs::path root =
      fs::temp_directory_path() /
      ("tt_accept_" + std::to_string(static_cast<long>(::getpid())));
  fs::create_directories(root);
  Outcome out{true, std::to_string(cmds.size()) + " subcommand configs byte-identical"};
  for (const auto& [name, args] : cmds) {
    const fs::path a = root / (name + "_a"), b = root / (name + "_b");
    if (run_cli(bin, args + " --out " + a.string()) != 0 ||
        run_cli(bin, args + " --out " + b.string()) != 0) {
      out = {false, name + " exited nonzero"};
      break;
    }
    if (!same_tree(a, b)) {
      out = {false, name + " reruns differ"};
      break;
    }
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-tt-binary>\n", argv[0]);
    return 64;
  }
  const std::string tt_bin = argv[1];

  int failures = 0;
  const auto report = [&](int index, const char* label, const Outcome& o) {
    std::printf("[%s] %2d %s: %s\n", o.ok ? "PASS" : "FAIL", index, label,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  };

  SolvedSuite suite;
  report(1, "solver convergence on random smooth margins", check_solver_suite(suite));
  report(2, "constant sample mass across enumerable families", check_constant_mass());
  report(3, "count upper bound exp(g(Z))", check_count_bound());
  report(4, "sampler uniformity and acceptance rate", check_sampler_uniformity());
  report(5, "tail bound domination and variance identity", check_tail_bounds());
  report(6, "block-sum concentration under uniform draws", check_concentration());
  report(7, "lopsided corner growth and clone scaling", check_lopsided_and_clones());
  report(8, "scaling map windows, contraction, and fibers", check_scaling_map());
  report(9, "entry floors and large-row bound on the suite", check_structural_bounds(suite));
  report(10, "byte-identical CLI reruns", check_reproducibility(tt_bin));

  std::printf("acceptance: %d/10 passed\n", 10 - failures);
  return failures;
}
