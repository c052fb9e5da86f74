#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "outputs.hpp"

namespace ttcli {

namespace {

json int_table_json(const tt::IntMat& t) {
  json j;
  j["m"] = t.rows();
  j["n"] = t.cols();
  j["entries"] = t.raw();
  return j;
}

json real_matrix_json(const tt::RealMat& x) {
  json j;
  j["m"] = x.rows();
  j["n"] = x.cols();
  j["entries"] = x.raw();
  return j;
}

json margins_json(const tt::Margins& m) {
  json j;
  j["rows"] = m.row_sums;
  j["cols"] = m.col_sums;
  return j;
}

// Runs fn(0..n-1) on `jobs` threads. Work items must be independent and
// index-addressed so the result is the same for every worker count.
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (int k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (int k = next.fetch_add(1); k < n; k = next.fetch_add(1)) {
        try {
          fn(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

double auto_alpha(const tt::Margins& m) {
  const double mn = static_cast<double>(m.rows()) * m.cols();
  return std::max(2.0, 2.0 * mn / static_cast<double>(m.total));
}

// Per-row/column report of the guaranteed entry floors against the solved
// table's actual minimum.
json floors_json(const tt::TypicalTable& solved) {
  const tt::EntryFloors f = tt::entry_lower_bounds(solved.margins);
  double z_min = solved.z(0, 0);
  for (double z : solved.z.raw()) z_min = std::min(z_min, z);
  const auto holds = [&](double bound) {
    return z_min >= bound - 1e-9 * (1.0 + std::abs(bound));
  };
  json j;
  j["row_bound"] = f.row_bound;
  j["col_bound"] = f.col_bound;
  j["smooth_bound"] = f.smooth_bound;
  j["min_z"] = z_min;
  j["all_hold"] =
      holds(f.row_bound) && holds(f.col_bound) && holds(f.smooth_bound);
  return j;
}

json large_entries_json(const tt::TypicalTable& solved, double alpha_flag) {
  const tt::Margins& m = solved.margins;
  const double mn = static_cast<double>(m.rows()) * m.cols();
  const double alpha = alpha_flag > 0.0 ? alpha_flag : auto_alpha(m);
  const auto rows = tt::large_entry_rows(solved, alpha);
  const double bound =
      4.0 * m.rows() / (tt::smoothness_delta(m) * alpha);
  json j;
  j["alpha"] = alpha;
  j["threshold"] = alpha * static_cast<double>(m.total) / mn;
  json row_list = json::array();
  for (int i : rows) row_list.push_back(i + 1);
  j["rows"] = row_list;
  j["count"] = rows.size();
  j["count_bound"] = bound;
  j["holds"] = static_cast<double>(rows.size()) <= bound + 1e-9;
  return j;
}

std::string key2(int one_based) { return std::to_string(one_based); }

}  // namespace

int cmd_typical(const ExperimentConfig& cfg) {
  const tt::Margins m = load_margins(cfg);
  tt::TypicalTable solved;
  try {
    solved = tt::solve_typical(m, cfg.tol, cfg.max_sweeps);
  } catch (const tt::NoConvergence& e) {
    solved = e.best;  // dump the best iterate below, then fail
  }

  json table;
  table["meta"] = meta_json(cfg);
  table["table"] = real_matrix_json(solved.z);
  write_json_file(cfg, "typical.json", table);

  json duals;
  duals["meta"] = meta_json(cfg);
  duals["s"] = solved.duals.s;
  duals["t"] = solved.duals.t;
  write_json_file(cfg, "duals.json", duals);

  const tt::RealMat y = tt::independence_table(m);
  double max_diff = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      max_diff = std::max(max_diff, std::abs(solved.z(i, j) - y(i, j)));

  json report;
  report["meta"] = meta_json(cfg);
  report["margins"] = margins_json(m);
  report["converged"] = solved.converged;
  report["residual"] = solved.residual;
  report["sweeps"] = solved.sweeps;
  report["g_of_z"] = solved.g_of_z;
  report["log_rho"] = tt::log_rho(solved);
  report["delta"] = tt::smoothness_delta(m);
  report["optimality_residual"] = tt::check_optimality(solved);
  report["z_11"] = solved.z(0, 0);
  report["y_11"] = y(0, 0);
  report["max_abs_z_minus_y"] = max_diff;
  report["entry_floors"] = floors_json(solved);
  report["large_entries"] = large_entries_json(solved, cfg.alpha);
  const tt::CountBounds b = tt::count_bounds(solved);
  json bounds;
  bounds["log_upper"] = b.log_upper;
  bounds["margin_dim"] = b.margin_dim;
  bounds["log_total"] = b.log_total;
  bounds["lower_form"] = b.lower_form;
  report["count_bounds"] = bounds;
  write_json_file(cfg, "report.json", report);

  return solved.converged ? 0 : 2;
}

int cmd_compare(const ExperimentConfig& cfg) {
  const tt::Margins base = load_margins(cfg);
  const auto ks64 = parse_int_list(cfg.clone_ks);
  for (std::int64_t k : ks64)
    if (k < 1 || k > 64)
      throw tt::InvalidArgument("clone factors must lie in [1, 64]");

  const tt::TypicalTable z1 = tt::solve_typical(base, cfg.tol, cfg.max_sweeps);
  const tt::RealMat y = tt::independence_table(base);
  const tt::RandomStream root(cfg.seed);
  const tt::EntrySet s_base =
      parse_entry_set(cfg.set_spec, base.rows(), base.cols(), root);

  CsvFile csv(cfg, "compare.csv", "record,key1,key2,value");
  double max_diff = 0.0;
  for (int i = 0; i < base.rows(); ++i)
    for (int j = 0; j < base.cols(); ++j) {
      csv.row({"z", key2(i + 1), key2(j + 1), fmt_double(z1.z(i, j))});
      csv.row({"y", key2(i + 1), key2(j + 1), fmt_double(y(i, j))});
      csv.row({"diff", key2(i + 1), key2(j + 1),
               fmt_double(z1.z(i, j) - y(i, j))});
      max_diff = std::max(max_diff, std::abs(z1.z(i, j) - y(i, j)));
    }

  const double total = static_cast<double>(base.total);
  csv.row({"summary", "g_of_z", "", fmt_double(z1.g_of_z)});
  csv.row({"summary", "g_of_y", "", fmt_double(tt::g_value(y))});
  csv.row({"summary", "entropy_z", "", fmt_double(tt::entropy_H(z1.z, total))});
  csv.row({"summary", "entropy_y", "", fmt_double(tt::entropy_H(y, total))});
  csv.row({"summary", "max_abs_diff", "", fmt_double(max_diff)});
  csv.row({"summary", "delta", "", fmt_double(tt::smoothness_delta(base))});
  csv.row({"summary", "residual", "", fmt_double(z1.residual)});

  // Cloned families: the block sum over the cloned set, divided by k^2,
  // stays constant across clone factors.
  for (std::int64_t k64 : ks64) {
    const int k = static_cast<int>(k64);
    const tt::Margins cloned = tt::clone_margins(base, k);
    const tt::TypicalTable zk =
        k == 1 ? z1 : tt::solve_typical(cloned, cfg.tol, cfg.max_sweeps);
    std::vector<tt::EntrySet::Index> cells;
    for (const auto& [i, j] : s_base.cells())
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) cells.emplace_back(k * i + a, k * j + b);
    const double sigma = tt::sigma_S(zk.z, tt::EntrySet(std::move(cells)));
    csv.row({"clone", key2(k), "sigma", fmt_double(sigma)});
    csv.row({"clone", key2(k), "sigma_over_k2",
             fmt_double(sigma / (static_cast<double>(k) * k))});
    csv.row({"clone", key2(k), "residual", fmt_double(zk.residual)});
  }
  return 0;
}

int cmd_count(const ExperimentConfig& cfg) {
  const tt::Margins m = load_margins(cfg);
  const std::uint64_t budget = resolve_budget(cfg);
  const tt::DPTable dp(m, budget);
  const tt::TypicalTable solved = tt::solve_typical(m, cfg.tol, cfg.max_sweeps);

  const double lc = tt::log_big(dp.total_count());
  const double lr = tt::log_rho(solved);
  json out;
  out["meta"] = meta_json(cfg);
  out["margins"] = margins_json(m);
  out["count"] = dp.total_count().str();
  out["log_count"] = lc;
  out["log_rho"] = lr;
  out["ratio"] = lc / lr;
  out["upper_bound_holds"] = lr >= lc - 1e-9;
  out["dp_states"] = dp.memo_size();
  out["budget"] = budget;
  write_json_file(cfg, "count.json", out);
  return 0;
}

int cmd_sample(const ExperimentConfig& cfg) {
  const tt::Margins m = load_margins(cfg);
  if (cfg.method != "rejection" && cfg.method != "dp")
    throw tt::InvalidArgument("--method must be rejection or dp");
  const int n_samples = cfg.samples;
  if (n_samples < 1) throw tt::InvalidArgument("--samples must be >= 1");
  const tt::RandomStream root(cfg.seed);

  std::vector<tt::IntMat> tables(n_samples);
  json stats;
  stats["meta"] = meta_json(cfg);
  stats["margins"] = margins_json(m);
  stats["method"] = cfg.method;
  stats["samples"] = n_samples;

  if (cfg.method == "rejection") {
    const tt::TypicalTable solved =
        tt::solve_typical(m, cfg.tol, cfg.max_sweeps);
    std::vector<std::uint64_t> attempts(n_samples, 0);
    parallel_for(n_samples, cfg.jobs, [&](int k) {
      tt::RandomStream s = root.child(static_cast<std::uint64_t>(k));
      tt::RejectionSample r =
          tt::rejection_uniform_sample(solved, s, cfg.max_attempts);
      tables[k] = std::move(r.table);
      attempts[k] = r.attempts;
    });

    std::uint64_t total = 0;
    for (std::uint64_t a : attempts) total += a;
    std::vector<std::uint64_t> sorted = attempts;
    std::sort(sorted.begin(), sorted.end());
    const double rate =
        static_cast<double>(n_samples) / static_cast<double>(total);
    stats["total_attempts"] = total;
    stats["acceptance_rate"] = rate;
    stats["g_of_z"] = solved.g_of_z;
    // exp(g(Z)) * acceptance rate estimates the family size; cross-check
    // against the count subcommand.
    stats["estimated_log_count"] = solved.g_of_z + std::log(rate);
    stats["estimated_count"] = std::exp(solved.g_of_z + std::log(rate));
    stats["attempts_min"] = sorted.front();
    stats["attempts_median"] = sorted[sorted.size() / 2];
    stats["attempts_max"] = sorted.back();

    auto out = std::ofstream(out_path(cfg, "samples.jsonl"), std::ios::binary);
    if (!out) throw tt::InvalidArgument("cannot write samples.jsonl");
    json head;
    head["meta"] = meta_json(cfg);
    out << head.dump() << '\n';
    for (int k = 0; k < n_samples; ++k) {
      json line;
      line["index"] = k;
      line["attempts"] = attempts[k];
      line["table"] = int_table_json(tables[k]);
      out << line.dump() << '\n';
    }
  } else {
    const tt::DPTable dp(m, resolve_budget(cfg));
    parallel_for(n_samples, cfg.jobs, [&](int k) {
      tt::RandomStream s = root.child(static_cast<std::uint64_t>(k));
      tables[k] = dp.sample(s);
    });
    stats["count"] = dp.total_count().str();
    stats["log_count"] = tt::log_big(dp.total_count());
    stats["dp_states"] = dp.memo_size();
    stats["budget"] = resolve_budget(cfg);

    auto out = std::ofstream(out_path(cfg, "samples.jsonl"), std::ios::binary);
    if (!out) throw tt::InvalidArgument("cannot write samples.jsonl");
    json head;
    head["meta"] = meta_json(cfg);
    out << head.dump() << '\n';
    for (int k = 0; k < n_samples; ++k) {
      json line;
      line["index"] = k;
      line["table"] = int_table_json(tables[k]);
      out << line.dump() << '\n';
    }
  }

  write_json_file(cfg, "stats.json", stats);
  return 0;
}

int cmd_concentrate(const ExperimentConfig& cfg) {
  const tt::Margins m = load_margins(cfg);
  if (cfg.samples < 1) throw tt::InvalidArgument("--samples must be >= 1");
  const tt::TypicalTable solved = tt::solve_typical(m, cfg.tol, cfg.max_sweeps);
  const tt::RandomStream root(cfg.seed);
  const tt::EntrySet s =
      parse_entry_set(cfg.set_spec, m.rows(), m.cols(), root);

  const double sigma_z = tt::sigma_S(solved.z, s);
  const double nu_z = tt::nu_S(solved.z, s);
  const double delta = tt::smoothness_delta(m);
  const double mn = static_cast<double>(m.rows()) * m.cols();

  // Smallest admissible alpha: the set's entries must satisfy
  // z_ij <= alpha * N / (mn) and the bounds need alpha >= 1.
  double z_max = 0.0;
  for (const auto& [i, j] : s.cells()) z_max = std::max(z_max, solved.z(i, j));
  const double alpha =
      std::max(1.0, z_max * mn / static_cast<double>(m.total));

  // Deviation sweep, plus the smoothness-scaled reference value
  // delta * ln(n) / m^(1/3) whenever it is admissible.
  const double eps_ref =
      delta * std::log(static_cast<double>(m.cols())) /
      std::cbrt(static_cast<double>(m.rows()));
  std::vector<double> sweep = cfg.eps_list.empty()
                                  ? std::vector<double>{0.01, 0.02, 0.05, 0.1, 0.2}
                                  : parse_real_list(cfg.eps_list);
  if (eps_ref > 0.0 && eps_ref < 1.0) sweep.push_back(eps_ref);
  std::sort(sweep.begin(), sweep.end());
  sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
  for (double e : sweep)
    if (!(e > 0.0 && e < 1.0))
      throw tt::InvalidArgument("swept eps values must lie in (0, 1)");

  const tt::DPTable dp(m, resolve_budget(cfg));
  const int n_draws = cfg.samples;
  std::vector<double> ratio(n_draws);
  parallel_for(n_draws, cfg.jobs, [&](int k) {
    tt::RandomStream stream = root.child(static_cast<std::uint64_t>(k));
    const tt::IntMat d = dp.sample(stream);
    ratio[k] = static_cast<double>(tt::sigma_S(d, s)) / sigma_z;
  });

  CsvFile csv(cfg, "concentrate.csv", "record,key,value");
  csv.row({"sigma_z", "", fmt_double(sigma_z)});
  csv.row({"nu_z", "", fmt_double(nu_z)});
  csv.row({"delta", "", fmt_double(delta)});
  csv.row({"alpha", "", fmt_double(alpha)});
  csv.row({"set_size", "", std::to_string(s.size())});
  csv.row({"samples", "", std::to_string(n_draws)});
  csv.row({"eps_ref", "", fmt_double(eps_ref)});

  for (int k = 0; k < n_draws; ++k)
    csv.row({"ratio", std::to_string(k), fmt_double(ratio[k])});

  std::vector<double> sorted = ratio;
  std::sort(sorted.begin(), sorted.end());
  double mean = 0.0;
  for (double r : sorted) mean += r;
  mean /= n_draws;
  double var = 0.0;
  for (double r : sorted) var += (r - mean) * (r - mean);
  var /= n_draws;
  csv.row({"mean_ratio", "", fmt_double(mean)});
  csv.row({"sd_ratio", "", fmt_double(std::sqrt(var))});
  for (double q : {0.0, 0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99, 1.0}) {
    const auto idx = static_cast<std::size_t>(std::llround(q * (n_draws - 1)));
    csv.row({"quantile", fmt_double(q), fmt_double(sorted[idx])});
  }

  for (double eps : sweep) {
    int inside = 0, below = 0, above = 0;
    for (double r : ratio) {
      if (std::abs(r - 1.0) <= eps) ++inside;
      if (r <= 1.0 - eps) ++below;
      if (r >= 1.0 + eps) ++above;
    }
    const double n_d = n_draws;
    const double lower = tt::concentration_bound(
        delta, alpha, static_cast<std::int64_t>(s.size()), eps,
        tt::TailSide::lower);
    const double upper = tt::concentration_bound(
        delta, alpha, static_cast<std::int64_t>(s.size()), eps,
        tt::TailSide::upper);
    const std::string key = fmt_double(eps);
    csv.row({"inside_fraction", key, fmt_double(inside / n_d)});
    csv.row({"lower_tail_freq", key, fmt_double(below / n_d)});
    csv.row({"upper_tail_freq", key, fmt_double(above / n_d)});
    csv.row({"lower_bound", key, fmt_double(lower)});
    csv.row({"upper_bound", key, fmt_double(upper)});
    csv.row({"lower_ok", key, below / n_d <= lower ? "1" : "0"});
    csv.row({"upper_ok", key, above / n_d <= upper ? "1" : "0"});
  }
  return 0;
}

int cmd_scale(const ExperimentConfig& cfg) {
  const tt::Margins src = load_margins(cfg);
  if (cfg.t < 0) throw tt::InvalidArgument("--t must be >= 0 (0 = auto)");
  const bool automatic = cfg.t == 0;
  const std::int64_t t =
      automatic ? std::max<std::int64_t>(1, tt::suggested_scale(src)) : cfg.t;
  const tt::ScalingContext ctx = tt::ScalingContext::create(src, t);
  const tt::RandomStream root(cfg.seed);

  // (numbered invariants of the map, checked exactly)
  const tt::RationalMat b = ctx.offset();
  bool offset_ok = true;
  for (std::int64_t v : b.num.raw())
    offset_ok = offset_ok && v >= 2 * t && v < 3 * t;

  bool window_ok = true;
  for (int i = 0; i < src.rows(); ++i) {
    const std::int64_t r = src.row_sums[i], rp = ctx.scaled.row_sums[i];
    const std::int64_t n = src.cols();
    window_ok = window_ok && t * (rp - 2 * n) >= r && t * (rp - 3 * n) <= r;
  }
  for (int j = 0; j < src.cols(); ++j) {
    const std::int64_t c = src.col_sums[j], cp = ctx.scaled.col_sums[j];
    const std::int64_t rows = src.rows();
    window_ok = window_ok && t * (cp - 2 * rows) >= c && t * (cp - 3 * rows) <= c;
  }

  // Source tables: the whole family, or a uniform sample of it.
  std::vector<tt::IntMat> sources;
  bool complete = false;
  if (cfg.source == "enumerate") {
    sources = tt::enumerate_tables(src, resolve_budget(cfg));
    complete = true;
  } else if (cfg.source == "dp") {
    const tt::DPTable dp(src, resolve_budget(cfg));
    sources.resize(cfg.samples);
    parallel_for(cfg.samples, cfg.jobs, [&](int k) {
      tt::RandomStream s = root.child(static_cast<std::uint64_t>(k));
      sources[k] = dp.sample(s);
    });
  } else {
    throw tt::InvalidArgument("--source must be enumerate or dp");
  }

  std::vector<tt::IntMat> images;
  images.reserve(sources.size());
  bool margins_ok = true;
  for (const tt::IntMat& d : sources) {
    images.push_back(tt::t_scale(ctx, d));
    margins_ok = margins_ok && tt::has_margins(images.back(), ctx.scaled);
  }

  // Block-sum contraction on random sets: t*sigma_S(T(D)) sits in
  // [sigma_S(D), sigma_S(D) + 5|S|t] for every source.
  bool sigma_ok = true;
  for (int si = 0; si < cfg.sets; ++si) {
    tt::RandomStream lane = root.child(kScaleSetLane + si);
    const tt::EntrySet s =
        tt::EntrySet::random_fraction(src.rows(), src.cols(), 0.5, lane);
    const auto size5t =
        5 * static_cast<std::int64_t>(s.size()) * t;
    for (std::size_t d = 0; d < sources.size(); ++d) {
      const std::int64_t before = tt::sigma_S(sources[d], s);
      const std::int64_t after = tt::sigma_S(images[d], s);
      sigma_ok = sigma_ok && t * after >= before && t * after <= before + size5t;
    }
  }

  json report;
  report["meta"] = meta_json(cfg);
  report["t"] = t;
  report["t_auto"] = automatic;
  report["context"] = json::parse(tt::scaling_context_to_json(ctx));
  report["offset_in_range"] = offset_ok;
  report["margins_window_ok"] = window_ok;
  report["source_method"] = cfg.source;
  report["source_tables"] = sources.size();
  report["source_complete"] = complete;
  report["all_images_have_scaled_margins"] = margins_ok;
  json sig;
  sig["sets"] = cfg.sets;
  sig["holds"] = sigma_ok;
  report["sigma_check"] = sig;

  // Fiber sizes are only certifiable against the full family.
  if (complete) {
    std::map<std::vector<std::int64_t>, std::int64_t> fiber;
    for (const tt::IntMat& img : images) ++fiber[img.raw()];
    std::int64_t max_fiber = 0;
    for (const auto& [raw, c] : fiber) max_fiber = std::max(max_fiber, c);
    const int rank = (src.rows() - 1) * (src.cols() - 1);
    tt::BigInt bound = 1;
    for (int e = 0; e < rank; ++e) bound *= t;
    json pre;
    pre["max"] = max_fiber;
    pre["bound"] = bound.str();
    pre["holds"] = tt::BigInt(max_fiber) <= bound;
    pre["distinct_images"] = fiber.size();
    report["preimage"] = pre;
  }

  // How close the scaled family's typical table is to (1/t) times the
  // source's, reported for orientation only (no exact identity holds).
  const tt::TypicalTable z_src = tt::solve_typical(src, cfg.tol, cfg.max_sweeps);
  const tt::TypicalTable z_scaled =
      tt::solve_typical(ctx.scaled, cfg.tol, cfg.max_sweeps);
  double ratio_dev = 0.0;
  for (int i = 0; i < src.rows(); ++i)
    for (int j = 0; j < src.cols(); ++j)
      ratio_dev = std::max(
          ratio_dev, std::abs(z_src.z(i, j) /
                                  (static_cast<double>(t) * z_scaled.z(i, j)) -
                              1.0));
  report["typical_ratio_max_abs"] = ratio_dev;

  write_json_file(cfg, "scale_report.json", report);
  return 0;
}

}  // namespace ttcli
