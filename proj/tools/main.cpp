#include <cstdio>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_common(CLI::App* cmd, ttcli::ExperimentConfig& cfg) {
  cmd->add_option("--margins", cfg.margins_file,
                  "margins as a JSON file {\"rows\":[...],\"cols\":[...]}");
  cmd->add_option("--rows", cfg.rows_inline, "inline row sums, e.g. 3,1");
  cmd->add_option("--cols", cfg.cols_inline, "inline column sums, e.g. 2,1,1");
  cmd->add_option("--seed", cfg.seed, "root seed, recorded in every output");
  cmd->add_option("--out", cfg.out_dir, "output directory (default .)");
}

void add_solver(CLI::App* cmd, ttcli::ExperimentConfig& cfg) {
  cmd->add_option("--tol", cfg.tol, "margin residual tolerance");
  cmd->add_option("--max-sweeps", cfg.max_sweeps, "solver sweep limit");
}

void add_budget(CLI::App* cmd, ttcli::ExperimentConfig& cfg) {
  cmd->add_option("--budget", cfg.budget_flag,
                  "DP state budget (default: TT_BUDGET env or 1e7)");
}

}  // namespace

int main(int argc, char** argv) {
  ttcli::ExperimentConfig cfg;
  CLI::App app{
      "tt: typical tables for fixed margins. Solves the entropy-optimal "
      "table, counts and samples the integer tables sharing its margins, "
      "and checks the concentration and scaling estimates."};
  app.require_subcommand(1);

  CLI::App* typical = app.add_subcommand(
      "typical", "solve for the typical table and write a bound report");
  add_common(typical, cfg);
  add_solver(typical, cfg);
  typical->add_option("--alpha", cfg.alpha,
                      "large-entry threshold factor (0 = auto)");

  CLI::App* compare = app.add_subcommand(
      "compare", "typical vs independence table, plus clone trajectories");
  add_common(compare, cfg);
  add_solver(compare, cfg);
  compare->add_option("--clone-ks", cfg.clone_ks,
                      "clone factors to sweep, e.g. 1,2,3");
  compare->add_option("--set", cfg.set_spec,
                      "base entry set for the clone block sums");

  CLI::App* count =
      app.add_subcommand("count", "exact table count and the e^g(Z) bound");
  add_common(count, cfg);
  add_solver(count, cfg);
  add_budget(count, cfg);

  CLI::App* sample =
      app.add_subcommand("sample", "uniform tables with the given margins");
  add_common(sample, cfg);
  add_solver(sample, cfg);
  add_budget(sample, cfg);
  sample->add_option("--samples", cfg.samples, "number of tables to draw");
  sample->add_option("--method", cfg.method, "rejection | dp");
  sample->add_option("--max-attempts", cfg.max_attempts,
                     "rejection attempts per sample before giving up");
  sample->add_option("--jobs", cfg.jobs, "worker threads (results identical)");

  CLI::App* concentrate = app.add_subcommand(
      "concentrate", "empirical block-sum concentration vs the bounds");
  add_common(concentrate, cfg);
  add_solver(concentrate, cfg);
  add_budget(concentrate, cfg);
  concentrate->add_option("--samples", cfg.samples, "uniform draws");
  concentrate->add_option("--set", cfg.set_spec,
                          "entry set S (all | block .. | fraction f | list ..)");
  concentrate->add_option("--eps", cfg.eps_list,
                          "deviation sweep, e.g. 0.01,0.05,0.1");
  concentrate->add_option("--jobs", cfg.jobs,
                          "worker threads (results identical)");

  CLI::App* scale = app.add_subcommand(
      "scale", "margin contraction map: apply and verify its guarantees");
  add_common(scale, cfg);
  add_solver(scale, cfg);
  add_budget(scale, cfg);
  scale->add_option("--t", cfg.t, "scale factor (0 = auto)");
  scale->add_option("--source", cfg.source,
                    "source tables: enumerate | dp (sampled)");
  scale->add_option("--samples", cfg.samples, "draws when --source dp");
  scale->add_option("--sets", cfg.sets, "random entry sets for block checks");
  scale->add_option("--jobs", cfg.jobs, "worker threads (results identical)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // 0 covers --help and friends
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (cfg.command == "typical") return ttcli::cmd_typical(cfg);
    if (cfg.command == "compare") return ttcli::cmd_compare(cfg);
    if (cfg.command == "count") return ttcli::cmd_count(cfg);
    if (cfg.command == "sample") return ttcli::cmd_sample(cfg);
    if (cfg.command == "concentrate") return ttcli::cmd_concentrate(cfg);
    if (cfg.command == "scale") return ttcli::cmd_scale(cfg);
    std::fprintf(stderr, "unknown subcommand %s\n", cfg.command.c_str());
    return 1;
  } catch (const tt::NoConvergence& e) {
    std::fprintf(stderr, "solver did not converge: %s\n", e.what());
    return 2;
  } catch (const tt::BudgetExceeded& e) {
    std::fprintf(stderr, "%s (raise --budget or TT_BUDGET)\n", e.what());
    return 3;
  } catch (const tt::CapExceeded& e) {
    std::fprintf(stderr, "%s (raise --budget or TT_BUDGET)\n", e.what());
    return 3;
  } catch (const tt::AttemptsExhausted& e) {
    std::fprintf(stderr, "%s (raise --max-attempts)\n", e.what());
    return 4;
  } catch (const tt::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
