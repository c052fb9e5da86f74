#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tt/tt.hpp"

namespace ttcli {

using json = nlohmann::json;

// Reserved child-stream lanes, kept away from per-sample indices (which
// start at 0) so no two consumers of the root stream ever collide:
//   sample k            -> root.child(k)
//   "fraction f" sets   -> root.child(kFractionLane)
//   scale sigma-set i   -> root.child(kScaleSetLane + i)
inline constexpr std::uint64_t kFractionLane = 1ull << 63;
inline constexpr std::uint64_t kScaleSetLane = 1ull << 62;

// Everything a subcommand run depends on. `out_dir` and `jobs` never affect
// results, so they stay out of the config hash.
struct ExperimentConfig {
  std::string command;

  // Margins source: either a file path or inline row/col lists.
  std::string margins_file;
  std::string rows_inline;
  std::string cols_inline;

  std::uint64_t seed = 0;
  double tol = 1e-10;
  int max_sweeps = 100000;
  int samples = 1000;
  std::string method = "rejection";
  std::int64_t t = 0;  // scale factor; 0 = auto
  std::string set_spec = "all";
  std::string clone_ks = "1";
  std::string eps_list;  // empty = default sweep
  std::uint64_t budget_flag = 0;  // 0 = env/default
  std::uint64_t max_attempts = 100'000'000;
  double alpha = 0.0;  // 0 = auto
  std::string source = "enumerate";
  int sets = 20;

  int jobs = 1;
  std::string out_dir = ".";
};

// The margins named by the config (file beats inline; exactly one source
// must be present).
tt::Margins load_margins(const ExperimentConfig& cfg);

// Parses an entry-set specification against an m x n grid:
//   all
//   block R1..R2xC1..C2     (1-based, inclusive)
//   fraction F              (ceil(F*m*n) random cells from the seed's
//                            reserved fraction lane)
//   list i1,j1;i2,j2;...    (1-based)
tt::EntrySet parse_entry_set(const std::string& spec, int m, int n,
                             const tt::RandomStream& root);

// Comma-separated integer and real lists ("1,2,3").
std::vector<std::int64_t> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

// DP budget: explicit flag beats the TT_BUDGET environment variable beats
// the library default.
std::uint64_t resolve_budget(const ExperimentConfig& cfg);

// FNV-1a over the canonical dump of every semantic config field.
std::string config_hash(const ExperimentConfig& cfg);

// {config_hash, seed, version}: embedded in every output artifact.
json meta_json(const ExperimentConfig& cfg);

std::string tool_version();

}  // namespace ttcli
