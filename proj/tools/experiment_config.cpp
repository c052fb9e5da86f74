#include "experiment_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

namespace ttcli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tt::InvalidArgument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

tt::Margins load_margins(const ExperimentConfig& cfg) {
  const bool has_file = !cfg.margins_file.empty();
  const bool has_inline = !cfg.rows_inline.empty() || !cfg.cols_inline.empty();
  if (has_file && has_inline)
    throw tt::InvalidArgument(
        "give margins either as --margins FILE or as --rows/--cols, not both");
  if (has_file) return tt::margins_from_json(read_file(cfg.margins_file));
  if (cfg.rows_inline.empty() || cfg.cols_inline.empty())
    throw tt::InvalidArgument(
        "margins required: --margins FILE or both --rows and --cols");
  return tt::validate_margins(parse_int_list(cfg.rows_inline),
                              parse_int_list(cfg.cols_inline));
}

tt::EntrySet parse_entry_set(const std::string& spec, int m, int n,
                             const tt::RandomStream& root) {
  static const std::regex block_re(
      R"(^block\s+(\d+)\.\.(\d+)x(\d+)\.\.(\d+)$)");
  static const std::regex fraction_re(R"(^fraction\s+([0-9.eE+-]+)$)");

  if (spec == "all") return tt::EntrySet::all(m, n);

  std::smatch got;
  if (std::regex_match(spec, got, block_re)) {
    const int r1 = std::stoi(got[1]), r2 = std::stoi(got[2]);
    const int c1 = std::stoi(got[3]), c2 = std::stoi(got[4]);
    if (r1 < 1 || c1 < 1 || r1 > r2 || c1 > c2 || r2 > m || c2 > n)
      throw tt::InvalidArgument("block out of range for " + std::to_string(m) +
                                "x" + std::to_string(n) + ": " + spec);
    return tt::EntrySet::block(r1 - 1, r2, c1 - 1, c2);
  }

  if (std::regex_match(spec, got, fraction_re)) {
    const double f = std::stod(got[1]);
    tt::RandomStream lane = root.child(kFractionLane);
    return tt::EntrySet::random_fraction(m, n, f, lane);
  }

  std::string body = spec;
  if (body.rfind("list ", 0) == 0) body = body.substr(5);
  std::vector<tt::EntrySet::Index> cells;
  std::stringstream ss(body);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos)
      throw tt::InvalidArgument("bad entry-set spec: " + spec);
    try {
      const int i = std::stoi(pair.substr(0, comma));
      const int j = std::stoi(pair.substr(comma + 1));
      if (i < 1 || j < 1 || i > m || j > n)
        throw tt::InvalidArgument("cell out of range in entry-set spec: " +
                                  pair);
      cells.emplace_back(i - 1, j - 1);
    } catch (const std::logic_error&) {
      throw tt::InvalidArgument("bad entry-set spec: " + spec);
    }
  }
  if (cells.empty()) throw tt::InvalidArgument("empty entry-set spec: " + spec);
  return tt::EntrySet(std::move(cells));
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::logic_error&) {
      throw tt::InvalidArgument("bad integer list: " + text);
    }
  }
  if (out.empty()) throw tt::InvalidArgument("empty integer list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw tt::InvalidArgument("bad number list: " + text);
    }
  }
  if (out.empty()) throw tt::InvalidArgument("empty number list");
  return out;
}

std::uint64_t resolve_budget(const ExperimentConfig& cfg) {
  if (cfg.budget_flag > 0) return cfg.budget_flag;
  if (const char* env = std::getenv("TT_BUDGET")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::logic_error&) {
    }
    throw tt::InvalidArgument("TT_BUDGET must be a positive integer, got '" +
                              std::string(env) + "'");
  }
  return tt::DPTable::kDefaultBudget;
}

std::string config_hash(const ExperimentConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["margins_file"] = cfg.margins_file;
  j["rows"] = cfg.rows_inline;
  j["cols"] = cfg.cols_inline;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["max_sweeps"] = cfg.max_sweeps;
  j["samples"] = cfg.samples;
  j["method"] = cfg.method;
  j["t"] = cfg.t;
  j["set"] = cfg.set_spec;
  j["clone_ks"] = cfg.clone_ks;
  j["eps"] = cfg.eps_list;
  j["budget"] = cfg.budget_flag;
  j["max_attempts"] = cfg.max_attempts;
  j["alpha"] = cfg.alpha;
  j["source"] = cfg.source;
  j["sets"] = cfg.sets;
  const std::string text = j.dump();

  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

json meta_json(const ExperimentConfig& cfg) {
  json meta;
  meta["config_hash"] = config_hash(cfg);
  meta["seed"] = cfg.seed;
  meta["version"] = tool_version();
  return meta;
}

std::string tool_version() {
#ifdef TT_VERSION
  return TT_VERSION;
#else
  return "0.0.0";
#endif
}

}  // namespace ttcli
