#include "outputs.hpp"

#include <filesystem>

namespace ttcli {

std::string fmt_double(double x) { return json(x).dump(); }

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

namespace {

std::ofstream open_out(const ExperimentConfig& cfg, const std::string& name) {
  const std::string path = out_path(cfg, name);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tt::InvalidArgument("cannot write " + path);
  return out;
}

}  // namespace

void write_json_file(const ExperimentConfig& cfg, const std::string& name,
                     const json& j) {
  auto out = open_out(cfg, name);
  out << j.dump(2) << '\n';
}

CsvFile::CsvFile(const ExperimentConfig& cfg, const std::string& name,
                 const std::string& header)
    : out_(open_out(cfg, name)) {
  out_ << "# config_hash=" << config_hash(cfg) << " seed=" << cfg.seed
       << " version=" << tool_version() << '\n'
       << header << '\n';
}

void CsvFile::row(std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out_ << ',';
    out_ << c;
    first = false;
  }
  out_ << '\n';
}

}  // namespace ttcli
