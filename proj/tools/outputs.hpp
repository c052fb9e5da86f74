#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "experiment_config.hpp"

namespace ttcli {

// Shortest decimal representation that reparses to the same double, the
// same formatting nlohmann uses, so JSON and CSV agree byte for byte.
std::string fmt_double(double x);

std::string out_path(const ExperimentConfig& cfg, const std::string& name);

// Serializes with 2-space indentation and a trailing newline; creates the
// output directory if needed.
void write_json_file(const ExperimentConfig& cfg, const std::string& name,
                     const json& j);

// Long-format CSV with the standard meta comment on line one.
class CsvFile {
 public:
  CsvFile(const ExperimentConfig& cfg, const std::string& name,
          const std::string& header);

  // Numeric cells are preformatted by the caller via fmt_double.
  void row(std::initializer_list<std::string> cells);

 private:
  std::ofstream out_;
};

}  // namespace ttcli
