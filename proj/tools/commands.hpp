#pragma once

#include "experiment_config.hpp"

namespace ttcli {

// Each command returns the process exit code. Library errors escape to the
// dispatcher in main.cpp, which maps them to exit codes; cmd_typical is the
// one exception, catching solver failure itself so it can dump the best
// iterate before exiting with code 2.
int cmd_typical(const ExperimentConfig& cfg);
int cmd_compare(const ExperimentConfig& cfg);
int cmd_count(const ExperimentConfig& cfg);
int cmd_sample(const ExperimentConfig& cfg);
int cmd_concentrate(const ExperimentConfig& cfg);
int cmd_scale(const ExperimentConfig& cfg);

}  // namespace ttcli
