#pragma once

#include "znls/config.hpp"
#include "znls/report.hpp"

namespace znls {

struct ExperimentResult {
  CsvTable table{{}};
  int exit_code = 0;  // 0 ok, 3 = blow-up signal
  std::string note;
};

// Dispatches a validated config to its experiment.  (config, seed) -> table is
// a pure function; rows are emitted in ascending order of the parameter axes.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace znls
