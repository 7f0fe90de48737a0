#pragma once

// Experiment commands. Each writes its tables into config.output.directory,
// named after config.output.run, together with `<run>.effective.cfg`.

#include "optiverse/config.hpp"
#include "optiverse/interferometer.hpp"
#include "optiverse/medium_design.hpp"
#include "optiverse/propagation.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace optiverse {

struct CommandResult
{
  std::vector<std::filesystem::path> files;
  std::string summary; // human-readable, printed by the CLI
};

// Table builders, separated from file output so they can be checked directly.
std::string index_csv(CellDesign const &design);
std::string phase_csv(ExperimentConfig const &config);
std::string fringe_csv(FringeScan const &scan);
std::string fringe_metadata(ExperimentConfig const &config, FringeScan const &scan);
std::string ray_csv(Ray const &ray);

CellDesign design_from_config(ExperimentConfig const &config);
// Cell phase used by piezo sweeps that do not pin delta_phi.
double cell_delta_phi(ExperimentConfig const &config);
FringeScan fringe_from_config(ExperimentConfig const &config);

CommandResult cmd_index(ExperimentConfig const &config);
CommandResult cmd_design(ExperimentConfig const &config);
CommandResult cmd_phase(ExperimentConfig const &config);
CommandResult cmd_fringe(ExperimentConfig const &config);
CommandResult cmd_trace(ExperimentConfig const &config);
CommandResult cmd_redshift(ExperimentConfig const &config);

} // namespace optiverse
