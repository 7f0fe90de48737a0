// optiverse: configuration-driven runs of the cell design, phase, fringe,
// ray and redshift computations.
//
// Exit codes: 0 success, 2 configuration error, 3 domain/physics error.

#include "optiverse/commands.hpp"
#include "optiverse/errors.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

using optiverse::CommandResult;
using optiverse::ExperimentConfig;

struct GlobalFlags
{
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  bool plots = false;
};

struct RayFlags
{
  std::optional<double> b;
  std::optional<double> arc;
  bool capture_search = false;
};

struct RedshiftFlags
{
  std::optional<double> t_emit;
  std::optional<double> t_obs;
};

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Analog-spacetime cell design and interferometer simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--config", g.config, "Experiment configuration file")->required();
  app.add_option("--out", g.out, "Output directory (overrides [output] directory)");
  app.add_option("--seed", g.seed, "Seed for Poisson sampling (overrides [run] seed)");
  app.add_flag("--plots", g.plots, "Also write SVG plots");

  RayFlags ray;
  RedshiftFlags red;

  using Command = std::function<CommandResult(ExperimentConfig const &)>;
  std::map<CLI::App *, Command> commands;
  commands[app.add_subcommand("index", "Axial index profile with intensity/attenuator columns")] = optiverse::cmd_index;
  commands[app.add_subcommand("design", "Cell design summary and control-beam curves")] = optiverse::cmd_design;
  commands[app.add_subcommand("phase", "Cell phase by closed form and quadrature")] = optiverse::cmd_phase;
  commands[app.add_subcommand("fringe", "Interferometer fringe scan")] = optiverse::cmd_fringe;
  auto *trace = app.add_subcommand("trace", "Ray trace and deflection in the radial medium");
  trace->add_option("--b", ray.b, "Impact parameter in m (overrides [trace] b)");
  trace->add_option("--arc", ray.arc, "Arc-length budget in m (overrides [trace] arc_budget)");
  trace->add_flag("--capture-search", ray.capture_search, "Bisect for the capture threshold");
  commands[trace] = optiverse::cmd_trace;
  auto *redshift = app.add_subcommand("redshift", "Redshift factor of the expanding medium");
  redshift->add_option("--t-emit", red.t_emit, "Emission time in s");
  redshift->add_option("--t-obs", red.t_obs, "Observation time in s");
  commands[redshift] = optiverse::cmd_redshift;

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig config = optiverse::load_config(g.config);
    if (g.out)
      config.output.directory = *g.out;
    if (g.seed)
      config.run.seed = *g.seed;
    if (g.plots)
      config.output.emit_plots = true;
    if (ray.b)
      config.trace.b = *ray.b;
    if (ray.arc)
      config.trace.arc_budget = *ray.arc;
    if (ray.capture_search)
      config.trace.capture_search = true;
    if (red.t_emit)
      config.redshift.t_emit = *red.t_emit;
    if (red.t_obs)
      config.redshift.t_obs = *red.t_obs;
    config.validate();

    for (auto const &[sub, run] : commands) {
      if (!sub->parsed())
        continue;
      CommandResult const res = run(config);
      std::cout << res.summary << '\n';
      for (auto const &f : res.files)
        std::cout << "wrote " << f.string() << '\n';
    }
  } catch (optiverse::ConfigError const &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (optiverse::DomainError const &e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
