#pragma once

// Experiment configuration: INI-style sections of `key = value` lines.
//
//   [spacetime]  kind (required), H | HL, M, scale_factor, a0, t0, exponent
//   [cell]       L, grid_size, theta, C, profile_form
//   [probe]      lambda0, n0
//   [run]        scheme, sweep, sweep_from, sweep_to, sweep_steps, delta_phi,
//                piezo, eta, medium, sampling, seed
//   [trace]      b, arc_budget, capture_search, capture_lo, capture_hi
//   [redshift]   t_emit, t_obs
//   [output]     directory, run, emit_plots
//
// `#` and `;` start comments. Angles accept a trailing `pi` factor
// (`2pi`, `0.5pi`). Unknown sections or keys, duplicates and values that
// violate an invariant are rejected.

#include "optiverse/interferometer.hpp"
#include "optiverse/medium_design.hpp"
#include "optiverse/spacetime.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace optiverse {

struct ExperimentConfig
{
  SpacetimeSpec spacetime;
  std::optional<double> HL; // set when the Hubble parameter was given as H L

  struct Cell
  {
    double L = 0.01;
    Eigen::Index grid_size = default_grid_size;
    double theta = 0.0;
    double C = 1.0;
    ProfileForm profile_form = ProfileForm::quadratic;
  } cell;

  struct Probe
  {
    double lambda0 = 780e-9;
    std::uint64_t n0 = 1'000'000;
  } probe;

  struct Run
  {
    Scheme scheme = Scheme::II;
    std::optional<SweepKind> sweep;
    std::optional<double> sweep_from;
    std::optional<double> sweep_to;
    int sweep_steps = 101;
    std::optional<double> delta_phi;
    double piezo = 0.0;
    double eta = 0.0;
    MediumState medium = MediumState::cat;
    Sampling sampling = Sampling::deterministic_mean;
    std::uint64_t seed = 0;
  } run;

  struct Trace
  {
    double b = 100.0;
    std::optional<double> arc_budget; // default: the far-field ray length
    bool capture_search = false;
    std::optional<double> capture_lo;
    std::optional<double> capture_hi;
  } trace;

  struct Redshift
  {
    double t_emit = 0.0;
    double t_obs = 0.0;
  } redshift;

  struct Output
  {
    std::string directory = ".";
    std::string run = "run";
    bool emit_plots = false;
  } output;

  MZIConfig mzi() const;
  // Sweep with defaults resolved; `cell_delta_phi` feeds piezo sweeps that
  // do not pin delta_phi.
  Sweep sweep(double cell_delta_phi) const;

  // Re-checks every invariant; throws ConfigError naming the violated one.
  void validate() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(std::filesystem::path const &path);

// Canonical dump of the effective configuration, every default spelled out;
// parse_config(effective_config(c)) reproduces c exactly.
std::string effective_config(ExperimentConfig const &config);

} // namespace optiverse
