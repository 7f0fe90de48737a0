#pragma once

// Mach-Zehnder interferometer with the designed cell in one arm and a
// piezo-driven phase offset in the reference arm.
//
// Conventions:
//  * beam splitters are lossless 50/50 with transmitted amplitude 1/sqrt(2)
//    and reflected amplitude i/sqrt(2);
//  * path 0 carries the cell, path 1 the piezo; the signal depends on
//    delta_phi - piezo;
//  * port "+" is the output that receives the photon when the arms are
//    balanced.

#include "optiverse/types.hpp"

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace optiverse {

enum class Scheme { I, II, joint };
enum class MediumState { cat, definite_n1, definite_n2 };
enum class Sampling { deterministic_mean, poisson };
enum class SweepKind { piezo, hubble };

std::string_view to_string(Scheme scheme);
std::string_view to_string(MediumState medium);
std::string_view to_string(Sampling sampling);
std::string_view to_string(SweepKind kind);
Scheme parse_scheme(std::string_view name);
MediumState parse_medium_state(std::string_view name);
Sampling parse_sampling(std::string_view name);
SweepKind parse_sweep_kind(std::string_view name);

struct PortProbabilities
{
  double plus;
  double minus;
};

// Path-superposition scheme: P = (1 +- cos(delta_phi - piezo)) / 2.
template <typename Scalar> PortProbabilities scheme2_probabilities(Scalar delta_phi, Scalar piezo)
{
  using std::cos;
  Scalar const c = cos(delta_phi - piezo);
  return {double(Scalar(0.5) * (Scalar(1) + c)), double(Scalar(0.5) * (Scalar(1) - c))};
}

// Cat-state medium scheme, implemented as printed:
// P = (2 +- sqrt(2 + 2 cos(delta_phi - piezo))) / 4.
template <typename Scalar> PortProbabilities scheme1_probabilities(Scalar delta_phi, Scalar piezo)
{
  using std::cos;
  using std::sqrt;
  using std::max;
  Scalar const root = sqrt(max(Scalar(0), Scalar(2) + Scalar(2) * cos(delta_phi - piezo)));
  return {double((Scalar(2) + root) / Scalar(4)), double((Scalar(2) - root) / Scalar(4))};
}

// Joint photon-path x medium-branch amplitudes. Branch n1 adds no phase on
// the cell arm, branch n2 adds delta_phi; the branches overlap by eta.
// Probabilities are renormalized over the two ports.
PortProbabilities joint_state_probabilities(double delta_phi, double piezo, double eta, MediumState medium);

// Amplitudes (rows: output port -, +; columns: medium branch n1, n2) before
// the overlap-weighted detection sum.
Eigen::Matrix2cd joint_output_amplitudes(double delta_phi, double piezo, double eta, MediumState medium);

struct MZIConfig
{
  Scheme scheme = Scheme::II;
  double piezo = 0.0;      // rad
  std::uint64_t n0 = 1'000'000;
  double eta = 0.0;        // joint model only
  MediumState medium = MediumState::cat;
  Sampling sampling = Sampling::deterministic_mean;
  std::uint64_t seed = 0;

  void validate() const;
};

PortProbabilities port_probabilities(MZIConfig const &config, double delta_phi, double piezo);

struct DetectionStats
{
  double delta_phi;
  double p_plus;
  double p_minus;
  double mean_plus;  // n0 * p_plus, unrounded
  double mean_minus;
  std::int64_t counts_plus;
  std::int64_t counts_minus;
};

struct Sweep
{
  SweepKind kind = SweepKind::piezo;
  double from = 0.0;
  double to = 2.0 * pi;
  int steps = 101;
  double delta_phi = 0.0; // fixed cell phase for piezo sweeps
};

// Links a hubble sweep (swept value H L) to the cell phase.
struct MediumLink
{
  double L = 0.01;
  double lambda0 = 780e-9;
};

struct FringeRow
{
  double sweep_value;
  DetectionStats stats;
};

struct FringeScan
{
  SweepKind kind;
  std::vector<FringeRow> rows;

  // (max - min) / (max + min) of p_plus over the scan.
  double visibility() const;
};

// Sequential sweep; Poisson counts come from one generator seeded with
// config.seed, so a scan is reproducible bit for bit.
FringeScan fringe_scan(MZIConfig const &config, Sweep const &sweep, MediumLink const &link = {});

} // namespace optiverse
