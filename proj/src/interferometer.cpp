#include "optiverse/interferometer.hpp"

#include "optiverse/errors.hpp"
#include "optiverse/propagation.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <random>
#include <string>

namespace optiverse {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view name, std::array<std::pair<E, std::string_view>, N> const &table,
             char const *invariant)
{
  for (auto const &[e, n] : table)
    if (n == name)
      return e;
  std::string expected;
  for (auto const &[e, n] : table)
    expected += (expected.empty() ? "" : ", ") + std::string(n);
  throw DomainError(invariant, "unknown value '" + std::string(name) + "' (expected " + expected + ")");
}

template <typename E, std::size_t N>
std::string_view enum_name(E value, std::array<std::pair<E, std::string_view>, N> const &table)
{
  for (auto const &[e, n] : table)
    if (e == value)
      return n;
  return "?";
}

constexpr std::array<std::pair<Scheme, std::string_view>, 3> scheme_names{
  {{Scheme::I, "I"}, {Scheme::II, "II"}, {Scheme::joint, "joint"}}};
constexpr std::array<std::pair<MediumState, std::string_view>, 3> medium_names{
  {{MediumState::cat, "cat"}, {MediumState::definite_n1, "definite_n1"}, {MediumState::definite_n2, "definite_n2"}}};
constexpr std::array<std::pair<Sampling, std::string_view>, 2> sampling_names{
  {{Sampling::deterministic_mean, "deterministic"}, {Sampling::poisson, "poisson"}}};
constexpr std::array<std::pair<SweepKind, std::string_view>, 2> sweep_names{
  {{SweepKind::piezo, "piezo"}, {SweepKind::hubble, "hubble"}}};

// Symmetric lossless 50/50 splitter acting on the path index.
Eigen::Matrix2cd beam_splitter()
{
  Complex const t(1.0 / std::sqrt(2.0), 0.0);
  Complex const r(0.0, 1.0 / std::sqrt(2.0));
  Eigen::Matrix2cd b;
  b << t, r, r, t;
  return b;
}

} // namespace

std::string_view to_string(Scheme scheme) { return enum_name(scheme, scheme_names); }
std::string_view to_string(MediumState medium) { return enum_name(medium, medium_names); }
std::string_view to_string(Sampling sampling) { return enum_name(sampling, sampling_names); }
std::string_view to_string(SweepKind kind) { return enum_name(kind, sweep_names); }
Scheme parse_scheme(std::string_view name) { return parse_enum(name, scheme_names, "run.scheme"); }
MediumState parse_medium_state(std::string_view name) { return parse_enum(name, medium_names, "run.medium"); }
Sampling parse_sampling(std::string_view name) { return parse_enum(name, sampling_names, "run.sampling"); }
SweepKind parse_sweep_kind(std::string_view name) { return parse_enum(name, sweep_names, "run.sweep"); }

Eigen::Matrix2cd joint_output_amplitudes(double delta_phi, double piezo, double eta, MediumState medium)
{
  if (!(eta >= 0.0 && eta <= 1.0))
    throw DomainError("0<=eta<=1", "branch overlap must lie in [0, 1]");

  // Medium branch coefficients in the (n1, n2) basis.
  Eigen::RowVector2cd branch;
  switch (medium) {
  case MediumState::cat:
    branch.setConstant(1.0 / std::sqrt(2.0 + 2.0 * eta));
    break;
  case MediumState::definite_n1:
    branch << 1.0, 0.0;
    break;
  case MediumState::definite_n2:
    branch << 0.0, 1.0;
    break;
  }

  // amplitudes(path, branch); the photon enters on path 0.
  Eigen::Matrix2cd amplitudes = Eigen::Vector2cd(1.0, 0.0) * branch;
  Eigen::Matrix2cd const bs = beam_splitter();
  amplitudes = bs * amplitudes;
  amplitudes.row(0).array() *= Eigen::Array2cd(1.0, std::polar(1.0, delta_phi)).transpose();
  amplitudes.row(1) *= std::polar(1.0, piezo);
  return bs * amplitudes;
}

PortProbabilities joint_state_probabilities(double delta_phi, double piezo, double eta, MediumState medium)
{
  Eigen::Matrix2cd const out = joint_output_amplitudes(delta_phi, piezo, eta, medium);
  Eigen::Matrix2d gram;
  gram << 1.0, eta, eta, 1.0;
  auto weight = [&](Eigen::Index port) {
    Eigen::RowVector2cd const a = out.row(port);
    return (a.conjugate() * gram.cast<Complex>() * a.transpose()).value().real();
  };
  double const minus = weight(0);
  double const plus = weight(1);
  double const total = plus + minus;
  return {plus / total, minus / total};
}

void MZIConfig::validate() const
{
  if (!(eta >= 0.0 && eta <= 1.0))
    throw DomainError("0<=eta<=1", "branch overlap must lie in [0, 1]");
  if (!std::isfinite(piezo))
    throw DomainError("piezo", "piezo phase must be finite");
}

PortProbabilities port_probabilities(MZIConfig const &config, double delta_phi, double piezo)
{
  switch (config.scheme) {
  case Scheme::I:
    return scheme1_probabilities(delta_phi, piezo);
  case Scheme::II:
    return scheme2_probabilities(delta_phi, piezo);
  case Scheme::joint:
    return joint_state_probabilities(delta_phi, piezo, config.eta, config.medium);
  }
  return {0.0, 0.0};
}

double FringeScan::visibility() const
{
  if (rows.empty())
    return 0.0;
  auto const [lo, hi] = std::minmax_element(rows.begin(), rows.end(), [](FringeRow const &a, FringeRow const &b) {
    return a.stats.p_plus < b.stats.p_plus;
  });
  double const sum = hi->stats.p_plus + lo->stats.p_plus;
  return sum > 0.0 ? (hi->stats.p_plus - lo->stats.p_plus) / sum : 0.0;
}

FringeScan fringe_scan(MZIConfig const &config, Sweep const &sweep, MediumLink const &link)
{
  config.validate();
  if (sweep.steps < 2)
    throw DomainError("steps>=2", "a sweep needs at least two steps");
  if (!(sweep.to > sweep.from) || !std::isfinite(sweep.from) || !std::isfinite(sweep.to))
    throw DomainError("sweep.range", "sweep range must be finite and increasing");
  if (sweep.kind == SweepKind::hubble) {
    if (!(sweep.from >= 0.0) || !(sweep.to < 2.0))
      throw DomainError("HL<2", "hubble sweep must stay within 0 <= H L < 2");
    if (!(link.L > 0.0) || !(link.lambda0 > 0.0))
      throw DomainError("medium-link", "hubble sweep needs positive L and lambda0");
  }

  std::mt19937_64 rng(config.seed);
  auto sample = [&](double mean) -> std::int64_t {
    if (config.sampling == Sampling::deterministic_mean)
      return std::llround(mean);
    if (mean <= 0.0)
      return 0;
    return std::poisson_distribution<std::int64_t>(mean)(rng);
  };

  FringeScan scan{sweep.kind, {}};
  scan.rows.reserve(static_cast<std::size_t>(sweep.steps));
  double const n0 = static_cast<double>(config.n0);
  for (int i = 0; i < sweep.steps; ++i) {
    double const value = i == sweep.steps - 1
                           ? sweep.to
                           : sweep.from + (sweep.to - sweep.from) * static_cast<double>(i) / (sweep.steps - 1);
    double delta_phi = sweep.delta_phi;
    double piezo = config.piezo;
    if (sweep.kind == SweepKind::piezo)
      piezo = value;
    else
      delta_phi = phase_difference_closed(value / link.L, link.L, link.lambda0);

    PortProbabilities const p = port_probabilities(config, delta_phi, piezo);
    DetectionStats s{delta_phi, p.plus, p.minus, n0 * p.plus, n0 * p.minus, 0, 0};
    s.counts_plus = sample(s.mean_plus);
    s.counts_minus = sample(s.mean_minus);
    scan.rows.push_back({value, s});
  }
  return scan;
}

} // namespace optiverse
