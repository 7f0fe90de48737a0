#include "optiverse/config.hpp"
#include "optiverse/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

using namespace optiverse;

namespace {

ConfigError config_error(std::string const &text)
{
  try {
    parse_config(text);
  } catch (ConfigError const &e) {
    return e;
  }
  ADD_FAILURE() << "config was accepted:\n" << text;
  return ConfigError("none", "none");
}

constexpr char const *minimal = R"(
[spacetime]
kind = dS
HL = 0.1

[cell]
L = 0.01

[probe]
lambda0 = 780e-9
)";

} // namespace

TEST(Config, MinimalFillsDefaults)
{
  ExperimentConfig const c = parse_config(minimal);
  EXPECT_EQ(c.spacetime.kind, SpacetimeKind::dS);
  EXPECT_NEAR(c.spacetime.H, 10.0, 1e-12);
  EXPECT_EQ(c.cell.grid_size, 1001);
  EXPECT_EQ(c.cell.theta, 0.0);
  EXPECT_EQ(c.cell.C, 1.0);
  EXPECT_EQ(c.cell.profile_form, ProfileForm::quadratic);
  EXPECT_EQ(c.probe.lambda0, 780e-9);
  EXPECT_EQ(c.run.scheme, Scheme::II);
  EXPECT_EQ(c.run.sampling, Sampling::deterministic_mean);
  EXPECT_FALSE(c.run.sweep.has_value());
}

TEST(Config, HubbleBoundIsEnforced)
{
  ConfigError const e = config_error("[spacetime]\nkind = dS\nHL = 3\n[cell]\nL = 0.01\n");
  EXPECT_EQ(e.invariant(), "HL<2");
  EXPECT_EQ(config_error("[spacetime]\nkind = dS\nH = 200\n").invariant(), "HL<2");
  // AdS has no horizon inside the cell.
  EXPECT_NO_THROW(parse_config("[spacetime]\nkind = AdS\nHL = 3\n"));
}

TEST(Config, UnknownKeyIsNamedWithLocation)
{
  ConfigError const e = config_error("[spacetime]\nkind = dS\nHL = 0.1\n\n[cell]\n  length = 0.01\n");
  EXPECT_EQ(e.invariant(), "schema");
  std::string const what = e.what();
  EXPECT_NE(what.find("'length'"), std::string::npos) << what;
  EXPECT_EQ(e.line(), 6);
  EXPECT_EQ(e.column(), 3);
  EXPECT_NE(what.find("line 6, column 3"), std::string::npos) << what;
}

TEST(Config, SchemaErrors)
{
  EXPECT_EQ(config_error("[space]\nkind = dS\n").invariant(), "schema");
  EXPECT_EQ(config_error("[spacetime]\nkind = dS\nkind = AdS\n").invariant(), "schema");
  EXPECT_EQ(config_error("[cell]\nL = 0.01\n").invariant(), "schema");
  EXPECT_EQ(config_error("[spacetime]\nkind = dS\nH = 1\nHL = 0.1\n").invariant(), "schema");
  EXPECT_EQ(config_error("[spacetime]\nkind = dS\nM = 1\n").invariant(), "unused-parameter");
  EXPECT_EQ(config_error("[spacetime]\nkind = BH\nM = 1\nscale_factor = exp\n").invariant(), "unused-parameter");
  EXPECT_EQ(config_error("[spacetime]\nkind = Kerr\n").invariant(), "spacetime.kind");
  EXPECT_EQ(config_error("[spacetime]\nkind = Min\n[cell]\nL = abc\n").invariant(), "parse");
  EXPECT_EQ(config_error("[spacetime]\nkind = Min\n[cell]\ntheta = 0.5pi\n").invariant(), "cos(theta)>0");
  EXPECT_EQ(config_error("[spacetime]\nkind = Min\n[run]\neta = 2\n").invariant(), "0<=eta<=1");
  EXPECT_EQ(config_error("[spacetime]\nkind = Min\n[run]\nsweep = piezo\nsweep_steps = 1\n").invariant(),
            "steps>=2");
  EXPECT_EQ(config_error("[spacetime]\nkind = Min\n[run]\nscheme = III\n").invariant(), "run.scheme");
}

TEST(Config, CommentsAndPiSuffix)
{
  ExperimentConfig const c = parse_config(R"(
# comment
[spacetime]   ; trailing comment
kind = Min
[run]
sweep = piezo
sweep_to = 4pi     # two periods
piezo = 0.5pi
)");
  EXPECT_NEAR(*c.run.sweep_to, 4.0 * pi, 1e-15);
  EXPECT_NEAR(c.run.piezo, 0.5 * pi, 1e-15);
  Sweep const s = c.sweep(0.0);
  EXPECT_EQ(s.from, 0.0);
  EXPECT_EQ(s.steps, 101);
}

TEST(Config, SweepDefaults)
{
  ExperimentConfig c = parse_config(std::string(minimal) + "[run]\nsweep = hubble\n");
  Sweep const s = c.sweep(0.0);
  EXPECT_EQ(s.kind, SweepKind::hubble);
  EXPECT_EQ(s.from, 0.01);
  EXPECT_EQ(s.to, 0.1);
  c = parse_config(std::string(minimal) + "[run]\nsweep = piezo\n");
  EXPECT_EQ(c.sweep(1.25).delta_phi, 1.25);
  c = parse_config(std::string(minimal) + "[run]\nsweep = piezo\ndelta_phi = 0.5\n");
  EXPECT_EQ(c.sweep(1.25).delta_phi, 0.5);
}

TEST(Config, RobertsonWalkerScaleFactors)
{
  ExperimentConfig c = parse_config("[spacetime]\nkind = RW\nscale_factor = exp\nH = 0.5\n");
  EXPECT_EQ(c.spacetime.scale_factor.form, ScaleFactor::Form::exp);
  EXPECT_EQ(c.spacetime.scale_factor.rate, 0.5);
  c = parse_config("[spacetime]\nkind = RW\nscale_factor = power-law\nt0 = 2\nexponent = 0.66\n");
  EXPECT_EQ(c.spacetime.scale_factor.t0, 2.0);
  EXPECT_EQ(config_error("[spacetime]\nkind = RW\nscale_factor = power-law\n[redshift]\nt_emit = 2\nt_obs = 1\n")
              .invariant(),
            "t_emit<=t_obs");
  c = parse_config("[spacetime]\nkind = RW\n");
  EXPECT_EQ(c.spacetime.scale_factor.form, ScaleFactor::Form::constant);
  EXPECT_EQ(config_error("[spacetime]\nkind = RW\nscale_factor = exp\nH = 1\na0 = 2\n").invariant(),
            "unused-parameter");
}

TEST(Config, EffectiveConfigRoundTrips)
{
  std::string const full = R"(
[spacetime]
kind = dS
HL = 0.1
[cell]
L = 0.02
grid_size = 17
theta = 0.1
C = 2.5
profile_form = exact
[probe]
lambda0 = 1.3e-6
n0 = 12345
[run]
scheme = joint
sweep = piezo
sweep_from = 0.1
sweep_to = 3
sweep_steps = 7
delta_phi = 0.3
piezo = 0.2
eta = 0.35
medium = definite_n1
sampling = poisson
seed = 99
[output]
directory = out
run = example
emit_plots = true
)";
  for (std::string const &text :
       {std::string(minimal), full, std::string("[spacetime]\nkind = BH\nM = 0.1\n[trace]\nb = 3\ncapture_search = true\n"),
        std::string("[spacetime]\nkind = RW\nscale_factor = power-law\nt0 = 3\n[redshift]\nt_emit = 1\nt_obs = 5\n")}) {
    ExperimentConfig const c = parse_config(text);
    std::string const dump = effective_config(c);
    ExperimentConfig const again = parse_config(dump);
    EXPECT_EQ(effective_config(again), dump);
    EXPECT_EQ(again.spacetime.H, c.spacetime.H);
    EXPECT_EQ(again.cell.L, c.cell.L);
    EXPECT_EQ(again.run.eta, c.run.eta);
    EXPECT_EQ(again.run.seed, c.run.seed);
  }
  ExperimentConfig const c = parse_config(full);
  EXPECT_EQ(c.run.scheme, Scheme::joint);
  EXPECT_EQ(c.run.medium, MediumState::definite_n1);
  EXPECT_EQ(c.probe.n0, 12345u);
  EXPECT_NEAR(c.spacetime.H, 5.0, 1e-12);
}
