#include "optiverse/errors.hpp"
#include "optiverse/interferometer.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace optiverse;

namespace {

double const s2 = std::sqrt(2.0);

} // namespace

TEST(SchemeII, Examples)
{
  auto p = scheme2_probabilities(0.0, 0.0);
  EXPECT_NEAR(p.plus, 1.0, 1e-15);
  EXPECT_NEAR(p.minus, 0.0, 1e-15);
  p = scheme2_probabilities(pi, 0.0);
  EXPECT_NEAR(p.plus, 0.0, 1e-15);
  EXPECT_NEAR(p.minus, 1.0, 1e-15);
  p = scheme2_probabilities(pi / 3.0, 0.0);
  EXPECT_NEAR(p.plus, 0.75, 1e-15);
  EXPECT_NEAR(p.minus, 0.25, 1e-15);
  // The piezo phase shifts the fringe.
  p = scheme2_probabilities(1.0, 1.0);
  EXPECT_NEAR(p.plus, 1.0, 1e-15);
}

TEST(SchemeI, Examples)
{
  auto p = scheme1_probabilities(0.0, 0.0);
  EXPECT_NEAR(p.plus, 1.0, 1e-15);
  EXPECT_NEAR(p.minus, 0.0, 1e-15);
  p = scheme1_probabilities(pi, 0.0);
  EXPECT_NEAR(p.plus, 0.5, 1e-8);
  EXPECT_NEAR(p.minus, 0.5, 1e-8);
  p = scheme1_probabilities(pi / 2.0, 0.0);
  EXPECT_NEAR(p.plus, (2.0 + s2) / 4.0, 1e-15);
  EXPECT_NEAR(p.minus, (2.0 - s2) / 4.0, 1e-15);
}

TEST(Laws, NormalizationBoundsPeriodicity)
{
  for (int i = 0; i < 10000; ++i) {
    double const d = -4.0 * pi + 8.0 * pi * i / 9999.0;
    auto const a = scheme1_probabilities(d, 0.0);
    auto const b = scheme2_probabilities(d, 0.0);
    EXPECT_NEAR(a.plus + a.minus, 1.0, 1e-12);
    EXPECT_NEAR(b.plus + b.minus, 1.0, 1e-12);
    EXPECT_GE(a.plus, 0.5 - 1e-15);
    EXPECT_LE(a.plus, 1.0 + 1e-15);
    EXPECT_GE(b.plus, -1e-15);
    EXPECT_LE(b.plus, 1.0 + 1e-15);
    EXPECT_NEAR(scheme1_probabilities(d + 2.0 * pi, 0.0).plus, a.plus, 1e-7);
    EXPECT_NEAR(scheme2_probabilities(d + 2.0 * pi, 0.0).plus, b.plus, 1e-12);
    for (double eta : {0.0, 0.4, 1.0}) {
      auto const j = joint_state_probabilities(d, 0.3, eta, MediumState::cat);
      EXPECT_NEAR(j.plus + j.minus, 1.0, 1e-12);
    }
  }
}

TEST(Joint, MatchesBruteForceEnumeration)
{
  for (double eta : {0.0, 0.25, 0.7, 1.0}) {
    double const c = 1.0 / std::sqrt(2.0 + 2.0 * eta);
    for (double d = -3.0; d <= 3.0; d += 0.37) {
      for (double piezo : {0.0, 0.9}) {
        auto const j = joint_state_probabilities(d, piezo, eta, MediumState::cat);
        auto const [plus, minus] = oracle::joint_brute_force(d, piezo, eta, c, c);
        EXPECT_NEAR(j.plus, plus, 1e-12);
        EXPECT_NEAR(j.minus, minus, 1e-12);
        auto const n1 = joint_state_probabilities(d, piezo, eta, MediumState::definite_n1);
        EXPECT_NEAR(n1.plus, oracle::joint_brute_force(d, piezo, eta, 1.0, 0.0).first, 1e-12);
      }
    }
  }
}

TEST(Joint, ReducesToSchemeII)
{
  for (double eta : {0.0, 0.5, 1.0})
    for (double d = -7.0; d <= 7.0; d += 0.1) {
      auto const j = joint_state_probabilities(d, 0.2, eta, MediumState::definite_n2);
      auto const s = scheme2_probabilities(d, 0.2);
      EXPECT_NEAR(j.plus, s.plus, 1e-12);
      EXPECT_NEAR(j.minus, s.minus, 1e-12);
      auto const n1 = joint_state_probabilities(d, 0.2, eta, MediumState::definite_n1);
      EXPECT_NEAR(n1.plus, scheme2_probabilities(0.0, 0.2).plus, 1e-12);
    }
}

TEST(Joint, CatStateAgainstSchemeI)
{
  auto p = joint_state_probabilities(0.0, 0.0, 0.0, MediumState::cat);
  EXPECT_NEAR(p.plus, 1.0, 1e-12);
  p = joint_state_probabilities(pi, 0.0, 0.0, MediumState::cat);
  EXPECT_NEAR(p.plus, 0.5, 1e-12);
  EXPECT_NEAR(p.plus, scheme1_probabilities(pi, 0.0).plus, 1e-8);
  // Regression pin: the two models disagree at pi/2.
  p = joint_state_probabilities(pi / 2.0, 0.0, 0.0, MediumState::cat);
  EXPECT_NEAR(p.plus, 0.75, 1e-12);
  EXPECT_NEAR(p.minus, 0.25, 1e-12);
  EXPECT_GT(scheme1_probabilities(pi / 2.0, 0.0).plus - p.plus, 0.1);
  for (double d = 0.0; d < 2.0 * pi; d += 0.1)
    EXPECT_NEAR(joint_state_probabilities(d, 0.0, 0.0, MediumState::cat).plus, (3.0 + std::cos(d)) / 4.0, 1e-12);
  // Fully overlapping branches behave like a single medium with averaged amplitude.
  p = joint_state_probabilities(pi, 0.0, 1.0, MediumState::cat);
  EXPECT_NEAR(p.plus, 0.5, 1e-12);
}

TEST(Joint, UnitaryAmplitudes)
{
  for (double d : {0.0, 0.4, 2.0}) {
    Eigen::Matrix2cd const a = joint_output_amplitudes(d, 0.6, 0.0, MediumState::cat);
    EXPECT_NEAR(a.squaredNorm(), 1.0, 1e-14);
  }
  EXPECT_THROW(joint_output_amplitudes(0.0, 0.0, 1.5, MediumState::cat), DomainError);
}

TEST(Fringe, DeterministicCounts)
{
  MZIConfig cfg;
  cfg.n0 = 1'000'000;
  Sweep sweep{SweepKind::piezo, 0.0, 1.0, 2, pi / 3.0};
  FringeScan const scan = fringe_scan(cfg, sweep);
  EXPECT_EQ(scan.rows[0].stats.counts_plus, 750000);
  EXPECT_EQ(scan.rows[0].stats.counts_minus, 250000);
}

TEST(Fringe, PiezoSweepTracesCosine)
{
  MZIConfig cfg;
  cfg.n0 = 1000;
  FringeScan const scan = fringe_scan(cfg, Sweep{});
  ASSERT_EQ(scan.rows.size(), 101u);
  EXPECT_EQ(scan.rows.back().sweep_value, 2.0 * pi);
  for (auto const &row : scan.rows)
    EXPECT_EQ(row.stats.counts_plus, std::llround(1000.0 * 0.5 * (1.0 + std::cos(-row.sweep_value))));
  EXPECT_NEAR(scan.visibility(), 1.0, 1e-12);
}

TEST(Fringe, HubbleSweepCrossesAboutTwentyOneHalfFringes)
{
  MZIConfig cfg;
  Sweep const sweep{SweepKind::hubble, 0.01, 0.1, 2001, 0.0};
  FringeScan const scan = fringe_scan(cfg, sweep, {0.01, 780e-9});
  double const span = scan.rows.back().stats.delta_phi - scan.rows.front().stats.delta_phi;
  EXPECT_NEAR(span / pi, 21.15, 0.05);
  // Count maxima of p_plus: one per 2 pi of phase.
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < scan.rows.size(); ++i)
    if (scan.rows[i].stats.p_plus > scan.rows[i - 1].stats.p_plus &&
        scan.rows[i].stats.p_plus >= scan.rows[i + 1].stats.p_plus)
      ++maxima;
  EXPECT_EQ(maxima, 10);
}

TEST(Fringe, PoissonIsSeededAndUnbiased)
{
  MZIConfig cfg;
  cfg.n0 = 10'000;
  cfg.sampling = Sampling::poisson;
  cfg.seed = 42;
  Sweep const sweep{SweepKind::piezo, 0.0, 2.0 * pi, 9, 0.0};
  FringeScan const a = fringe_scan(cfg, sweep);
  FringeScan const b = fringe_scan(cfg, sweep);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].stats.counts_plus, b.rows[i].stats.counts_plus);
    EXPECT_EQ(a.rows[i].stats.counts_minus, b.rows[i].stats.counts_minus);
  }
  cfg.seed = 43;
  FringeScan const c = fringe_scan(cfg, sweep);
  bool differs = false;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    differs = differs || a.rows[i].stats.counts_minus != c.rows[i].stats.counts_minus;
  EXPECT_TRUE(differs);
}

TEST(Fringe, InvalidSweeps)
{
  MZIConfig cfg;
  EXPECT_THROW(fringe_scan(cfg, Sweep{SweepKind::piezo, 0.0, 1.0, 1, 0.0}), DomainError);
  EXPECT_THROW(fringe_scan(cfg, Sweep{SweepKind::piezo, 1.0, 0.0, 5, 0.0}), DomainError);
  EXPECT_THROW(fringe_scan(cfg, Sweep{SweepKind::hubble, 0.1, 2.5, 5, 0.0}), DomainError);
  cfg.eta = -0.1;
  EXPECT_THROW(fringe_scan(cfg, Sweep{}), DomainError);
}
