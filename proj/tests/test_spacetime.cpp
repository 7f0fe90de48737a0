#include "optiverse/errors.hpp"
#include "optiverse/spacetime.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

using namespace optiverse;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string domain_invariant(auto &&fn)
{
  try {
    fn();
  } catch (DomainError const &e) {
    return e.invariant();
  }
  return "";
}

} // namespace

// --- closed_form_index -------------------------------------------------

TEST(ClosedForm, TableValues)
{
  EXPECT_EQ(closed_form_index(SpacetimeSpec::de_sitter(3.7), 0.0).n, 1.0);
  EXPECT_NEAR(closed_form_index(SpacetimeSpec::de_sitter(1.0), 0.2).n, 1.0 / 0.99, 1e-15);
  EXPECT_NEAR(closed_form_index(SpacetimeSpec::black_hole(1.0), 2.0).n, 125.0 / 48.0, 1e-15);
  EXPECT_NEAR(closed_form_index(SpacetimeSpec::anti_de_sitter(1.0), 0.2).n, 1.0 / 1.01, 1e-15);
  EXPECT_EQ(closed_form_index(SpacetimeSpec::minkowski(), 12.0).n, 1.0);
}

TEST(ClosedForm, LeadingOrderRowsAreFlagged)
{
  EXPECT_FALSE(closed_form_index(SpacetimeSpec::black_hole(1.0), 3.0).leading_order);
  EXPECT_TRUE(closed_form_index(SpacetimeSpec::de_sitter_black_hole(1.0, 1e-3), 0.1).leading_order);
  EXPECT_TRUE(closed_form_index(SpacetimeSpec::anti_de_sitter_black_hole(1.0, 1e-3), 0.1).leading_order);
  EXPECT_NEAR(closed_form_index(SpacetimeSpec::de_sitter_black_hole(2.0, 0.01), 0.1).n, 1.0 + 0.01 + 0.2, 1e-15);
  EXPECT_NEAR(closed_form_index(SpacetimeSpec::anti_de_sitter_black_hole(2.0, 0.01), 0.1).n, 1.0 - 0.01 + 0.2,
              1e-15);
}

TEST(ClosedForm, DomainErrorsNameTheSingularRadius)
{
  try {
    closed_form_index(SpacetimeSpec::black_hole(1.0), 0.4);
    FAIL() << "expected a domain error";
  } catch (DomainError const &e) {
    EXPECT_EQ(e.invariant(), "r>M/2");
    EXPECT_NE(std::string(e.what()).find("0.5"), std::string::npos) << e.what();
  }
  try {
    closed_form_index(SpacetimeSpec::de_sitter(1.0), 2.0);
    FAIL() << "expected a domain error";
  } catch (DomainError const &e) {
    EXPECT_EQ(e.invariant(), "H*r<2");
    EXPECT_NE(std::string(e.what()).find("r = 2/H = 2"), std::string::npos) << e.what();
  }
  EXPECT_EQ(domain_invariant([] { closed_form_index(SpacetimeSpec::black_hole(1.0), 0.5); }), "r>M/2");
  EXPECT_EQ(domain_invariant([] { closed_form_index(SpacetimeSpec::de_sitter(1.0), -0.1); }), "r>=0");
}

TEST(ClosedForm, SpecValidation)
{
  SpacetimeSpec spec = SpacetimeSpec::de_sitter(1.0);
  spec.M = 1.0;
  EXPECT_EQ(domain_invariant([&] { spec.validate(); }), "unused-parameter");
  EXPECT_EQ(domain_invariant([] { SpacetimeSpec::black_hole(-1.0).validate(); }), "M>=0");
  EXPECT_EQ(domain_invariant([] { SpacetimeSpec::de_sitter_black_hole(1.0, 0.5).validate(); }),
            "dS-BH static region");
  SpacetimeSpec rw = SpacetimeSpec::robertson_walker(ScaleFactor::exponential(2.0));
  rw.H = 1.0;
  EXPECT_EQ(domain_invariant([&] { rw.validate(); }), "scale_factor.rate");
}

TEST(ClosedForm, Ordering)
{
  for (double r = 0.05; r < 1.9; r += 0.05) {
    double const ds = closed_form_index(SpacetimeSpec::de_sitter(1.0), r).n;
    double const ads = closed_form_index(SpacetimeSpec::anti_de_sitter(1.0), r).n;
    EXPECT_GT(ds, 1.0);
    EXPECT_LT(ads, 1.0);
    EXPECT_GT(ads, 0.0);
    EXPECT_GT(closed_form_index(SpacetimeSpec::black_hole(0.1), r + 0.05).n, 1.0);
  }
}

TEST(ClosedForm, Limits)
{
  EXPECT_NEAR(closed_form_index(SpacetimeSpec::de_sitter(1.0), 1e-6).n, 1.0, 1e-12);
  EXPECT_NEAR(closed_form_index(SpacetimeSpec::anti_de_sitter(1.0), 1e-6).n, 1.0, 1e-12);
  EXPECT_NEAR(closed_form_index(SpacetimeSpec::black_hole(1.0), 1e9).n, 1.0, 1e-8);
  // Monotone approach to the limits.
  double prev = closed_form_index(SpacetimeSpec::black_hole(1.0), 0.6).n;
  for (double r = 0.7; r < 1e4; r *= 1.3) {
    double const n = closed_form_index(SpacetimeSpec::black_hole(1.0), r).n;
    EXPECT_LT(n, prev);
    prev = n;
  }
}

// --- isotropic transform ------------------------------------------------

TEST(IsotropicTransform, MinkowskiIsIdentity)
{
  StaticMetric const m = StaticMetric::from_spec(SpacetimeSpec::minkowski());
  EXPECT_EQ(isotropic_transform(m, 0.37), 0.37);
  EXPECT_NEAR(isotropic_transform_ode(m, 0.37), 0.37, 1e-15);
}

TEST(IsotropicTransform, DeSitterSolvesTheClosedRelation)
{
  // r / (1 + r^2 / 4) = 0.5 has the root 4 - 2 sqrt(3) below r = 2.
  StaticMetric const m = StaticMetric::from_spec(SpacetimeSpec::de_sitter(1.0));
  double const expected = 4.0 - 2.0 * std::sqrt(3.0);
  double const r = isotropic_transform(m, 0.5);
  EXPECT_NEAR(r, expected, 1e-15);
  EXPECT_NEAR(r / (1.0 + r * r / 4.0), 0.5, 1e-15);
  EXPECT_NEAR(isotropic_transform_ode(m, 0.5), expected, 1e-9 * expected);
}

TEST(IsotropicTransform, FlatLimit)
{
  StaticMetric const m = StaticMetric::from_spec(SpacetimeSpec::de_sitter(1e-8));
  EXPECT_NEAR(isotropic_transform(m, 0.8), 0.8, 1e-15);
  EXPECT_NEAR(isotropic_transform_ode(m, 0.8), 0.8, 1e-12);
}

TEST(IsotropicTransform, OdeMatchesAnalyticAntiDeSitter)
{
  StaticMetric const m = StaticMetric::from_spec(SpacetimeSpec::anti_de_sitter(2.0));
  for (double rb = 0.05; rb < 20.0; rb *= 1.7)
    EXPECT_NEAR(isotropic_transform_ode(m, rb), isotropic_transform(m, rb), 1e-9 * isotropic_transform(m, rb));
}

TEST(IsotropicTransform, BlackHoleMatchesExactStaticRadius)
{
  StaticMetric const m = StaticMetric::from_spec(SpacetimeSpec::black_hole(1.0));
  for (double r = 0.55; r < 1e3; r *= 1.5) {
    double const rb = oracle::bh_static_radius(1.0, r);
    EXPECT_LT(rel(isotropic_transform(m, rb), r), 1e-9) << "r = " << r;
    EXPECT_LT(rel(static_radius(m, r), rb), 1e-10) << "r = " << r;
  }
}

TEST(IsotropicTransform, MonotoneAndHorizonChecked)
{
  for (auto const &spec : {SpacetimeSpec::de_sitter(1.0), SpacetimeSpec::black_hole(1.0),
                           SpacetimeSpec::de_sitter_black_hole(1.0, 1e-2),
                           SpacetimeSpec::anti_de_sitter_black_hole(1.0, 1e-2)}) {
    StaticMetric const m = StaticMetric::from_spec(spec);
    double const lo = std::max(m.rbar_lo * 1.01, 1e-3);
    double const hi = std::isfinite(m.rbar_hi) ? m.rbar_hi * 0.99 : 50.0;
    double prev = 0.0;
    for (int i = 0; i <= 40; ++i) {
      double const rb = lo + (hi - lo) * i / 40.0;
      double const r = isotropic_transform(m, rb);
      EXPECT_GT(r, prev) << to_string(spec.kind) << " rb = " << rb;
      prev = r;
    }
  }
  StaticMetric const ds = StaticMetric::from_spec(SpacetimeSpec::de_sitter(1.0));
  EXPECT_EQ(domain_invariant([&] { isotropic_transform_ode(ds, 1.5); }), "f>0");
  StaticMetric const bh = StaticMetric::from_spec(SpacetimeSpec::black_hole(1.0));
  EXPECT_EQ(domain_invariant([&] { isotropic_transform(bh, 1.5); }), "f>0");
}

// --- numeric_index vs closed_form_index -------------------------------

TEST(NumericIndex, Examples)
{
  EXPECT_EQ(numeric_index(StaticMetric::from_spec(SpacetimeSpec::minkowski()), 4.2), 1.0);
  double const ds = numeric_index(StaticMetric::from_spec(SpacetimeSpec::de_sitter(1.0)), 0.2);
  EXPECT_LT(rel(ds, 1.0 / 0.99), 1e-8);
  double const bh = numeric_index(StaticMetric::from_spec(SpacetimeSpec::black_hole(1.0)), 10.0);
  EXPECT_LT(rel(bh, oracle::bh_index(1.0, 10.0)), 1e-8);
}

namespace {

// 100-point grid over [lo, hi].
template <typename F> double worst_relative(SpacetimeSpec const &spec, double lo, double hi, F &&tolerance)
{
  StaticMetric const m = StaticMetric::from_spec(spec);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    double const r = lo + (hi - lo) * i / 99.0;
    double const exact = closed_form_index(spec, r).n;
    worst = std::max(worst, rel(numeric_index(m, r), exact) / tolerance(r));
  }
  return worst;
}

} // namespace

TEST(NumericIndex, ExactRowsAgreeOnGrids)
{
  auto const flat = [](double) { return 1e-8; };
  EXPECT_LE(worst_relative(SpacetimeSpec::de_sitter(1.0), 0.0, 1.9, flat), 1.0);
  EXPECT_LE(worst_relative(SpacetimeSpec::anti_de_sitter(1.0), 0.0, 1.9, flat), 1.0);
  EXPECT_LE(worst_relative(SpacetimeSpec::black_hole(1.0), 0.525, 200.0, flat), 1.0);
  EXPECT_LE(worst_relative(SpacetimeSpec::de_sitter(40.0), 0.0, 0.0475, flat), 1.0);
}

TEST(NumericIndex, LeadingOrderRowsWithinDroppedTerms)
{
  // H^2 r^2 <= 0.05 and M / r <= 0.05 at H = 1, M = 1e-3.
  double const H = 1.0, M = 1e-3;
  auto const dropped = [&](double r) {
    double const x = H * H * r * r, m = M / r;
    return 3.0 * (x * x + m * m + x * m);
  };
  EXPECT_LE(worst_relative(SpacetimeSpec::de_sitter_black_hole(H, M), 0.02, std::sqrt(0.05), dropped), 1.0);
  EXPECT_LE(worst_relative(SpacetimeSpec::anti_de_sitter_black_hole(H, M), 0.02, std::sqrt(0.05), dropped), 1.0);
}

// --- tensor index -------------------------------------------------------

TEST(TensorIndex, MinkowskiIsIdentity)
{
  StaticMetric const m = StaticMetric::from_spec(SpacetimeSpec::minkowski());
  TensorIndex const t = tensor_index(m, Vec3(0.3, -1.2, 2.0), Chart::cartesian);
  EXPECT_TRUE(t.components.isApprox(Mat3::Identity(), 1e-15));
}

TEST(TensorIndex, IsotropicFormIsScalarTimesIdentity)
{
  StaticMetric const ds = StaticMetric::from_spec(SpacetimeSpec::de_sitter(1.0));
  Vec3 const p = Vec3(1.0, 2.0, -2.0).normalized() * 0.2;
  TensorIndex const t = tensor_index(ds, p, Chart::cartesian);
  double const n = closed_form_index(SpacetimeSpec::de_sitter(1.0), 0.2).n;
  EXPECT_NEAR(n, 1.0101010101010102, 1e-15);
  EXPECT_LT((t.components - n * Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);

  StaticMetric const bh = StaticMetric::from_spec(SpacetimeSpec::black_hole(1.0));
  Vec3 const q(3.0, 4.0, 0.0);
  TensorIndex const tb = tensor_index(bh, q, Chart::cartesian);
  double const nb = oracle::bh_index(1.0, 5.0);
  EXPECT_LT((tb.components - nb * Mat3::Identity()).cwiseAbs().maxCoeff() / nb, 1e-8);
  EXPECT_LT(std::abs(tb.components(0, 1)), 1e-10);
}

TEST(TensorIndex, StaticFormIsAnisotropic)
{
  // Static dS spatial metric diag(1/f, rb^2, rb^2 sin^2) gives the
  // orthonormal-frame index diag(1, 1/f, 1/f); f = 3/4 at H rb = 0.5.
  StaticMetric const ds = StaticMetric::from_spec(SpacetimeSpec::de_sitter(1.0));
  double const theta = 0.7;
  TensorIndex const t = tensor_index(ds, Vec3(0.5, theta, 0.3), Chart::spherical, MetricForm::static_form);
  Mat3 const frame = t.orthonormal();
  EXPECT_NEAR(frame(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(frame(1, 1), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(frame(2, 2), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(frame(0, 1), 0.0, 1e-15);
  // Coordinate components carry the spherical scale factors.
  EXPECT_NEAR(t.components(1, 1), 4.0 / 3.0 / 0.25, 1e-13);
  EXPECT_NEAR(t.components(2, 2), 4.0 / 3.0 / (0.25 * std::sin(theta) * std::sin(theta)), 1e-12);

  // The same point in Cartesian components: radial eigenvalue 1, tangential 4/3.
  Vec3 const x(0.3, 0.4, 0.0);
  TensorIndex const c = tensor_index(ds, x, Chart::cartesian, MetricForm::static_form);
  Vec3 const radial = x.normalized();
  Vec3 const tangential(-0.8, 0.6, 0.0);
  EXPECT_NEAR(radial.dot(c.components * radial), 1.0, 1e-14);
  EXPECT_NEAR(tangential.dot(c.components * tangential), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(Vec3::UnitZ().dot(c.components * Vec3::UnitZ()), 4.0 / 3.0, 1e-14);
}

TEST(TensorIndex, DielectricFormulaOnGenericMetric)
{
  // n^{ij} = sqrt(det g / gamma) / sqrt(g00) g^{ij} checked by hand on a
  // diagonal metric.
  Mat3 g = Vec3(2.0, 3.0, 5.0).asDiagonal();
  Mat3 const n = dielectric_index(0.5, g, 7.0);
  double const root = std::sqrt(0.5 * 30.0) / std::sqrt(7.0) / 0.5;
  EXPECT_NEAR(n(0, 0), root / 2.0, 1e-14);
  EXPECT_NEAR(n(1, 1), root / 3.0, 1e-14);
  EXPECT_NEAR(n(2, 2), root / 5.0, 1e-14);
}

TEST(TensorIndex, RejectsPointsOutsideStaticRegion)
{
  StaticMetric const ds = StaticMetric::from_spec(SpacetimeSpec::de_sitter(1.0));
  EXPECT_EQ(domain_invariant([&] { tensor_index(ds, Vec3(1.2, 0.0, 0.0), Chart::cartesian, MetricForm::static_form); }),
            "f>0");
  EXPECT_EQ(domain_invariant([&] { tensor_index(ds, Vec3(0.5, 0.0, 0.0), Chart::spherical); }), "chart");
}

// --- RW -----------------------------------------------------------------

TEST(RobertsonWalker, ScaleFactorIndex)
{
  SpacetimeSpec const e = SpacetimeSpec::robertson_walker(ScaleFactor::exponential(2.0));
  EXPECT_EQ(rw_index(e, 0.0), 1.0);
  EXPECT_NEAR(rw_index(e, 0.5), std::exp(1.0), 1e-15);
  SpacetimeSpec const c = SpacetimeSpec::robertson_walker(ScaleFactor::constant_value(1.0));
  EXPECT_EQ(rw_index(c, 123.0), 1.0);
  SpacetimeSpec const p = SpacetimeSpec::robertson_walker(ScaleFactor::power_law(2.0, 0.5));
  EXPECT_NEAR(rw_index(p, 8.0), 2.0, 1e-15);
  EXPECT_EQ(domain_invariant([&] { rw_index(p, -1.0); }), "scale_factor.domain");
  EXPECT_EQ(domain_invariant([] { rw_index(SpacetimeSpec::de_sitter(1.0), 0.0); }), "kind=RW");
}
