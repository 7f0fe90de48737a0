#pragma once

// Metric catalog and the two routes from a static metric to a refractive
// index: the tabulated closed forms, and the first-principles route through
// the isotropic coordinate transform and the dielectric analogy
//   n^{ij} = sqrt(-g)/sqrt(gamma) * g^{ij} / g00.

#include "optiverse/types.hpp"

#include <Eigen/LU>

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

namespace optiverse {

enum class SpacetimeKind { Min, BH, dS, dSBH, AdS, AdSBH, RW };

std::string_view to_string(SpacetimeKind kind);
SpacetimeKind parse_spacetime_kind(std::string_view name);

// Time-dependent scale factor a(t) of the expanding (RW) medium.
struct ScaleFactor
{
  enum class Form { exp, power_law, constant };

  Form form = Form::constant;
  double rate = 0.0;     // exp: a = exp(rate * t)
  double t0 = 1.0;       // power-law: a = (t / t0)^exponent, t > 0
  double exponent = 0.0;
  double value = 1.0;    // constant: a = value

  static ScaleFactor exponential(double H) { return {Form::exp, H}; }
  static ScaleFactor power_law(double t0, double p) { return {Form::power_law, 0.0, t0, p}; }
  static ScaleFactor constant_value(double a) { return {Form::constant, 0.0, 1.0, 0.0, a}; }

  bool in_domain(double t) const;
  double operator()(double t) const; // throws DomainError outside the domain
};

std::string_view to_string(ScaleFactor::Form form);
ScaleFactor::Form parse_scale_factor_form(std::string_view name);

struct SpacetimeSpec
{
  SpacetimeKind kind = SpacetimeKind::Min;
  double H = 0.0; // 1/m
  double M = 0.0; // m
  ScaleFactor scale_factor{};

  static SpacetimeSpec minkowski() { return {}; }
  static SpacetimeSpec de_sitter(double H) { return {SpacetimeKind::dS, H}; }
  static SpacetimeSpec anti_de_sitter(double H) { return {SpacetimeKind::AdS, H}; }
  static SpacetimeSpec black_hole(double M) { return {SpacetimeKind::BH, 0.0, M}; }
  static SpacetimeSpec de_sitter_black_hole(double H, double M) { return {SpacetimeKind::dSBH, H, M}; }
  static SpacetimeSpec anti_de_sitter_black_hole(double H, double M)
  {
    return {SpacetimeKind::AdSBH, H, M};
  }
  static SpacetimeSpec robertson_walker(ScaleFactor a)
  {
    return {SpacetimeKind::RW, a.form == ScaleFactor::Form::exp ? a.rate : 0.0, 0.0, a};
  }

  bool uses_H() const;
  bool uses_M() const;
  // Throws DomainError if any invariant is violated.
  void validate() const;
};

// Relative distance from a singular radius inside which evaluation is refused.
inline constexpr double singular_margin = 1e-6;

// ---------------------------------------------------------------------------
// Closed forms

// Tabulated index of a static kind, no domain checking. The dS-BH and AdS-BH
// rows are the leading-order expressions.
template <typename Scalar> Scalar table_index(SpacetimeKind kind, Scalar H, Scalar M, Scalar r)
{
  Scalar const x = H * H * r * r / Scalar(4);
  switch (kind) {
  case SpacetimeKind::Min:
    return Scalar(1);
  case SpacetimeKind::BH: {
    Scalar const s = M + Scalar(2) * r;
    return s * s * s / (Scalar(4) * r * r * (Scalar(2) * r - M));
  }
  case SpacetimeKind::dS:
    return Scalar(1) / (Scalar(1) - x);
  case SpacetimeKind::dSBH:
    return Scalar(1) + x + Scalar(2) * M / r;
  case SpacetimeKind::AdS:
    return Scalar(1) / (Scalar(1) + x);
  case SpacetimeKind::AdSBH:
    return Scalar(1) - x + Scalar(2) * M / r;
  case SpacetimeKind::RW:
    break;
  }
  return Scalar(1);
}

// dn/dr of table_index.
template <typename Scalar>
Scalar table_index_derivative(SpacetimeKind kind, Scalar H, Scalar M, Scalar r)
{
  Scalar const h2 = H * H;
  switch (kind) {
  case SpacetimeKind::Min:
  case SpacetimeKind::RW:
    return Scalar(0);
  case SpacetimeKind::BH: {
    Scalar const n = table_index(kind, H, M, r);
    return n * (Scalar(6) / (M + Scalar(2) * r) - Scalar(2) / r - Scalar(2) / (Scalar(2) * r - M));
  }
  case SpacetimeKind::dS: {
    Scalar const n = table_index(kind, H, M, r);
    return n * n * h2 * r / Scalar(2);
  }
  case SpacetimeKind::dSBH:
    return h2 * r / Scalar(2) - Scalar(2) * M / (r * r);
  case SpacetimeKind::AdS: {
    Scalar const n = table_index(kind, H, M, r);
    return -n * n * h2 * r / Scalar(2);
  }
  case SpacetimeKind::AdSBH:
    return -h2 * r / Scalar(2) - Scalar(2) * M / (r * r);
  }
  return Scalar(0);
}

struct IndexValue
{
  double n;
  bool leading_order; // true for the approximate dS-BH / AdS-BH rows
};

// Interval of isotropic radius r where the closed form is admissible; the
// bounds already include the singular-radius margin.
struct RadialInterval
{
  double lo;
  double hi;
  bool lo_open;
  bool contains(double r) const { return (lo_open ? r > lo : r >= lo) && r <= hi; }
};

RadialInterval closed_form_domain(SpacetimeSpec const &spec);

IndexValue closed_form_index(SpacetimeSpec const &spec, double r);

// n = a(t) for the expanding medium.
double rw_index(SpacetimeSpec const &spec, double t);

// ---------------------------------------------------------------------------
// First-principles route

// Static, spherically symmetric metric
//   ds^2 = -f(rb) c^2 dt^2 + drb^2 / f(rb) + rb^2 dOmega^2
// on the static interval (rbar_lo, rbar_hi) where f > 0.
struct StaticMetric
{
  // Where the isotropic radius r is pinned to the static radius rb.
  enum class Normalization {
    origin,   // r / rb -> 1 as rb -> 0
    infinity, // r / rb -> 1 as rb -> infinity
    matched   // log(r / rb) = match_log_ratio at rb = match_rbar
  };

  std::function<double(double)> f;
  double rbar_lo = 0.0;
  double rbar_hi = std::numeric_limits<double>::infinity();
  Normalization normalization = Normalization::origin;
  double match_rbar = 0.0;
  double match_log_ratio = 0.0;

  // Set when built from a catalog kind; enables the analytic transform for
  // Min/dS/AdS.
  SpacetimeKind kind = SpacetimeKind::Min;
  double H = 0.0;
  double M = 0.0;
  bool from_catalog = false;

  static StaticMetric from_spec(SpacetimeSpec const &spec);

  bool in_static_domain(double rbar) const;
};

// rb -> r. Analytic for Min/dS/AdS catalog metrics, ODE otherwise.
double isotropic_transform(StaticMetric const &metric, double rbar);

// rb -> r, always through the ODE d(log r) = drb / (rb sqrt(f)).
double isotropic_transform_ode(StaticMetric const &metric, double rbar);

// r -> rb, inverting isotropic_transform_ode by root finding.
double static_radius(StaticMetric const &metric, double r);

// n(r) = rb(r) / (r sqrt(f(rb(r)))), from the ODE transform.
double numeric_index(StaticMetric const &metric, double r);

// ---------------------------------------------------------------------------
// Tensor index

enum class Chart { spherical, cartesian };
// Which radial coordinate the metric (and the evaluation point) is written in.
enum class MetricForm { static_form, isotropic };

struct TensorIndex
{
  Mat3 components;      // coordinate-basis n^{ij}
  Chart chart;
  MetricForm form;
  double gamma;         // determinant of the laboratory metric at the point
  double g00;           // positive lapse squared, f(rb)
  Vec3 frame_scale;     // lab orthonormal-frame scale factors at the point

  // Components in the laboratory orthonormal frame.
  Mat3 orthonormal() const
  {
    return frame_scale.asDiagonal() * components * frame_scale.asDiagonal();
  }
};

// n^{ij} = sqrt(g00 det g) / sqrt(gamma) * g^{ij} / g00, with g00 > 0.
template <typename Scalar>
Matrix3<Scalar> dielectric_index(Scalar g00, Matrix3<Scalar> const &spatial, Scalar gamma)
{
  using std::sqrt;
  Scalar const root = sqrt(g00 * spatial.determinant()) / sqrt(gamma);
  return (root / g00) * spatial.inverse();
}

// `point` is (r, theta, phi) in the spherical chart or (x, y, z) in the
// cartesian chart; its radius is rb for MetricForm::static_form and r for
// MetricForm::isotropic.
TensorIndex tensor_index(StaticMetric const &metric, Vec3 const &point, Chart chart,
                         MetricForm form = MetricForm::isotropic);

} // namespace optiverse
