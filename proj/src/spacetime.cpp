#include "optiverse/spacetime.hpp"

#include "optiverse/errors.hpp"
#include "optiverse/ode.hpp"
#include "optiverse/roots.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <sstream>

namespace optiverse {

namespace {

constexpr std::array<std::pair<SpacetimeKind, std::string_view>, 7> kind_names{{
  {SpacetimeKind::Min, "Min"},
  {SpacetimeKind::BH, "BH"},
  {SpacetimeKind::dS, "dS"},
  {SpacetimeKind::dSBH, "dS-BH"},
  {SpacetimeKind::AdS, "AdS"},
  {SpacetimeKind::AdSBH, "AdS-BH"},
  {SpacetimeKind::RW, "RW"},
}};

std::string num(double v)
{
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Kind after collapsing vanishing parameters (e.g. dS with H = 0 is Min).
SpacetimeKind effective_kind(SpacetimeSpec const &spec)
{
  bool const h = spec.H > 0.0;
  bool const m = spec.M > 0.0;
  switch (spec.kind) {
  case SpacetimeKind::BH:
    return m ? SpacetimeKind::BH : SpacetimeKind::Min;
  case SpacetimeKind::dS:
    return h ? SpacetimeKind::dS : SpacetimeKind::Min;
  case SpacetimeKind::AdS:
    return h ? SpacetimeKind::AdS : SpacetimeKind::Min;
  case SpacetimeKind::dSBH:
    return h && m ? SpacetimeKind::dSBH : h ? SpacetimeKind::dS : m ? SpacetimeKind::BH : SpacetimeKind::Min;
  case SpacetimeKind::AdSBH:
    return h && m ? SpacetimeKind::AdSBH : h ? SpacetimeKind::AdS : m ? SpacetimeKind::BH : SpacetimeKind::Min;
  default:
    return spec.kind;
  }
}

// Exact log(r / rb) for the pure pieces, used to pin the hybrid metrics.
double log_ratio_de_sitter(double H, double rbar, double sign)
{
  return -std::log(0.5 * (1.0 + std::sqrt(1.0 - sign * H * H * rbar * rbar)));
}

double log_ratio_black_hole(double M, double rbar)
{
  return 2.0 * std::log(0.5 * (1.0 + std::sqrt(1.0 - 2.0 * M / rbar)));
}

using Scalar1 = Eigen::Matrix<double, 1, 1>;

OdeOptions transform_options()
{
  OdeOptions opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-13;
  return opt;
}

// Integrates g(s) over [a, b] (a < b) as a one-component ODE.
template <typename G> double integrate_scalar(G &&g, double a, double b)
{
  auto rhs = [&](double s, Scalar1 const &, Scalar1 &dy) {
    double const v = g(s);
    if (!std::isfinite(v))
      return false;
    dy(0) = v;
    return true;
  };
  OdeOptions opt = transform_options();
  opt.initial_step = 1e-3 * (b - a);
  auto const res = integrate_adaptive(rhs, Scalar1::Zero().eval(), a, b, opt);
  if (res.status != OdeStatus::completed)
    throw DomainError("transform-integration", "isotropic transform integration failed near rb = " + num(res.t));
  return res.y(0);
}

// d(log(r/rb))/drb = (1/sqrt(f) - 1) / rb.
double log_ratio_slope(StaticMetric const &metric, double s)
{
  double const f = metric.f(s);
  if (!(f > 0.0))
    return std::numeric_limits<double>::quiet_NaN();
  double const q = std::sqrt(f);
  return (1.0 - f) / (s * q * (1.0 + q));
}

} // namespace

std::string_view to_string(SpacetimeKind kind)
{
  for (auto const &[k, name] : kind_names)
    if (k == kind)
      return name;
  return "?";
}

SpacetimeKind parse_spacetime_kind(std::string_view name)
{
  for (auto const &[k, n] : kind_names)
    if (n == name)
      return k;
  if (name == "dSBH")
    return SpacetimeKind::dSBH;
  if (name == "AdSBH")
    return SpacetimeKind::AdSBH;
  throw DomainError("spacetime.kind", "unknown spacetime kind '" + std::string(name) +
                                        "' (expected Min, BH, dS, dS-BH, AdS, AdS-BH, RW)");
}

std::string_view to_string(ScaleFactor::Form form)
{
  switch (form) {
  case ScaleFactor::Form::exp:
    return "exp";
  case ScaleFactor::Form::power_law:
    return "power-law";
  case ScaleFactor::Form::constant:
    return "constant";
  }
  return "?";
}

ScaleFactor::Form parse_scale_factor_form(std::string_view name)
{
  if (name == "exp")
    return ScaleFactor::Form::exp;
  if (name == "power-law")
    return ScaleFactor::Form::power_law;
  if (name == "constant")
    return ScaleFactor::Form::constant;
  throw DomainError("scale_factor.form", "unknown scale factor '" + std::string(name) +
                                           "' (expected exp, power-law, constant)");
}

bool ScaleFactor::in_domain(double t) const
{
  if (!std::isfinite(t))
    return false;
  return form != Form::power_law || t > 0.0;
}

double ScaleFactor::operator()(double t) const
{
  if (!in_domain(t))
    throw DomainError("scale_factor.domain", "a(t) undefined at t = " + num(t) + " s");
  switch (form) {
  case Form::exp:
    return std::exp(rate * t);
  case Form::power_law:
    return std::pow(t / t0, exponent);
  case Form::constant:
    return value;
  }
  return value;
}

bool SpacetimeSpec::uses_H() const
{
  switch (kind) {
  case SpacetimeKind::dS:
  case SpacetimeKind::AdS:
  case SpacetimeKind::dSBH:
  case SpacetimeKind::AdSBH:
    return true;
  case SpacetimeKind::RW:
    return scale_factor.form == ScaleFactor::Form::exp;
  default:
    return false;
  }
}

bool SpacetimeSpec::uses_M() const
{
  return kind == SpacetimeKind::BH || kind == SpacetimeKind::dSBH || kind == SpacetimeKind::AdSBH;
}

void SpacetimeSpec::validate() const
{
  if (!(H >= 0.0) || !std::isfinite(H))
    throw DomainError("H>=0", "Hubble parameter must be finite and non-negative, got " + num(H));
  if (!(M >= 0.0) || !std::isfinite(M))
    throw DomainError("M>=0", "mass parameter must be finite and non-negative, got " + num(M));
  if (!uses_H() && H != 0.0)
    throw DomainError("unused-parameter", "H is not a parameter of " + std::string(to_string(kind)));
  if (!uses_M() && M != 0.0)
    throw DomainError("unused-parameter", "M is not a parameter of " + std::string(to_string(kind)));

  if (kind == SpacetimeKind::RW) {
    auto const &a = scale_factor;
    switch (a.form) {
    case ScaleFactor::Form::exp:
      if (a.rate != H)
        throw DomainError("scale_factor.rate", "exp scale factor rate must equal H");
      break;
    case ScaleFactor::Form::power_law:
      if (!(a.t0 > 0.0))
        throw DomainError("a(t)>0", "power-law scale factor needs t0 > 0");
      break;
    case ScaleFactor::Form::constant:
      if (!(a.value > 0.0))
        throw DomainError("a(t)>0", "constant scale factor must be positive, got " + num(a.value));
      break;
    }
  } else {
    auto const &a = scale_factor;
    if (a.form != ScaleFactor::Form::constant || a.value != 1.0)
      throw DomainError("unused-parameter", "scale factor is only a parameter of RW");
  }

  if (kind == SpacetimeKind::dSBH && H > 0.0 && M > 0.0 && 27.0 * H * H * M * M >= 1.0)
    throw DomainError("dS-BH static region", "27 H^2 M^2 < 1 required for a static region between horizons");
}

// ---------------------------------------------------------------------------

RadialInterval closed_form_domain(SpacetimeSpec const &spec)
{
  constexpr double inf = std::numeric_limits<double>::infinity();
  double const bh_lo = 0.5 * spec.M * (1.0 + singular_margin);
  double const ds_hi = spec.H > 0.0 ? 2.0 / spec.H * (1.0 - singular_margin) : inf;
  switch (effective_kind(spec)) {
  case SpacetimeKind::Min:
  case SpacetimeKind::AdS:
    return {0.0, inf, false};
  case SpacetimeKind::dS:
    return {0.0, ds_hi, false};
  case SpacetimeKind::BH:
  case SpacetimeKind::AdSBH:
    return {bh_lo, inf, true};
  case SpacetimeKind::dSBH:
    return {bh_lo, ds_hi, true};
  case SpacetimeKind::RW:
    break;
  }
  throw DomainError("static-kind", "RW has no static radial index; use rw_index");
}

IndexValue closed_form_index(SpacetimeSpec const &spec, double r)
{
  spec.validate();
  SpacetimeKind const kind = effective_kind(spec);
  RadialInterval const dom = closed_form_domain(spec);
  if (!(r >= 0.0) || !std::isfinite(r))
    throw DomainError("r>=0", "radius must be finite and non-negative, got " + num(r));
  if (!dom.contains(r)) {
    bool const near_bh = dom.lo_open && r <= dom.lo;
    std::string const where =
      near_bh ? "singular radius r = M/2 = " + num(0.5 * spec.M) : "singular radius r = 2/H = " + num(2.0 / spec.H);
    throw DomainError(near_bh ? "r>M/2" : "H*r<2",
                      std::string(to_string(spec.kind)) + " index undefined at r = " + num(r) + " m (" + where + " m)");
  }
  bool const approx = kind == SpacetimeKind::dSBH || kind == SpacetimeKind::AdSBH;
  return {table_index(kind, spec.H, spec.M, r), approx};
}

double rw_index(SpacetimeSpec const &spec, double t)
{
  if (spec.kind != SpacetimeKind::RW)
    throw DomainError("kind=RW", "rw_index needs an RW spacetime");
  spec.validate();
  return spec.scale_factor(t);
}

// ---------------------------------------------------------------------------

StaticMetric StaticMetric::from_spec(SpacetimeSpec const &spec)
{
  spec.validate();
  StaticMetric m;
  m.kind = effective_kind(spec);
  m.H = spec.H;
  m.M = spec.M;
  m.from_catalog = true;
  double const H = spec.H, M = spec.M;
  constexpr double inf = std::numeric_limits<double>::infinity();

  switch (m.kind) {
  case SpacetimeKind::Min:
    m.f = [](double) { return 1.0; };
    break;
  case SpacetimeKind::dS:
    m.f = [H](double s) { return 1.0 - H * H * s * s; };
    m.rbar_hi = 1.0 / H;
    break;
  case SpacetimeKind::AdS:
    m.f = [H](double s) { return 1.0 + H * H * s * s; };
    break;
  case SpacetimeKind::BH:
    m.f = [M](double s) { return 1.0 - 2.0 * M / s; };
    m.rbar_lo = 2.0 * M;
    m.normalization = Normalization::infinity;
    break;
  case SpacetimeKind::dSBH:
  case SpacetimeKind::AdSBH: {
    double const sign = m.kind == SpacetimeKind::dSBH ? 1.0 : -1.0;
    m.f = [H, M, sign](double s) { return 1.0 - sign * H * H * s * s - 2.0 * M / s; };
    // Static-observer radius, where the two curvature terms balance.
    double const balance = std::cbrt(M / (H * H));
    if (sign > 0.0) {
      m.rbar_lo = find_root(m.f, 1e-3 * M, balance);
      m.rbar_hi = find_root(m.f, balance, 1.0 / H);
      m.match_rbar = balance;
    } else {
      m.rbar_lo = find_root(m.f, 1e-3 * M, 2.0 * M);
      m.rbar_hi = inf;
      m.match_rbar = std::max(balance, 2.0 * m.rbar_lo);
    }
    m.normalization = Normalization::matched;
    m.match_log_ratio = log_ratio_de_sitter(H, m.match_rbar, sign) + log_ratio_black_hole(M, m.match_rbar);
    break;
  }
  case SpacetimeKind::RW:
    throw DomainError("static-kind", "RW is not a static metric");
  }
  return m;
}

bool StaticMetric::in_static_domain(double rbar) const
{
  if (!(rbar >= rbar_lo) || !(rbar < rbar_hi))
    return false;
  if (rbar == 0.0)
    return normalization == Normalization::origin;
  return f(rbar) > 0.0;
}

double isotropic_transform(StaticMetric const &metric, double rbar)
{
  if (metric.from_catalog) {
    switch (metric.kind) {
    case SpacetimeKind::Min:
      return rbar;
    case SpacetimeKind::dS:
    case SpacetimeKind::AdS:
      if (!metric.in_static_domain(rbar))
        throw DomainError("f>0", "rb = " + num(rbar) + " m is outside the static region");
      // Inverse of rb = r / (1 +- H^2 r^2 / 4) on the branch with r -> rb.
      return 2.0 * rbar / (1.0 + std::sqrt(metric.f(rbar)));
    default:
      break;
    }
  }
  return isotropic_transform_ode(metric, rbar);
}

double isotropic_transform_ode(StaticMetric const &metric, double rbar)
{
  if (!metric.in_static_domain(rbar))
    throw DomainError("f>0", "rb = " + num(rbar) + " m is outside the static region (horizon crossing)");
  if (rbar == 0.0)
    return 0.0;

  auto slope = [&](double s) { return log_ratio_slope(metric, s); };
  double log_ratio = 0.0;
  switch (metric.normalization) {
  case StaticMetric::Normalization::origin: {
    // Below s0 the integrand is linear in s (matches the flat solution).
    double const s0 = 1e-6 * rbar;
    log_ratio = 0.5 * slope(s0) * s0 + integrate_scalar(slope, s0, rbar);
    break;
  }
  case StaticMetric::Normalization::infinity: {
    // With u = 1/s: log(r/rb) = -int_0^{1/rb} slope(1/u) / u^2 du,
    // whose integrand tends to a constant as u -> 0.
    double const u_end = 1.0 / rbar;
    double const u0 = 1e-6 * u_end;
    auto tail = [&](double u) { return slope(1.0 / u) / (u * u); };
    log_ratio = -(tail(u0) * u0 + integrate_scalar(tail, u0, u_end));
    break;
  }
  case StaticMetric::Normalization::matched: {
    double const ref = metric.match_rbar;
    double const part = rbar >= ref ? integrate_scalar(slope, ref, rbar) : -integrate_scalar(slope, rbar, ref);
    log_ratio = metric.match_log_ratio + part;
    break;
  }
  }
  return rbar * std::exp(log_ratio);
}

double static_radius(StaticMetric const &metric, double r)
{
  if (!(r >= 0.0) || !std::isfinite(r))
    throw DomainError("r>=0", "radius must be finite and non-negative, got " + num(r));
  if (metric.from_catalog && metric.kind == SpacetimeKind::Min)
    return r;
  if (r == 0.0) {
    if (metric.normalization != StaticMetric::Normalization::origin)
      throw DomainError("f>0", "r = 0 is outside the static region");
    return 0.0;
  }

  auto mismatch = [&](double rbar) { return std::log(isotropic_transform_ode(metric, rbar) / r); };

  // Open interval of admissible rb, pulled in by a hair from horizons.
  double const lo = metric.rbar_lo > 0.0 ? metric.rbar_lo * (1.0 + 1e-14) : 0.0;
  double const hi = std::isfinite(metric.rbar_hi) ? metric.rbar_hi * (1.0 - 1e-14) : metric.rbar_hi;
  auto const out_of_range = [&] {
    return DomainError("f>0", "r = " + num(r) + " m has no preimage in the static region");
  };

  double x = std::clamp(r, lo > 0.0 ? lo : 0.0, hi);
  if (x == 0.0 || x == lo)
    x = lo > 0.0 ? lo * (1.0 + 1e-3) : r;
  if (x >= hi)
    x = 0.5 * (lo + hi);
  double fx = mismatch(x);
  double a = x, b = x, fa = fx, fb = fx;

  for (int i = 0; i < 400 && fa > 0.0; ++i) {
    b = a;
    fb = fa;
    if (lo > 0.0 && a - lo <= 1e-15 * lo)
      throw out_of_range();
    a = lo > 0.0 ? lo + 0.25 * (a - lo) : 0.25 * a;
    fa = mismatch(a);
  }
  for (int i = 0; i < 400 && fb < 0.0; ++i) {
    a = b;
    fa = fb;
    if (std::isfinite(hi) && hi - b <= 1e-15 * hi)
      throw out_of_range();
    b = std::isfinite(hi) ? hi - 0.25 * (hi - b) : 4.0 * b;
    fb = mismatch(b);
  }
  if (fa > 0.0 || fb < 0.0)
    throw out_of_range();
  return find_root(mismatch, a, b, 1e-16 * b);
}

double numeric_index(StaticMetric const &metric, double r)
{
  if (r == 0.0 && metric.normalization == StaticMetric::Normalization::origin)
    return 1.0 / std::sqrt(metric.f(0.0));
  double const rbar = static_radius(metric, r);
  return rbar / (r * std::sqrt(metric.f(rbar)));
}

// ---------------------------------------------------------------------------

TensorIndex tensor_index(StaticMetric const &metric, Vec3 const &point, Chart chart, MetricForm form)
{
  double const radius = chart == Chart::spherical ? point(0) : point.norm();
  if (chart == Chart::spherical && !(radius > 0.0 && std::sin(point(1)) != 0.0))
    throw DomainError("chart", "spherical chart is singular at r = 0 or on the polar axis");

  // Static radius and conformal factor of the spatial metric.
  double rbar = radius;
  double conformal = 1.0;
  if (form == MetricForm::isotropic) {
    if (metric.from_catalog && (metric.kind == SpacetimeKind::dS || metric.kind == SpacetimeKind::AdS)) {
      double const sign = metric.kind == SpacetimeKind::dS ? 1.0 : -1.0;
      rbar = radius / (1.0 + sign * metric.H * metric.H * radius * radius / 4.0);
    } else {
      rbar = static_radius(metric, radius);
    }
    conformal = radius > 0.0 ? rbar / radius : 1.0;
  }
  if (!metric.in_static_domain(rbar))
    throw DomainError("f>0", "point lies outside the static region");
  double const g00 = metric.f(rbar);

  Mat3 spatial;
  double gamma = 1.0;
  Vec3 scale = Vec3::Ones();
  if (chart == Chart::spherical) {
    double const s2 = std::sin(point(1)) * std::sin(point(1));
    double const r2 = radius * radius;
    if (form == MetricForm::static_form)
      spatial = Vec3(1.0 / g00, r2, r2 * s2).asDiagonal();
    else
      spatial = (conformal * conformal * Vec3(1.0, r2, r2 * s2)).asDiagonal();
    gamma = r2 * r2 * s2;
    scale = Vec3(1.0, radius, radius * std::sqrt(s2));
  } else {
    if (form == MetricForm::static_form) {
      spatial = Mat3::Identity();
      if (radius > 0.0) {
        Vec3 const unit = point / radius;
        spatial += (1.0 / g00 - 1.0) * unit * unit.transpose();
      }
    } else {
      spatial = conformal * conformal * Mat3::Identity();
    }
  }

  return {dielectric_index(g00, spatial, gamma), chart, form, gamma, g00, scale};
}

} // namespace optiverse
