#include "optiverse/propagation.hpp"

#include "optiverse/errors.hpp"
#include "optiverse/ode.hpp"
#include "optiverse/roots.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace optiverse {

std::string_view to_string(PhaseMethod method)
{
  return method == PhaseMethod::closed_form ? "closed_form" : "quadrature";
}

std::string_view to_string(RayStop stop)
{
  switch (stop) {
  case RayStop::budget:
    return "budget";
  case RayStop::exited_domain:
    return "exited_domain";
  case RayStop::singular_radius:
    return "singular_radius";
  case RayStop::integrator_failure:
    return "integrator_failure";
  }
  return "?";
}

PhaseResult optical_phase(IndexProfile const &profile, double lambda0)
{
  if (!(lambda0 > 0.0))
    throw DomainError("lambda0>0", "wavelength must be positive");
  profile.validate();
  double const k0 = 2.0 * pi / lambda0;
  double const excess = simpson(profile.position, (profile.n.array() - 1.0).matrix());
  double const phi = k0 * (profile.length() + excess);
  return {phi, k0 * excess, PhaseMethod::quadrature, lambda0};
}

double phase_difference_closed(double H, double L, double lambda0)
{
  if (!(H >= 0.0))
    throw DomainError("H>=0", "Hubble parameter must be non-negative");
  if (!(L > 0.0))
    throw DomainError("L>0", "cell length must be positive");
  if (!(lambda0 > 0.0))
    throw DomainError("lambda0>0", "wavelength must be positive");
  return pi * H * H * L * L * L / (6.0 * lambda0);
}

// ---------------------------------------------------------------------------

RadialMedium RadialMedium::from_spec(SpacetimeSpec const &spec)
{
  spec.validate();
  if (spec.kind == SpacetimeKind::RW)
    throw DomainError("static-kind", "RW has no radial medium");
  RadialMedium m{spec.kind, spec.H, spec.M};
  // Collapse vanishing parameters so derivative formulas stay regular.
  if (spec.kind == SpacetimeKind::BH && spec.M == 0.0)
    m.kind = SpacetimeKind::Min;
  if ((spec.kind == SpacetimeKind::dS || spec.kind == SpacetimeKind::AdS) && spec.H == 0.0)
    m.kind = SpacetimeKind::Min;
  return m;
}

double RadialMedium::inner_radius() const
{
  switch (kind) {
  case SpacetimeKind::BH:
  case SpacetimeKind::dSBH:
  case SpacetimeKind::AdSBH:
    return 0.5 * M;
  default:
    return 0.0;
  }
}

double RadialMedium::outer_radius() const
{
  if ((kind == SpacetimeKind::dS || kind == SpacetimeKind::dSBH) && H > 0.0)
    return 2.0 / H * (1.0 - singular_margin);
  return std::numeric_limits<double>::infinity();
}

double RadialMedium::length_scale() const
{
  switch (kind) {
  case SpacetimeKind::BH:
    return M;
  case SpacetimeKind::dS:
  case SpacetimeKind::AdS:
    return 1.0 / H;
  default:
    return M > 0.0 ? M : 0.0;
  }
}

double Ray::max_bouguer_drift() const
{
  return bouguer_drift.empty() ? 0.0 : *std::max_element(bouguer_drift.begin(), bouguer_drift.end());
}

namespace {

using RayState = Eigen::Matrix<double, 4, 1>; // x, y, px, py with p = n dx/ds

double cross(Vec2 const &a, Vec2 const &b) { return a(0) * b(1) - a(1) * b(0); }

} // namespace

Ray trace_ray(RadialMedium const &medium, Vec2 const &start, Vec2 const &dir, double arc_budget,
              RayOptions const &options)
{
  double const r_in = medium.inner_radius();
  double const r_out = medium.outer_radius();
  double const r0 = start.norm();
  if (!(r0 > r_in * (1.0 + singular_margin)) || !(r0 < r_out))
    throw DomainError("ray.start", "ray must start inside the medium, away from singular radii");
  if (!(dir.norm() > 0.0))
    throw DomainError("ray.direction", "direction must be nonzero");
  if (!(arc_budget > 0.0))
    throw DomainError("ray.arc_budget", "arc budget must be positive");

  double const capture_radius = r_in * (1.0 + options.capture_margin);

  auto rhs = [&](double, RayState const &y, RayState &dy) {
    double const r = std::hypot(y(0), y(1));
    // Trial stages may not enter the singular core or leave the medium.
    if (!(r > r_in * (1.0 + singular_margin)) || !(r < r_out) || r == 0.0)
      return false;
    double const n = medium.n(r);
    double const g = medium.dn_dr(r) / r;
    dy << y(2) / n, y(3) / n, g * y(0), g * y(1);
    return true;
  };

  Vec2 const unit = dir.normalized();
  RayState y0;
  y0 << start, medium.n(r0) * unit;

  Ray ray;
  ray.bouguer = cross(start, y0.tail<2>());
  double const drift_scale = ray.bouguer != 0.0 ? std::abs(ray.bouguer) : medium.n(r0) * r0;
  double angle = std::atan2(unit(1), unit(0));
  double const angle0 = angle;
  ray.closest_approach = r0;

  auto record = [&](double s, RayState const &y) {
    Vec2 const x = y.head<2>();
    Vec2 const p = y.tail<2>();
    ray.s.push_back(s);
    ray.points.push_back(x);
    ray.directions.push_back(p.normalized());
    ray.bouguer_drift.push_back(std::abs(cross(x, p) - ray.bouguer) / drift_scale);
  };
  record(0.0, y0);

  bool const every_step = options.save_at.empty();
  std::size_t next_save = 0;
  while (next_save < options.save_at.size() && options.save_at[next_save] <= 0.0)
    ++next_save;

  auto observer = [&](double s, RayState const &y) {
    Vec2 const x = y.head<2>();
    Vec2 const p = y.tail<2>();
    double const r = x.norm();
    // Unwrap the direction angle.
    double a = std::atan2(p(1), p(0));
    a += 2.0 * pi * std::round((angle - a) / (2.0 * pi));
    angle = a;
    ray.closest_approach = std::min(ray.closest_approach, r);

    if (every_step) {
      record(s, y);
    } else {
      while (next_save < options.save_at.size() && options.save_at[next_save] <= s) {
        if (options.save_at[next_save] == s)
          record(s, y);
        ++next_save;
      }
    }
    if (r <= capture_radius) {
      ray.stop = RayStop::singular_radius;
      return false;
    }
    if (r >= options.escape_radius && x.dot(p) > 0.0) {
      ray.stop = RayStop::exited_domain;
      return false;
    }
    return true;
  };

  OdeOptions opt;
  opt.rtol = options.rtol;
  opt.atol = options.atol;
  opt.initial_step = 1e-3 * std::max(r0, medium.length_scale());
  auto const res = integrate_adaptive(rhs, y0, 0.0, arc_budget, opt, observer, options.save_at);

  if (res.status == OdeStatus::completed) {
    ray.stop = RayStop::budget;
  } else if (res.status != OdeStatus::stopped) {
    // The step collapsed: the ray is being pulled onto a singular radius or
    // out of the medium.
    double const r = res.y.head<2>().norm();
    if (r_in > 0.0 && r < 2.0 * r_in)
      ray.stop = RayStop::singular_radius;
    else if (std::isfinite(r_out) && r > 0.5 * r_out)
      ray.stop = RayStop::exited_domain;
    else
      ray.stop = RayStop::integrator_failure;
  }
  if (ray.s.back() != res.t)
    record(res.t, res.y);
  ray.turning_angle = angle - angle0;
  return ray;
}

double far_field_radius(RadialMedium const &medium, double b)
{
  return std::max(1e4 * medium.length_scale(), 100.0 * b);
}

Ray far_field_ray(RadialMedium const &medium, double b, double far_radius, RayOptions options)
{
  // Offset so that the Bouguer invariant n r sin(psi) equals b exactly.
  double const y = b / medium.n(far_radius);
  double const x = std::sqrt(far_radius * far_radius - y * y);
  // Run for the length of the straight chord, so both ends sit at about the
  // same radius and the truncated tails are symmetric.
  double const chord = 2.0 * x;
  return trace_ray(medium, Vec2(-x, y), Vec2(1.0, 0.0), chord, options);
}

namespace {

bool escaped(Ray const &ray, double far_radius)
{
  if (ray.stop != RayStop::budget && ray.stop != RayStop::exited_domain)
    return false;
  Vec2 const &end = ray.points.back();
  return end.norm() > 0.5 * far_radius && end.dot(ray.directions.back()) > 0.0;
}

} // namespace

Deflection deflection_angle(RadialMedium const &medium, double b)
{
  if (!medium.asymptotically_flat())
    throw DomainError("asymptotic-flatness", "deflection needs an asymptotically flat medium (Min or BH)");
  if (!(b > medium.inner_radius()))
    throw DomainError("b>singular radius", "impact parameter must exceed the singular radius");
  if (medium.kind == SpacetimeKind::Min)
    return {false, 0.0, b, 0.0};

  double const R1 = far_field_radius(medium, b);
  double const R2 = 2.0 * R1;
  Ray const a = far_field_ray(medium, b, R1);
  if (!escaped(a, R1))
    return {true, 0.0, a.closest_approach, R1};
  Ray const c = far_field_ray(medium, b, R2);
  if (!escaped(c, R2))
    return {true, 0.0, c.closest_approach, R2};

  // Bending toward the center turns the direction clockwise for b > 0; the
  // remaining far-field contribution falls off as 1 / R^2.
  double const d1 = -a.turning_angle;
  double const d2 = -c.turning_angle;
  return {false, (4.0 * d2 - d1) / 3.0, c.closest_approach, R2};
}

double photon_sphere_radius(RadialMedium const &medium)
{
  if (medium.kind != SpacetimeKind::BH)
    throw DomainError("photon-sphere", "only the BH medium has a circular-orbit radius");
  double const M = medium.M;
  // d(n r)/dr / n = 1 + r n'/n.
  auto g = [&](double r) { return 1.0 + r * medium.dn_dr(r) / medium.n(r); };
  return find_root(g, 0.5 * M * (1.0 + singular_margin), 100.0 * M, 1e-15 * M);
}

double capture_threshold(RadialMedium const &medium, double b_captured, double b_escaped, double tol)
{
  if (!deflection_angle(medium, b_captured).captured || deflection_angle(medium, b_escaped).captured)
    throw DomainError("capture-bracket", "bracket must start captured and end escaping");
  while (b_escaped - b_captured > tol) {
    double const mid = 0.5 * (b_captured + b_escaped);
    if (deflection_angle(medium, mid).captured)
      b_captured = mid;
    else
      b_escaped = mid;
  }
  return 0.5 * (b_captured + b_escaped);
}

// ---------------------------------------------------------------------------

double redshift_factor(SpacetimeSpec const &spec, double t_emit, double t_obs)
{
  if (!(t_emit <= t_obs))
    throw DomainError("t_emit<=t_obs", "emission must not come after observation");
  return rw_index(spec, t_obs) / rw_index(spec, t_emit);
}

} // namespace optiverse
