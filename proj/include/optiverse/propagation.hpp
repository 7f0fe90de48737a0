#pragma once

#include "optiverse/profile.hpp"
#include "optiverse/spacetime.hpp"

#include <limits>
#include <string_view>
#include <vector>

namespace optiverse {

// ---------------------------------------------------------------------------
// Phase

enum class PhaseMethod { closed_form, quadrature };
std::string_view to_string(PhaseMethod method);

struct PhaseResult
{
  double phi;       // rad, total phase through the profile
  double delta_phi; // rad, phase relative to the vacuum arm
  PhaseMethod method;
  double lambda0;   // m
};

// Composite Simpson rule on the samples (x, y); the last three intervals use
// the 3/8 rule when the number of intervals is odd. Needs at least 3 points
// (two points fall back to the trapezoid).
template <typename DerivedX, typename DerivedY>
double simpson(Eigen::MatrixBase<DerivedX> const &x, Eigen::MatrixBase<DerivedY> const &y)
{
  Eigen::Index const n = x.size();
  if (n < 2)
    return 0.0;
  if (n == 2)
    return 0.5 * (x(1) - x(0)) * (y(0) + y(1));
  Eigen::Index const intervals = n - 1;
  Eigen::Index const simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  double sum = 0.0;
  for (Eigen::Index i = 0; i + 2 <= simpson_end; i += 2) {
    double const h0 = x(i + 1) - x(i);
    double const h1 = x(i + 2) - x(i + 1);
    // Non-uniform Simpson panel; reduces to h/3 (y0 + 4 y1 + y2) when h0 = h1.
    double const hs = h0 + h1;
    sum += hs / 6.0 *
           ((2.0 - h1 / h0) * y(i) + hs * hs / (h0 * h1) * y(i + 1) + (2.0 - h0 / h1) * y(i + 2));
  }
  if (simpson_end < intervals) {
    Eigen::Index const i = simpson_end;
    double const h = (x(i + 3) - x(i)) / 3.0;
    sum += 3.0 * h / 8.0 * (y(i) + 3.0 * y(i + 1) + 3.0 * y(i + 2) + y(i + 3));
  }
  return sum;
}

// phi = 2 pi / lambda0 * int n dz and delta_phi = 2 pi / lambda0 * int (n - 1) dz.
PhaseResult optical_phase(IndexProfile const &profile, double lambda0);

// delta_phi = pi H^2 L^3 / (6 lambda0) for the quadratic dS cell.
double phase_difference_closed(double H, double L, double lambda0);

// ---------------------------------------------------------------------------
// Rays through spherically symmetric media

// Closed-form radial medium n(r) with its derivative.
struct RadialMedium
{
  SpacetimeKind kind = SpacetimeKind::Min;
  double H = 0.0;
  double M = 0.0;

  static RadialMedium from_spec(SpacetimeSpec const &spec);

  double n(double r) const { return table_index(kind, H, M, r); }
  double dn_dr(double r) const { return table_index_derivative(kind, H, M, r); }

  // Inner singular radius (0 when none) and outer edge of the medium.
  double inner_radius() const;
  double outer_radius() const;
  bool asymptotically_flat() const { return kind == SpacetimeKind::Min || kind == SpacetimeKind::BH; }
  // Length used to place the far field; zero for Min.
  double length_scale() const;
};

enum class RayStop { budget, exited_domain, singular_radius, integrator_failure };
std::string_view to_string(RayStop stop);

struct RayOptions
{
  double rtol = 1e-10;
  double atol = 1e-10;
  // Arc lengths at which points are recorded exactly; when empty every
  // accepted integrator step is recorded. The final state is always kept.
  std::vector<double> save_at;
  // Stop once the ray is outside this radius and moving outward.
  double escape_radius = std::numeric_limits<double>::infinity();
  // Rays closer than (1 + capture_margin) * inner radius count as captured.
  double capture_margin = 1e-2;
};

// Planar ray: points in the plane through the symmetry center.
struct Ray
{
  std::vector<double> s; // arc length, m
  std::vector<Vec2> points;
  std::vector<Vec2> directions; // unit tangents
  std::vector<double> bouguer_drift; // |I(s) - I(0)| / |I(0)|, I = n r sin(psi)
  double bouguer = 0.0;              // invariant at launch, m
  double turning_angle = 0.0;        // unwrapped change of direction angle, rad
  double closest_approach = std::numeric_limits<double>::infinity();
  RayStop stop = RayStop::budget;

  double max_bouguer_drift() const;
};

// Integrates d/ds (n dx/ds) = grad n in arc length from `start` along `dir`.
Ray trace_ray(RadialMedium const &medium, Vec2 const &start, Vec2 const &dir, double arc_budget,
              RayOptions const &options = {});

struct Deflection
{
  bool captured = false;
  double angle = 0.0; // rad, positive when bent toward the center
  double closest_approach = 0.0;
  double far_radius = 0.0;
};

// Far-field deflection at impact parameter b, Richardson-extrapolated over
// two launch radii.
Deflection deflection_angle(RadialMedium const &medium, double b);

// Ray launched horizontally at radius far_radius with Bouguer invariant b,
// run for the length of the straight chord (used by deflection_angle).
Ray far_field_ray(RadialMedium const &medium, double b, double far_radius, RayOptions options = {});
double far_field_radius(RadialMedium const &medium, double b);

// Stationary point of n(r) r: the medium's analog of the photon sphere.
double photon_sphere_radius(RadialMedium const &medium);

// Bisection on b between a captured (b_captured) and an escaping (b_escaped)
// impact parameter.
double capture_threshold(RadialMedium const &medium, double b_captured, double b_escaped, double tol);

// ---------------------------------------------------------------------------

// 1 + z = a(t_obs) / a(t_emit) for the expanding medium n = a(t).
double redshift_factor(SpacetimeSpec const &spec, double t_emit, double t_obs);

} // namespace optiverse
