#pragma once

// Vapor-cell design: axial index profile of the cell and the control-beam
// intensity and attenuator curves that produce it.

#include "optiverse/profile.hpp"
#include "optiverse/spacetime.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace optiverse {

enum class ProfileForm { quadratic, exact };

std::string_view to_string(ProfileForm form);
ProfileForm parse_profile_form(std::string_view name);

inline constexpr Eigen::Index default_grid_size = 1001;

// Axial profile n(z) on a uniform grid over [0, L]. For dS the quadratic form
// n = 1 + H^2 z^2 / 4 is the default; other kinds use the closed radial form
// with r -> z.
IndexProfile axial_profile(SpacetimeSpec const &spec, double L, Eigen::Index grid_size = default_grid_size,
                           ProfileForm form = ProfileForm::quadratic);

// Common intensity of both control beams, I(z) = C H^2 z^2 / (4 cos(theta)).
template <typename Derived>
auto control_intensity(double H, double C, double theta, Eigen::ArrayBase<Derived> const &z)
{
  return (C * H * H / (4.0 * std::cos(theta))) * z.square();
}

// Validated vector form of control_intensity.
VecX control_intensity_profile(double H, double C, double theta, VecX const &z);

// n = 1 + I cos(theta) / C.
double index_from_intensity(double I, double C, double theta);

// Intensity needed for an arbitrary profile, I = C (n - 1) / cos(theta).
// Entries are negative where the profile asks for n < 1.
VecX required_intensity(IndexProfile const &profile, double C, double theta);

// Transmission T(z) = I(z) / I(L) of the gradient attenuator. All-zero
// intensity (no beams) gives T = 1.
VecX attenuator_profile(VecX const &intensity);

struct CellDesign
{
  SpacetimeSpec spacetime;
  double L = 0.01;
  double theta = 0.0;
  double C = 1.0;
  ProfileForm form = ProfileForm::quadratic;
  IndexProfile profile;
  // Present only when the profile is realizable by index enhancement (I >= 0).
  std::optional<VecX> intensity;
  // Present only when some beam intensity is nonzero.
  std::optional<VecX> transmission;
  static constexpr char const *attenuator_normalization = "I(L)";
};

CellDesign design_cell(SpacetimeSpec const &spec, double L, Eigen::Index grid_size = default_grid_size,
                       double theta = 0.0, double C = 1.0, ProfileForm form = ProfileForm::quadratic);

} // namespace optiverse
