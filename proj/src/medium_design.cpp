#include "optiverse/medium_design.hpp"

#include "optiverse/errors.hpp"

#include <cmath>

namespace optiverse {

namespace {

void check_beam_geometry(double C, double theta)
{
  if (!(std::cos(theta) > 0.0) || !(std::abs(theta) < 0.5 * pi))
    throw DomainError("cos(theta)>0", "control beams must make an angle below pi/2 with the probe");
  if (!(C > 0.0) || !std::isfinite(C))
    throw DomainError("C>0", "medium constant C must be positive");
}

} // namespace

std::string_view to_string(ProfileForm form)
{
  return form == ProfileForm::quadratic ? "quadratic" : "exact";
}

ProfileForm parse_profile_form(std::string_view name)
{
  if (name == "quadratic")
    return ProfileForm::quadratic;
  if (name == "exact")
    return ProfileForm::exact;
  throw DomainError("cell.profile_form", "unknown profile form '" + std::string(name) + "' (expected quadratic, exact)");
}

IndexProfile axial_profile(SpacetimeSpec const &spec, double L, Eigen::Index grid_size, ProfileForm form)
{
  spec.validate();
  if (!(L > 0.0) || !std::isfinite(L))
    throw DomainError("L>0", "cell length must be positive");
  if (spec.kind == SpacetimeKind::RW)
    throw DomainError("static-kind", "RW has no axial index profile");
  if ((spec.kind == SpacetimeKind::dS || spec.kind == SpacetimeKind::dSBH) && !(spec.H * L < 2.0))
    throw DomainError("HL<2", "H L = " + std::to_string(spec.H * L) + " must stay below 2");

  IndexProfile p;
  p.position = uniform_grid(L, grid_size);
  p.domain_lo = 0.0;
  p.domain_hi = L;

  if (spec.kind == SpacetimeKind::dS && form == ProfileForm::quadratic) {
    double const H = spec.H;
    p.n = (1.0 + 0.25 * H * H * p.position.array().square()).matrix();
    p.closed_form = [H](double z) { return 1.0 + 0.25 * H * H * z * z; };
  } else {
    p.n.resize(p.position.size());
    for (Eigen::Index i = 0; i < p.position.size(); ++i)
      p.n(i) = closed_form_index(spec, p.position(i)).n;
    p.closed_form = [spec](double z) { return closed_form_index(spec, z).n; };
  }
  p.validate();
  return p;
}

VecX control_intensity_profile(double H, double C, double theta, VecX const &z)
{
  check_beam_geometry(C, theta);
  if (!(H >= 0.0))
    throw DomainError("H>=0", "Hubble parameter must be non-negative");
  return control_intensity(H, C, theta, z.array()).matrix();
}

double index_from_intensity(double I, double C, double theta)
{
  check_beam_geometry(C, theta);
  if (!(I >= 0.0))
    throw DomainError("I>=0", "control intensity must be non-negative");
  return 1.0 + I * std::cos(theta) / C;
}

VecX required_intensity(IndexProfile const &profile, double C, double theta)
{
  check_beam_geometry(C, theta);
  return ((profile.n.array() - 1.0) * (C / std::cos(theta))).matrix();
}

VecX attenuator_profile(VecX const &intensity)
{
  if (intensity.size() == 0)
    throw DomainError("profile.shape", "empty intensity profile");
  if ((intensity.array() < 0.0).any() || !intensity.allFinite())
    throw DomainError("I>=0", "attenuator needs non-negative finite intensities");
  double const peak = intensity.maxCoeff();
  if (peak == 0.0)
    return VecX::Ones(intensity.size());
  double const end = intensity(intensity.size() - 1);
  if (end < peak)
    throw DomainError("T<=1", "intensity at z = L must be the maximum for an I(L)-normalized attenuator");
  return intensity / end;
}

CellDesign design_cell(SpacetimeSpec const &spec, double L, Eigen::Index grid_size, double theta, double C,
                       ProfileForm form)
{
  check_beam_geometry(C, theta);
  CellDesign d{spec, L, theta, C, form, axial_profile(spec, L, grid_size, form), std::nullopt, std::nullopt};

  VecX I;
  if (spec.kind == SpacetimeKind::dS && form == ProfileForm::quadratic)
    I = control_intensity_profile(spec.H, C, theta, d.profile.position);
  else
    I = required_intensity(d.profile, C, theta);

  if ((I.array() >= 0.0).all()) {
    if (I.maxCoeff() > 0.0)
      d.transmission = attenuator_profile(I);
    d.intensity = std::move(I);
  }
  return d;
}

} // namespace optiverse
