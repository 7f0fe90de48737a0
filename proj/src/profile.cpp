#include "optiverse/profile.hpp"

#include "optiverse/errors.hpp"

#include <string>

namespace optiverse {

void IndexProfile::validate() const
{
  if (position.size() != n.size())
    throw DomainError("profile.shape", "position and index samples differ in length");
  if (position.size() == 0)
    throw DomainError("profile.shape", "profile has no samples");
  for (Eigen::Index i = 0; i < position.size(); ++i) {
    if (!(n(i) > 0.0))
      throw DomainError("n>0", "non-positive index at sample " + std::to_string(i));
    if (position(i) < domain_lo || position(i) > domain_hi)
      throw DomainError("profile.domain", "sample " + std::to_string(i) + " lies outside the profile domain");
    if (i > 0 && !(position(i) > position(i - 1)))
      throw DomainError("profile.order", "positions must be strictly increasing");
  }
}

VecX uniform_grid(double L, Eigen::Index points)
{
  if (points < 2)
    throw DomainError("grid_size>=2", "a grid needs at least two points");
  if (!(L > 0.0))
    throw DomainError("L>0", "grid length must be positive");
  VecX z(points);
  for (Eigen::Index i = 0; i < points; ++i)
    z(i) = L * static_cast<double>(i) / static_cast<double>(points - 1);
  z(points - 1) = L;
  return z;
}

} // namespace optiverse
