#pragma once

#include "optiverse/types.hpp"

#include <functional>

namespace optiverse {

// Sampled scalar refractive index n(position) with its validity interval.
struct IndexProfile
{
  VecX position; // m, strictly increasing
  VecX n;
  double domain_lo = 0.0;
  double domain_hi = 0.0;
  std::function<double(double)> closed_form; // optional

  Eigen::Index size() const { return position.size(); }
  double length() const { return position.size() ? position(position.size() - 1) - position(0) : 0.0; }

  // Throws DomainError if samples are not positive, ordered and in-domain.
  void validate() const;
};

// N points 0 = z_0 < ... < z_{N-1} = L, with the end point pinned to L.
VecX uniform_grid(double L, Eigen::Index points);

} // namespace optiverse
