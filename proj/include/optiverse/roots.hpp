#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace optiverse {

// Brent's method on a sign-changing bracket [lo, hi].
template <typename F>
double find_root(F &&f, double lo, double hi, double xtol = 0.0, int max_iter = 200)
{
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0)
    return a;
  if (fb == 0.0)
    return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::invalid_argument("find_root: bracket does not change sign");

  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    double const tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    double const m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0)
      return b;

    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      double const s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0)
        q = -q;
      else
        p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  return b;
}

} // namespace optiverse
