#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size Eigen states.
//
// The right-hand side has the signature
//   bool rhs(double t, State const &y, State &dydt)
// and may return false when y lies outside the region where the system is
// defined (e.g. inside a singular radius); the step is then rejected and
// retried with a smaller step size.
//
// The observer has the signature
//   bool observer(double t, State const &y)
// and is called after every accepted step. Returning false stops the
// integration with OdeStatus::stopped.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include <Eigen/Core>

namespace optiverse {

struct OdeOptions
{
  double rtol = 1e-10;
  double atol = 1e-10;
  double initial_step = 0.0; // 0 selects a step automatically
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 2'000'000;
};

enum class OdeStatus { completed, stopped, step_underflow, max_steps };

template <typename State> struct OdeResult
{
  State y;
  double t;
  OdeStatus status;
  long accepted = 0;
  long rejected = 0;
};

namespace detail {

template <typename State>
double error_norm(State const &err, State const &y0, State const &y1, OdeOptions const &opt)
{
  auto const scale = (opt.atol + opt.rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).eval();
  return std::sqrt((err.array() / scale).square().mean());
}

} // namespace detail

// Integrates from t0 to t1 (t1 > t0). Steps are clamped so that every time in
// `checkpoints` (sorted ascending) is hit exactly and reported to the observer.
template <typename State, typename Rhs, typename Observer>
OdeResult<State> integrate_adaptive(Rhs &&rhs, State y, double t0, double t1, OdeOptions const &opt,
                                    Observer &&observer, std::span<double const> checkpoints = {})
{
  // Dormand & Prince (1980) tableau.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeResult<State> res{y, t0, OdeStatus::completed};
  double t = t0;
  State k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, err;
  k1.resizeLike(y);
  if (!rhs(t, y, k1)) {
    res.status = OdeStatus::step_underflow;
    return res;
  }

  double h = opt.initial_step;
  if (h <= 0.0) {
    auto const scale = (opt.atol + opt.rtol * y.cwiseAbs().array()).eval();
    double const d0 = std::sqrt((y.array() / scale).square().mean());
    double const d1 = std::sqrt((k1.array() / scale).square().mean());
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  }
  h = std::min({h, opt.max_step, t1 - t0});

  auto next_checkpoint = std::lower_bound(checkpoints.begin(), checkpoints.end(), t0,
                                          [](double a, double b) { return a <= b; });
  double const h_min_rel = 16.0 * std::numeric_limits<double>::epsilon();

  long steps = 0;
  while (t < t1) {
    if (steps++ >= opt.max_steps) {
      res.status = OdeStatus::max_steps;
      break;
    }
    double target = t1;
    if (next_checkpoint != checkpoints.end() && *next_checkpoint < t1)
      target = *next_checkpoint;
    // Stretch to the target rather than leave a sliver of a step behind.
    bool const clamped = t + 1.01 * h >= target;
    double const hs = clamped ? target - t : h;
    if (!clamped && hs <= h_min_rel * std::max(1.0, std::abs(t))) {
      res.status = OdeStatus::step_underflow;
      break;
    }

    bool ok = true;
    ytmp = y + hs * a21 * k1;
    ok = ok && rhs(t + c2 * hs, ytmp, k2);
    if (ok) {
      ytmp = y + hs * (a31 * k1 + a32 * k2);
      ok = rhs(t + c3 * hs, ytmp, k3);
    }
    if (ok) {
      ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
      ok = rhs(t + c4 * hs, ytmp, k4);
    }
    if (ok) {
      ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      ok = rhs(t + c5 * hs, ytmp, k5);
    }
    if (ok) {
      ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      ok = rhs(t + hs, ytmp, k6);
    }
    if (ok) {
      ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      ok = rhs(t + hs, ynew, k7);
    }
    if (!ok) {
      // Stage left the domain of the right-hand side.
      h = 0.25 * hs;
      ++res.rejected;
      continue;
    }

    err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double const en = detail::error_norm(err, y, ynew, opt);
    double const fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);

    if (en <= 1.0) {
      t = clamped ? target : t + hs;
      y = ynew;
      k1 = k7; // FSAL
      ++res.accepted;
      if (clamped && next_checkpoint != checkpoints.end() && target == *next_checkpoint)
        ++next_checkpoint;
      if (!observer(t, static_cast<State const &>(y))) {
        res.status = OdeStatus::stopped;
        break;
      }
      // A clamped step says nothing about the admissible step size.
      h = clamped ? std::max(h, hs * fac) : hs * fac;
      h = std::min(h, opt.max_step);
    } else {
      h = hs * std::max(fac, 0.2);
      ++res.rejected;
    }
  }

  res.y = y;
  res.t = t;
  return res;
}

// Convenience overload without an observer.
template <typename State, typename Rhs>
OdeResult<State> integrate_adaptive(Rhs &&rhs, State y, double t0, double t1, OdeOptions const &opt = {})
{
  return integrate_adaptive(std::forward<Rhs>(rhs), std::move(y), t0, t1, opt,
                            [](double, State const &) { return true; });
}

} // namespace optiverse
