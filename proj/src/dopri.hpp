#pragma once

// Dormand–Prince 5(4) embedded pair with FSAL, for 2-component systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "sturmkit/error.hpp"
#include "sturmkit/format.hpp"

namespace sturmkit::detail {

using Vec2 = std::array<double, 2>;

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double error_sum = 0.0;  // sum of accepted local error estimates (absolute)
};

/// Integrates y' = f(t, y) from t0 to t1 (t1 ≥ t0). Every abscissa in `stops`
/// that lies in (t0, t1) becomes a step boundary. `observe(t, y)` runs after
/// each accepted step. Local error per step is kept below tol·(1 + |y|).
template <class Rhs, class Observer>
StepStats integrate_dp45(Rhs&& f, double t0, Vec2& y, double t1, double tol, std::span<const double> stops,
                         Observer&& observe) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  StepStats stats;
  if (!(t1 > t0)) return stats;

  auto axpy = [](const Vec2& base, double h, std::initializer_list<std::pair<double, const Vec2*>> terms) {
    Vec2 out = base;
    for (const auto& [w, k] : terms) {
      out[0] += h * w * (*k)[0];
      out[1] += h * w * (*k)[1];
    }
    return out;
  };

  double t = t0;
  double h = std::min(t1 - t0, 0.05);
  Vec2 k1 = f(t, y);
  auto next_stop = stops.begin();
  while (next_stop != stops.end() && *next_stop <= t0) ++next_stop;

  constexpr std::size_t kMaxSteps = 1'000'000;
  while (t < t1) {
    if (stats.accepted + stats.rejected >= kMaxSteps)
      throw NumericError("step budget of " + std::to_string(kMaxSteps) + " exhausted at t = " + format_real(t));
    double target = t1;
    if (next_stop != stops.end() && *next_stop < t1) target = *next_stop;
    bool lands = false;
    if (t + h >= target) {
      h = target - t;
      lands = true;
    }
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
      throw NumericError("step size underflow at t = " + format_real(t));

    const Vec2 k2 = f(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const Vec2 k3 = f(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const Vec2 k4 = f(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec2 k5 = f(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec2 k6 = f(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec2 y5 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double t_new = lands ? target : t + h;
    const Vec2 k7 = f(t_new, y5);

    double err = 0.0;
    double err_abs = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
      err = std::max(err, std::abs(e) / scale);
      err_abs = std::max(err_abs, std::abs(e));
    }
    if (!std::isfinite(err)) throw NumericError("non-finite solution at t = " + format_real(t));

    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err <= 1.0) {
      t = t_new;
      y = y5;
      k1 = k7;
      ++stats.accepted;
      stats.error_sum += err_abs;
      observe(t, y);
      if (lands && next_stop != stops.end() && t >= *next_stop) ++next_stop;
      h *= factor;
    } else {
      ++stats.rejected;
      h *= std::min(factor, 0.9);
    }
  }
  return stats;
}

}  // namespace sturmkit::detail
