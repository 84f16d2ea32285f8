#include "sturmkit/theorem1.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minimize.hpp"
#include "sturmkit/error.hpp"
#include "sturmkit/format.hpp"
#include "sturmkit/oscillate.hpp"
#include "sturmkit/potential.hpp"
#include "sturmkit/propagate.hpp"
#include "sturmkit/sct.hpp"

namespace sturmkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSlack = 1e-12;
constexpr int kGrid = 10000;

void require_epsilon(double e) {
  if (!(e > 0.0 && e < 1.0)) throw DomainError("epsilon must lie in (0, 1), got " + format_real(e));
}

void require_tail(double e, double t) {
  require_epsilon(e);
  if (t < kPi - e - kSlack || t > kPi + kSlack)
    throw DomainError("t = " + format_real(t) + " outside the tail [pi - eps, pi]");
}

void require_domain(double e, double t) {
  require_epsilon(e);
  if (t < -kSlack || t > kPi + kSlack) throw DomainError("t = " + format_real(t) + " outside [0, pi]");
}

}  // namespace

TailCoefficients coeffs_c1_c2(double e, double lambda) {
  require_epsilon(e);
  const double d = 2 * e - 2;
  const double A = e * (kPi - e);
  const double B = e * (kPi - e + 2);
  const double c1 = lambda / d * ((e - 2) * std::cos(A) - e * std::cos(B)) - 1 / d * ((e - 2) * std::sin(A) + e * std::sin(B));
  const double c2 = lambda / d * ((e - 2) * std::sin(A) - e * std::sin(B)) + 1 / d * ((e - 2) * std::cos(A) + e * std::cos(B));
  return {c1, c2};
}

TailCoefficients solve_matching_system(double e, double lambda) {
  require_epsilon(e);
  const double w = 1 - e;
  const double x = w * (kPi - e);
  // [ sin x     cos x   ] [c1]   [  λ sin ε − cos ε ]
  // [ w cos x  −w sin x ] [c2] = [ −λ cos ε − sin ε ]
  const double m00 = std::sin(x), m01 = std::cos(x);
  const double m10 = w * std::cos(x), m11 = -w * std::sin(x);
  const double r0 = lambda * std::sin(e) - std::cos(e);
  const double r1 = -lambda * std::cos(e) - std::sin(e);
  const double det = m00 * m11 - m01 * m10;
  return {(r0 * m11 - m01 * r1) / det, (m00 * r1 - r0 * m10) / det};
}

double f_of(double e, double t) {
  require_tail(e, t);
  const double eta = e * (kPi - e) + t * (1 - e);
  return ((2 - e) * std::sin(eta) + e * std::sin(eta + 2 * e)) / (2 - 2 * e);
}

double f_of_expanded(double e, double t) {
  require_tail(e, t);
  const double s = std::sin((1 - e) * t);
  const double c = std::cos((1 - e) * t);
  const double A = e * e - e * kPi;
  const double B = e * (kPi - e + 2);
  return ((e - 2) * std::cos(A) * s - e * std::cos(B) * s - e * std::sin(B) * c - (e - 2) * std::sin(A) * c) /
         (2 * e - 2);
}

double g_of(double e, double t) {
  require_tail(e, t);
  const double s = std::sin((1 - e) * t);
  const double c = std::cos((1 - e) * t);
  const double A = e * e - e * kPi;
  const double B = e * (kPi - e + 2);
  return ((e - 2) * std::cos(A) * c + e * std::cos(B) * c - e * std::sin(B) * s + (e - 2) * std::sin(A) * s) /
         (2 * e - 2);
}

double df_dt(double e, double t) {
  require_tail(e, t);
  const double eta = e * (kPi - e) + t * (1 - e);
  return ((2 - e) * std::cos(eta) + e * std::cos(eta + 2 * e)) / 2;
}

double dg_dt(double e, double t) {
  require_tail(e, t);
  const double w = 1 - e;
  const double s = std::sin(w * t);
  const double c = std::cos(w * t);
  const double A = e * e - e * kPi;
  const double B = e * (kPi - e + 2);
  return w * (-(e - 2) * std::cos(A) * s - e * std::cos(B) * s - e * std::sin(B) * c + (e - 2) * std::sin(A) * c) /
         (2 * e - 2);
}

double v_closed_form(double e, double lambda, double t) {
  require_domain(e, t);
  if (t < kPi - e) return lambda * std::sin(t) + std::cos(t);
  return lambda * f_of(e, t) + g_of(e, t);
}

double dv_closed_form(double e, double lambda, double t) {
  require_domain(e, t);
  if (t < kPi - e) return lambda * std::cos(t) - std::sin(t);
  return lambda * df_dt(e, t) + dg_dt(e, t);
}

double f_positive_lower_bound(double e) {
  if (!(e > 0.0 && e < epsilon0())) throw DomainError("the f bound is only positive for 0 < epsilon < epsilon0");
  return (2 * std::sin(e) - 2 * e * e) / (2 - 2 * e);
}

double g_sup_bound(double e) {
  require_epsilon(e);
  return 3 / (1 - e);
}

double epsilon0() {
  double lo = 0.5;  // sin x − x² > 0
  double hi = 1.5;  // sin x − x² < 0
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (std::sin(mid) - mid * mid > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double f_tail_min(double e) {
  require_epsilon(e);
  const double start = kPi - e;
  int best = 0;
  double best_f = f_of(e, start);
  for (int k = 1; k <= kGrid; ++k) {
    const double fk = f_of(e, std::min(kPi, start + e * k / kGrid));
    if (fk < best_f) {
      best_f = fk;
      best = k;
    }
  }
  const double lo = start + e * std::max(0, best - 1) / kGrid;
  const double hi = std::min(kPi, start + e * std::min(kGrid, best + 1) / kGrid);
  const auto [_, refined] = detail::golden_section_min([&](double t) { return f_of(e, t); }, lo, hi, 1e-10);
  return std::min(best_f, refined);
}

double g_tail_max(double e) {
  require_epsilon(e);
  double m = 0.0;
  for (int k = 0; k <= kGrid; ++k) m = std::max(m, std::abs(g_of(e, std::min(kPi, kPi - e + e * k / kGrid))));
  return m;
}

double find_lambda_threshold(double e) {
  if (!(e > 0.0 && e < epsilon0())) throw DomainError("lambda threshold requires 0 < epsilon < epsilon0");
  const auto q2 = build_theorem1_q2(e);
  const Interval I(0.0, kPi);
  auto zero_free = [&](double lambda) { return count_zeros(IVP(q2, 0.0, 1.0, lambda), I) == 0; };

  if (zero_free(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  constexpr double kCap = 1e12;
  while (!zero_free(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > kCap) throw NumericError("no zero-free lambda below 1e12 for epsilon = " + format_real(e));
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (zero_free(mid) ? hi : lo) = mid;
  }
  return hi;
}

Theorem1Report verify_theorem1(double e, double lambda) {
  require_epsilon(e);
  const auto q1 = PiecewisePotential::constant(1.0, 0.0, kPi);
  const auto q2 = build_theorem1_q2(e);
  const IVP ivp(q2, 0.0, 1.0, lambda);
  const Interval I(0.0, kPi);

  Theorem1Report r{};
  r.epsilon = e;
  r.lambda = lambda;
  const auto closed = coeffs_c1_c2(e, lambda);
  const auto solved = solve_matching_system(e, lambda);
  r.c1 = closed.c1;
  r.c2 = closed.c2;
  r.coefficient_discrepancy = std::max(std::abs(closed.c1 - solved.c1), std::abs(closed.c2 - solved.c2));

  r.bound_applicable = e < epsilon0();
  r.f_lower_bound = (2 * std::sin(e) - 2 * e * e) / (2 - 2 * e);
  r.g_sup_bound = g_sup_bound(e);
  r.f_tail_min = f_tail_min(e);
  r.f_bound_holds = r.f_tail_min >= r.f_lower_bound;
  r.g_tail_max = g_tail_max(e);
  r.g_bound_holds = r.g_tail_max <= r.g_sup_bound;

  const Trajectory traj = sample_solution(ivp, kPi, kGrid + 1);
  std::size_t best = 0;
  for (std::size_t k = 1; k < traj.samples.size(); ++k)
    if (traj.samples[k].v < traj.samples[best].v) best = k;
  const double lo = traj.samples[best == 0 ? 0 : best - 1].t;
  const double hi = traj.samples[std::min(best + 1, traj.samples.size() - 1)].t;
  auto v_at = [&](double t) { return propagate_exact(ivp, t).v; };
  const auto [t_min, v_min] = detail::golden_section_min(v_at, lo, hi, 1e-10);
  if (v_min < traj.samples[best].v) {
    r.argmin_v = t_min;
    r.min_v = v_min;
  } else {
    r.argmin_v = traj.samples[best].t;
    r.min_v = traj.samples[best].v;
  }

  r.zero_count = count_zeros(ivp, I);
  r.zero_free = r.zero_count == 0;
  if (r.zero_free && !(r.min_v > 0.0))
    throw InternalError("zero-free solution with non-positive minimum " + format_real(r.min_v));

  r.sct_fails = sct_verdict(q1, q2).outcome == Outcome::fails;
  return r;
}

}  // namespace sturmkit
