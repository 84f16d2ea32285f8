#pragma once

#include <cstddef>

namespace sturmkit {

// Counterexample: q1 ≡ 1 and q2 = 1 on [0, π−ε), (1−ε)² on [π−ε, π].
// The solution v(0) = 1, v'(0) = λ is λ sin t + cos t before π−ε and
// c1 sin((1−ε)t) + c2 cos((1−ε)t) = λ f(ε, t) + g(ε, t) after it.

struct TailCoefficients {
  double c1;
  double c2;
};

/// Closed forms with prefactors λ/(2ε−2) and 1/(2ε−2). Requires 0 < ε < 1.
TailCoefficients coeffs_c1_c2(double epsilon, double lambda);

/// The C¹ matching conditions at π−ε solved as a 2×2 linear system.
TailCoefficients solve_matching_system(double epsilon, double lambda);

/// f via (2−2ε) f = (2−ε) sin η + ε sin(η + 2ε), η = ε(π−ε) + t(1−ε).
/// Requires 0 < ε < 1 and π−ε ≤ t ≤ π.
double f_of(double epsilon, double t);
/// f via its four-term sin/cos((1−ε)t) expansion.
double f_of_expanded(double epsilon, double t);
double g_of(double epsilon, double t);
double df_dt(double epsilon, double t);
double dg_dt(double epsilon, double t);

/// Requires 0 < ε < 1 and 0 ≤ t ≤ π.
double v_closed_form(double epsilon, double lambda, double t);
double dv_closed_form(double epsilon, double lambda, double t);

/// (2 sin ε − 2ε²)/(2 − 2ε); requires 0 < ε < ε₀.
double f_positive_lower_bound(double epsilon);
/// 3/(1−ε).
double g_sup_bound(double epsilon);

/// Root of sin x = x² in (0.5, 1.5), by bisection to 1e−13.
double epsilon0();

/// Minimum of f over the tail [π−ε, π] (10^4 grid plus golden-section refinement).
double f_tail_min(double epsilon);
/// Maximum of |g| over a 10^4-point tail grid.
double g_tail_max(double epsilon);

/// Smallest λ ≥ 0 (to 1e−9) whose solution has no zero on [0, π]: doubling
/// then bisection on the zero-count predicate. Requires 0 < ε < ε₀; throws
/// NumericError if no zero-free λ exists below 1e12.
double find_lambda_threshold(double epsilon);

struct Theorem1Report {
  double epsilon;
  double lambda;
  double c1;
  double c2;
  double f_lower_bound;
  double g_sup_bound;
  double min_v;
  bool zero_free;
  bool sct_fails;

  double argmin_v;
  std::size_t zero_count;
  double coefficient_discrepancy;  // closed forms vs matching system
  bool bound_applicable;           // ε < ε₀
  double f_tail_min;
  bool f_bound_holds;              // f_tail_min ≥ f_lower_bound
  double g_tail_max;
  bool g_bound_holds;
};

/// Requires 0 < ε < 1.
Theorem1Report verify_theorem1(double epsilon, double lambda);

}  // namespace sturmkit
