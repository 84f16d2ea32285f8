#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sturmkit/error.hpp"
#include "sturmkit/oscillate.hpp"
#include "sturmkit/potential.hpp"
#include "sturmkit/propagate.hpp"
#include "sturmkit/theorem1.hpp"

using namespace sturmkit;
using std::numbers::pi;

namespace {

// (v, v') at the step from the closed-form sinusoid, then the tail
// coefficients of c1 sin(wt) + c2 cos(wt) by inverting the rotation.
TailCoefficients oracle_coefficients(double eps, double lambda) {
  const double tb = pi - eps, w = 1 - eps;
  const auto [v, dv] = oracle::step_solution({{0.0, tb, 1.0}}, 0.0, 1.0, lambda, tb);
  const double x = w * tb;
  return {v * std::sin(x) + dv * std::cos(x) / w, v * std::cos(x) - dv * std::sin(x) / w};
}

double oracle_v(double eps, double lambda, double t) {
  return oracle::step_solution({{0.0, pi - eps, 1.0}, {pi - eps, pi, (1 - eps) * (1 - eps)}}, 0.0, 1.0, lambda, t)
      .first;
}

}  // namespace

TEST_CASE("tail coefficients match the matching conditions") {
  for (double eps : {0.05, 0.1, 0.3, 0.5, 0.8, 0.95})
    for (double lambda : {0.0, 1.0, 10.0, 100.0, -3.0}) {
      const auto c = coeffs_c1_c2(eps, lambda);
      const auto s = solve_matching_system(eps, lambda);
      const auto o = oracle_coefficients(eps, lambda);
      const double scale = std::max(1.0, std::abs(lambda));
      CHECK(std::abs(c.c1 - s.c1) < 1e-10 * scale);
      CHECK(std::abs(c.c2 - s.c2) < 1e-10 * scale);
      CHECK(std::abs(c.c1 - o.c1) < 1e-10 * scale);
      CHECK(std::abs(c.c2 - o.c2) < 1e-10 * scale);
    }
  CHECK_THROWS_AS(coeffs_c1_c2(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(coeffs_c1_c2(0.0, 0.0), DomainError);
}

TEST_CASE("tail coefficients are affine in lambda") {
  for (double eps : {0.2, 0.5, 0.7}) {
    const auto c0 = coeffs_c1_c2(eps, 0.0), c1 = coeffs_c1_c2(eps, 1.0), c2 = coeffs_c1_c2(eps, 2.0);
    CHECK(std::abs((c2.c1 - c1.c1) - (c1.c1 - c0.c1)) < 1e-12);
    CHECK(std::abs((c2.c2 - c1.c2) - (c1.c2 - c0.c2)) < 1e-12);
  }
}

TEST_CASE("zero-slope case continues cos t through the step") {
  const auto c = coeffs_c1_c2(0.5, 0.0);
  const double tb = pi - 0.5, w = 0.5;
  CHECK(std::isfinite(c.c1));
  CHECK(std::isfinite(c.c2));
  CHECK(std::abs(c.c1 * std::sin(w * tb) + c.c2 * std::cos(w * tb) - std::cos(tb)) < 1e-12);
  CHECK(std::abs(w * (c.c1 * std::cos(w * tb) - c.c2 * std::sin(w * tb)) + std::sin(tb)) < 1e-12);
}

TEST_CASE("f and g") {
  // direct evaluation: 1.5 sin(pi - 0.25) + 0.5 sin(pi + 0.75)
  const double f_direct = 1.5 * std::sin(pi - 0.25) + 0.5 * std::sin(pi + 0.75);
  CHECK(f_of(0.5, pi) == doctest::Approx(f_direct).epsilon(1e-14));
  CHECK(std::abs(f_of(0.5, pi) - 0.0303) < 5e-5);

  for (double t : {pi - 1e-9, pi - 5e-10}) {
    CHECK(std::abs(f_of(1e-9, t) - std::sin(t)) < 1e-8);
    CHECK(std::abs(g_of(1e-9, t) - std::cos(t)) < 1e-8);
  }

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double eps = 0.01 + 0.97 * U(rng);
    const double t = pi - eps * U(rng);
    worst = std::max(worst, std::abs(f_of(eps, t) - f_of_expanded(eps, t)));
  }
  CHECK(worst < 1e-12);

  CHECK_THROWS_AS(f_of(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(g_of(0.5, 4.0), DomainError);
  CHECK_THROWS_AS(f_of(1.5, pi), DomainError);
}

TEST_CASE("f and g are the basis solutions on the tail") {
  // f: IC (0, 1), g: IC (1, 0) at t = 0, through the step.
  for (double eps : {0.1, 0.5, 0.8})
    for (int i = 0; i <= 20; ++i) {
      const double t = pi - eps + eps * i / 20;
      const auto steps = std::vector<oracle::Step>{{0.0, pi - eps, 1.0}, {pi - eps, pi, (1 - eps) * (1 - eps)}};
      const auto [fv, fdv] = oracle::step_solution(steps, 0.0, 0.0, 1.0, t);
      const auto [gv, gdv] = oracle::step_solution(steps, 0.0, 1.0, 0.0, t);
      CHECK(std::abs(f_of(eps, t) - fv) < 1e-12);
      CHECK(std::abs(g_of(eps, t) - gv) < 1e-12);
      CHECK(std::abs(df_dt(eps, t) - fdv) < 1e-12);
      CHECK(std::abs(dg_dt(eps, t) - gdv) < 1e-12);
    }
}

TEST_CASE("g bound") {
  for (double eps : {0.1, 0.5, 0.8}) {
    CHECK(g_sup_bound(eps) == doctest::Approx(3 / (1 - eps)));
    CHECK(g_tail_max(eps) <= g_sup_bound(eps));
  }
}

TEST_CASE("f lower bound formula") {
  CHECK(f_positive_lower_bound(0.5) == doctest::Approx(2 * std::sin(0.5) - 0.5).epsilon(1e-15));
  CHECK(std::abs(f_positive_lower_bound(0.5) - 0.458853) < 5e-6);
  CHECK(f_positive_lower_bound(0.8) > 0.0);
  CHECK(f_positive_lower_bound(1e-6) > 0.0);
  CHECK(f_positive_lower_bound(1e-6) < 2e-6);
  CHECK_THROWS_AS(f_positive_lower_bound(0.9), DomainError);
  CHECK_THROWS_AS(f_positive_lower_bound(0.0), DomainError);
}

TEST_CASE("f tail minimum") {
  for (double eps : {0.1, 0.3, 0.5, 0.8}) {
    double grid_min = 1e300;
    for (int k = 0; k <= 200000; ++k) grid_min = std::min(grid_min, f_of(eps, std::min(pi, pi - eps + eps * k / 200000)));
    CHECK(f_tail_min(eps) <= grid_min + 1e-15);
    CHECK(f_tail_min(eps) > grid_min - 1e-9);
    CHECK(f_tail_min(eps) > 0.0);
  }
}

TEST_CASE("epsilon0") {
  const double e0 = epsilon0();
  CHECK(std::abs(std::sin(e0) - e0 * e0) < 1e-12);
  CHECK(e0 > 0.86);
  CHECK(e0 < 0.88);
  // 0.8767..., so the two-decimal value 0.87 is a truncation
  CHECK(std::floor(e0 * 100) == 87.0);
  CHECK(std::abs(e0 - oracle::sin_equals_square_root()) < 1e-12);
}

TEST_CASE("closed-form solution") {
  for (double eps : {0.1, 0.5, 0.8})
    for (double lambda : {0.0, 1.0, 10.0, 100.0}) {
      CHECK(v_closed_form(eps, lambda, 0.0) == 1.0);
      double worst = 0.0;
      for (int i = 0; i < 2000; ++i) {
        const double t = pi * i / 1999;
        worst = std::max(worst, std::abs(v_closed_form(eps, lambda, t) - oracle_v(eps, lambda, t)));
      }
      CHECK(worst < 1e-10 * std::max(1.0, lambda));
      const double tb = pi - eps;
      const double left = lambda * std::sin(tb) + std::cos(tb);
      const double dleft = lambda * std::cos(tb) - std::sin(tb);
      CHECK(std::abs(v_closed_form(eps, lambda, tb) - left) < 1e-10);
      CHECK(std::abs(dv_closed_form(eps, lambda, tb) - dleft) < 1e-10);
    }
  CHECK(v_closed_form(0.5, 0.0, pi / 4) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("lambda threshold") {
  const double L = find_lambda_threshold(0.5);
  CHECK(L > 0.0);
  CHECK(L <= 100.0);
  const auto q2 = build_theorem1_q2(0.5);
  const Interval I(0.0, pi);
  CHECK(count_zeros(IVP(q2, 0.0, 1.0, L + 1), I) == 0);
  CHECK(count_zeros(IVP(q2, 0.0, 1.0, std::max(L - 1, 0.0)), I) >= 1);
  CHECK(count_zeros(IVP(q2, 0.0, 1.0, L - 1e-8), I) >= 1);
  CHECK(count_zeros(IVP(q2, 0.0, 1.0, 0.0), I) >= 1);
  // lambda = 100 clears the tail: 100 f + g > 0
  CHECK(100 * f_tail_min(0.5) - g_tail_max(0.5) > 0.0);
  CHECK_THROWS_AS(find_lambda_threshold(0.9), DomainError);
}

TEST_CASE("zero-free predicate is monotone in lambda") {
  for (double eps : {0.1, 0.5, 0.8}) {
    const auto q2 = build_theorem1_q2(eps);
    const double cap = 4 * find_lambda_threshold(eps) + 10;
    bool seen = false;
    for (int k = 0; k <= 400; ++k) {
      const bool zf = count_zeros(IVP(q2, 0.0, 1.0, cap * k / 400), Interval(0.0, pi)) == 0;
      CHECK_FALSE((seen && !zf));
      seen = seen || zf;
    }
    CHECK(seen);
  }
}

TEST_CASE("verification report") {
  const Theorem1Report r = verify_theorem1(0.5, 100.0);
  CHECK(r.zero_free);
  CHECK(r.sct_fails);
  CHECK(r.min_v > 0.0);
  CHECK(r.zero_count == 0);
  CHECK(r.coefficient_discrepancy < 1e-9);
  CHECK(r.bound_applicable);
  CHECK(r.g_bound_holds);
  // min of v against a dense oracle grid
  double grid_min = 1e300;
  for (int i = 0; i <= 100000; ++i) grid_min = std::min(grid_min, oracle_v(0.5, 100.0, pi * i / 100000));
  CHECK(r.min_v <= grid_min + 1e-12);
  CHECK(r.min_v > grid_min - 1e-6);

  const Theorem1Report z = verify_theorem1(0.5, 0.0);
  CHECK_FALSE(z.zero_free);
  CHECK(z.sct_fails);
  CHECK(z.min_v < 0.0);

  const Theorem1Report big = verify_theorem1(0.99, 5.0);
  CHECK_FALSE(big.bound_applicable);
  CHECK(big.sct_fails == is_disconjugate(build_theorem1_q2(0.99), Interval(0.0, pi)));

  for (double eps : {0.1, 0.3, 0.5, 0.8}) CHECK(verify_theorem1(eps, find_lambda_threshold(eps) + 1).zero_free);
}
