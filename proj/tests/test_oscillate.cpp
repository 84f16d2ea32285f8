#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sturmkit/error.hpp"
#include "sturmkit/oscillate.hpp"
#include "sturmkit/random_potential.hpp"
#include "sturmkit/theorem1.hpp"

using namespace sturmkit;
using std::numbers::pi;

namespace {

PiecewisePotential level(double c, double a = 0.0, double b = pi) { return PiecewisePotential::constant(c, a, b); }

std::vector<double> oracle_zeros(const PiecewisePotential& q, double t0, double v0, double dv0, const Interval& I) {
  std::vector<oracle::Step> steps;
  for (const Piece& p : q.pieces()) steps.push_back({p.left, p.right, p.level()});
  auto f = [&](double t) { return oracle::step_solution(steps, t0, v0, dv0, t).first; };
  return oracle::sign_change_zeros(f, I.a, I.b, 20000, 1e-12);
}

}  // namespace

TEST_CASE("count zeros on constant potentials") {
  CHECK(count_zeros(IVP(level(1.0, 0.0, 2 * pi), 0.0, 0.0, 1.0), Interval(0.0, 2 * pi)) == 3);
  CHECK(count_zeros(IVP(level(36.0), 0.0, 1.0, 0.0), Interval(0.0, pi)) == 6);
  CHECK(count_zeros(IVP(level(4.0), 0.0, 0.0, 1.0), Interval(0.0, pi)) == 3);
  CHECK(count_zeros(IVP(level(0.0), 0.0, 1.0, -1.0), Interval(0.0, pi)) == 1);
  CHECK(count_zeros(IVP(level(0.0), 0.0, 1.0, 1.0), Interval(0.0, pi)) == 0);
  CHECK(count_zeros(IVP(level(-1.0), 0.0, 1.0, -1.0), Interval(0.0, pi)) == 0);
  CHECK(count_zeros(IVP(level(-1.0), 0.0, 1.0, -2.0), Interval(0.0, pi)) == 1);
  CHECK(count_zeros(IVP(level(-1.0), 0.0, 0.0, 1.0), Interval(0.0, pi)) == 1);
}

TEST_CASE("count zeros above the shooting threshold") {
  const double lambda = find_lambda_threshold(0.5) + 1.0;
  CHECK(count_zeros(IVP(build_theorem1_q2(0.5), 0.0, 1.0, lambda), Interval(0.0, pi)) == 0);
}

TEST_CASE("locate zeros") {
  const ZeroSet s = locate_zeros(IVP(level(1.0), 0.0, 0.0, 1.0), Interval(0.0, pi));
  REQUIRE(s.size() == 2);
  CHECK(std::abs(s.zeros[0]) < 1e-12);
  CHECK(std::abs(s.zeros[1] - pi) < 1e-12);

  const ZeroSet d = locate_zeros(IVP(level(36.0), 0.0, 1.0, 0.0), Interval(0.0, pi));
  REQUIRE(d.size() == 6);
  const double delta = 1.0 / 6;
  CHECK(std::abs(d.zeros[0] - pi * delta / 2) < 1e-12);
  CHECK(std::abs(d.zeros[1] - 3 * pi * delta / 2) < 1e-12);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(d.zeros[k] - (pi / 12 + k * pi / 6)) < 1e-12);

  const ZeroSet f = locate_zeros(IVP(level(4.0), 0.0, 0.0, 1.0), Interval(0.0, pi));
  REQUIRE(f.size() == 3);
  CHECK(std::abs(f.zeros[1] - pi / 2) < 1e-12);
  CHECK(std::abs(f.zeros[2] - pi) < 1e-12);

  const ZeroSet open = locate_zeros(IVP(level(4.0), 0.0, 0.0, 1.0), Interval(0.0, pi), false);
  REQUIRE(open.size() == 1);
  CHECK_FALSE(open.closed);
}

TEST_CASE("located zeros agree with a sign-change oracle") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 25; ++i) {
    const auto q = random_step_potential(rng, 0.0, pi, 4, -1.0, 40.0);
    const double theta = uniform(rng, 0.0, pi);
    const IVP ivp = direction_ivp(q, 0.0, theta);
    const double a = uniform(rng, 0.0, 1.0), b = uniform(rng, 2.0, pi);
    const ZeroSet zs = locate_zeros(ivp, Interval(a, b));
    const auto ref = oracle_zeros(q, 0.0, std::cos(theta), std::sin(theta), Interval(a, b));
    REQUIRE(zs.size() == ref.size());
    CHECK(count_zeros(ivp, Interval(a, b)) == zs.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(std::abs(zs.zeros[k] - ref[k]) < 1e-10);
  }
}

TEST_CASE("zeros on expression potentials") {
  const PiecewisePotential q({Piece{0.0, 2 * pi, Expression::parse("4 + 0*t")}});
  const ZeroSet zs = locate_zeros(IVP(q, 0.0, 0.0, 1.0), Interval(0.0, 6.0));
  REQUIRE(zs.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(zs.zeros[k] - k * pi / 2) < 1e-9);

  // Airy-type: brute force sign changes of fine RK4.
  const PiecewisePotential airy({Piece{0.0, 6.0, Expression::parse("4*t")}});
  auto f = [](double t) {
    return oracle::rk4([](double s) { return 4 * s; }, {}, 0.0, 1.0, 0.0, t, 1e-3).first;
  };
  const auto ref = oracle::sign_change_zeros(f, 0.0, 6.0, 600);
  const ZeroSet az = locate_zeros(IVP(airy, 0.0, 1.0, 0.0), Interval(0.0, 6.0));
  REQUIRE(az.size() == ref.size());
  for (std::size_t k = 0; k < ref.size(); ++k) CHECK(std::abs(az.zeros[k] - ref[k]) < 1e-8);
}

TEST_CASE("prufer state") {
  const auto one = level(1.0);
  const PruferState p = prufer_state(IVP(one, 0.0, 0.0, 1.0), 2.5);
  CHECK(p.theta == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(p.logr == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  const PruferState e = prufer_state(IVP(one, 0.0, 0.0, 1.0), pi);
  CHECK(std::abs(e.theta - pi) < 1e-12);
  const PruferState q = prufer_state(IVP(level(4.0), 0.0, 0.0, 1.0), pi);
  CHECK(std::sin(q.theta) * std::exp(q.logr) == doctest::Approx(0.0).scale(1.0));
  CHECK(std::abs(q.theta - 2 * pi) < 1e-12);
}

TEST_CASE("first conjugate point") {
  const auto c = first_conjugate_point(level(1.0), 0.0, pi);
  REQUIRE(c);
  CHECK(std::abs(*c - pi) < 1e-12);
  CHECK_FALSE(first_conjugate_point(level(0.25), 0.0, pi));
  CHECK_FALSE(first_conjugate_point(build_theorem1_q2(0.5), 0.0, pi));
  const auto f = first_conjugate_point(level(4.0), 0.0, pi);
  REQUIRE(f);
  CHECK(std::abs(*f - pi / 2) < 1e-12);
  CHECK_THROWS_AS(first_conjugate_point(level(1.0), 0.0, 4.0), DomainError);
}

TEST_CASE("disconjugacy") {
  CHECK_FALSE(is_disconjugate(level(1.0), Interval(0.0, pi)));
  CHECK(is_disconjugate(level(1.0), Interval(0.0, pi / 2)));
  CHECK(is_disconjugate(level(0.0625), Interval(0.0, pi)));
  CHECK(is_disconjugate(level(-3.0), Interval(0.0, pi)));
  CHECK(is_disconjugate(build_theorem1_q2(0.5), Interval(0.0, pi)));
}

TEST_CASE("zero-free directions") {
  const auto w = zero_free_direction(level(1.0), Interval(0.0, pi / 2));
  REQUIRE(w);
  CHECK(count_zeros(direction_ivp(level(1.0), 0.0, *w), Interval(0.0, pi / 2)) == 0);
  CHECK_FALSE(zero_free_direction(level(1.0), Interval(0.0, pi)));

  for (double eps : {0.05, 0.1, 0.5, 0.8}) {
    const auto q = build_theorem1_q2(eps);
    const auto t = zero_free_direction(q, Interval(0.0, pi));
    REQUIRE(t);
    CHECK(*t >= 0.0);
    CHECK(*t < pi);
    CHECK(count_zeros(direction_ivp(q, 0.0, *t), Interval(0.0, pi)) == 0);
  }
  // disconjugate but with no zero-free direction among the 720 sampled ones
  const auto q = level(1.0 - 1e-7);
  const Interval I(0.0, pi);
  REQUIRE(is_disconjugate(q, I));
  const auto counts = sweep_zero_counts(q, I);
  CHECK(std::find(counts.begin(), counts.end(), 0u) == counts.end());
  const auto t = zero_free_direction(q, I);
  REQUIRE(t);
  CHECK(count_zeros(direction_ivp(q, 0.0, *t), I) == 0);
}

TEST_CASE("direction sweep") {
  const auto counts = sweep_zero_counts(level(1.0), Interval(0.0, pi));
  REQUIRE(counts.size() == kSweepDirections);
  CHECK(counts[0] == 1);    // cos
  CHECK(counts[360] == 2);  // sin
  for (std::size_t c : counts) CHECK(c >= 1);
  const auto open = sweep_zero_counts(level(1.0), Interval(0.0, pi), 720, false);
  CHECK(open[360] == 0);
  CHECK(open[0] == 1);
}

TEST_CASE("interlacing") {
  CHECK(check_interlacing(level(1.0, 0.0, 2 * pi), Interval(0.0, 2 * pi)));
  CHECK(check_interlacing(level(36.0), Interval(0.0, pi)));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto q = random_step_potential(rng, 0.0, 2 * pi, 3, 0.5, 4.0);
    CHECK(check_interlacing(q, q.domain()));
  }
}

TEST_CASE("zero set export") {
  const ZeroSet zs = locate_zeros(IVP(level(4.0), 0.0, 0.0, 1.0), Interval(0.0, pi));
  std::ostringstream out;
  write_zeroset_csv(out, zs);
  CHECK(out.str().rfind("index,t\n0,0\n1,1.5707963267948966\n", 0) == 0);
}
