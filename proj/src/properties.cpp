#include "sturmkit/properties.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "sturmkit/oscillate.hpp"
#include "sturmkit/potential.hpp"
#include "sturmkit/propagate.hpp"
#include "sturmkit/random_potential.hpp"
#include "sturmkit/sct.hpp"
#include "sturmkit/theorem1.hpp"

namespace sturmkit {

namespace {

constexpr double kPi = std::numbers::pi;

using Case = std::function<bool(std::mt19937_64&)>;

bool theorem2_equivalence(std::mt19937_64& rng) {
  const auto [q1, q2] = random_mixed_pair(rng);
  const SctVerdict v = sct_verdict(q1, q2);
  if (v.outcome == Outcome::not_applicable) return !consecutive_zeros(q1).has_value();
  if (v.outcome == Outcome::fails) {
    // Zero-free witness ⇒ disconjugate.
    return v.disconjugate && v.witness_theta &&
           count_zeros(direction_ivp(q2, v.interval.a, *v.witness_theta), v.interval) == 0;
  }
  // Two zeros of one solution ⇒ not disconjugate.
  return !v.disconjugate && count_zeros(IVP(q2, v.interval.a, 0.0, 1.0), v.interval) >= 2;
}

bool classic_sct(std::mt19937_64& rng) {
  const auto [q1, q2] = random_ordered_pair(rng);
  if (!pointwise_le(q1, q2, q1.domain())) return false;
  return sct_verdict(q1, q2).outcome == Outcome::holds;
}

bool strict_gap(std::mt19937_64& rng) {
  const auto [q1, q2] = random_strict_gap_pair(rng);
  return sct_verdict(q1, q2).outcome == Outcome::fails;
}

bool interlacing(std::mt19937_64& rng) {
  const auto q = random_step_potential(rng, 0.0, 2 * kPi, 3, 0.5, 4.0);
  return check_interlacing(q, q.domain());
}

bool scaling_invariance(std::mt19937_64& rng) {
  const auto q = random_step_potential(rng, 0.0, kPi, 4, -0.5, 9.0);
  const double theta = uniform(rng, 0.0, kPi);
  const double v0 = std::cos(theta), dv0 = std::sin(theta);
  const std::size_t base = count_zeros(IVP(q, 0.0, v0, dv0), q.domain());
  for (double c : {-2.0, 0.5, 10.0})
    if (count_zeros(IVP(q, 0.0, c * v0, c * dv0), q.domain()) != base) return false;
  return true;
}

bool count_matches_locate(std::mt19937_64& rng) {
  const auto q = random_step_potential(rng, 0.0, kPi, 4, -1.0, 25.0);
  const IVP ivp = direction_ivp(q, 0.0, uniform(rng, 0.0, kPi));
  return count_zeros(ivp, q.domain()) == locate_zeros(ivp, q.domain()).size();
}

bool disconjugacy_inclusion(std::mt19937_64& rng) {
  const auto q = random_step_potential(rng, 0.0, kPi, 3, 0.05, 1.5);
  if (!is_disconjugate(q, q.domain())) return true;
  const double a = uniform(rng, 0.0, kPi / 2);
  const double b = uniform(rng, a + 0.1, kPi);
  return is_disconjugate(q, Interval(a, b));
}

bool rescale_preserves_zeros(std::mt19937_64& rng) {
  const double a = uniform(rng, -3.0, 3.0);
  const double b = a + uniform(rng, 0.5, 8.0);
  const auto q = random_step_potential(rng, a, b, 3, 0.0, 6.0);
  const auto r = rescale_to_standard(q);
  const double theta = uniform(rng, 0.0, kPi);
  const double factor = (b - a) / kPi;
  return count_zeros(IVP(q, a, std::cos(theta), std::sin(theta)), q.domain()) ==
         count_zeros(IVP(r, 0.0, std::cos(theta), factor * std::sin(theta)), r.domain());
}

bool linearity(std::mt19937_64& rng) {
  const auto q = random_step_potential(rng, 0.0, kPi, 4, -1.0, 9.0);
  const double alpha = uniform(rng, -2.0, 2.0), beta = uniform(rng, -2.0, 2.0);
  const double v1 = uniform(rng, -1.0, 1.0), d1 = uniform(rng, -1.0, 1.0);
  const double v2 = uniform(rng, -1.0, 1.0), d2 = uniform(rng, -1.0, 1.0);
  const double t = uniform(rng, 0.0, kPi);
  const State s1 = propagate_exact(IVP(q, 0.0, v1, d1), t);
  const State s2 = propagate_exact(IVP(q, 0.0, v2, d2), t);
  const State s = propagate_exact(IVP(q, 0.0, alpha * v1 + beta * v2, alpha * d1 + beta * d2), t);
  return std::abs(s.v - (alpha * s1.v + beta * s2.v)) < 1e-12 && std::abs(s.dv - (alpha * s1.dv + beta * s2.dv)) < 1e-12;
}

bool wronskian_constancy(std::mt19937_64& rng) {
  const auto q = random_step_potential(rng, 0.0, kPi, 4, 0.0, 9.0);
  const IVP u(q, 0.0, uniform(rng, -1.0, 1.0), 1.0);
  const IVP w(q, 0.0, 1.0, uniform(rng, -1.0, 1.0));
  const double w0 = wronskian(u.initial(), w.initial());
  for (int k = 1; k <= 50; ++k) {
    const double t = kPi * k / 50;
    if (std::abs(wronskian(propagate_exact(u, t), propagate_exact(w, t)) - w0) > 1e-12) return false;
  }
  return true;
}

bool numeric_matches_exact(std::mt19937_64& rng) {
  const auto q = random_step_potential(rng, 0.0, kPi, 3, 0.0, 9.0);
  const IVP ivp = direction_ivp(q, 0.0, uniform(rng, 0.0, kPi));
  const State exact = propagate_exact(ivp, kPi);
  const Trajectory num = integrate_numeric(ivp, kPi, 1e-10);
  const State& last = num.samples.back();
  return std::abs(last.v - exact.v) < 1e-8 && std::abs(last.dv - exact.dv) < 1e-8;
}

bool spec_round_trip(std::mt19937_64& rng) {
  const auto q = random_step_potential(rng, uniform(rng, -2.0, 0.0), uniform(rng, 1.0, 5.0), 4, -3.0, 3.0);
  return parse_potential_spec(serialize_potential_spec(q)) == q;
}

bool lambda_monotonicity(std::mt19937_64& rng) {
  const double eps = uniform(rng, 0.2, 0.8);
  const auto q2 = build_theorem1_q2(eps);
  const double lambda_max = 4.0 * find_lambda_threshold(eps) + 4.0;
  bool seen_zero_free = false;
  for (int k = 0; k <= 60; ++k) {
    const bool zero_free = count_zeros(IVP(q2, 0.0, 1.0, lambda_max * k / 60), Interval(0.0, kPi)) == 0;
    if (seen_zero_free && !zero_free) return false;
    seen_zero_free = seen_zero_free || zero_free;
  }
  return seen_zero_free;
}

}  // namespace

std::vector<PropertyResult> run_property_sweep(std::uint64_t seed, std::size_t count) {
  const std::vector<std::pair<const char*, Case>> suites{
      {"theorem2_equivalence", theorem2_equivalence},
      {"classic_sct", classic_sct},
      {"strict_gap_fails", strict_gap},
      {"interlacing", interlacing},
      {"scaling_invariance", scaling_invariance},
      {"count_matches_locate", count_matches_locate},
      {"disconjugacy_inclusion", disconjugacy_inclusion},
      {"rescale_preserves_zeros", rescale_preserves_zeros},
      {"linearity", linearity},
      {"wronskian_constancy", wronskian_constancy},
      {"numeric_matches_exact", numeric_matches_exact},
      {"spec_round_trip", spec_round_trip},
      {"lambda_monotonicity", lambda_monotonicity},
  };
  std::vector<PropertyResult> results;
  for (std::size_t s = 0; s < suites.size(); ++s) {
    PropertyResult r{suites[s].first};
    std::mt19937_64 rng(seed * 1000003ULL + s);
    for (std::size_t i = 0; i < count; ++i) {
      bool ok = false;
      try {
        ok = suites[s].second(rng);
      } catch (const std::exception&) {
        ok = false;
      }
      ++(ok ? r.passed : r.failed);
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace sturmkit
