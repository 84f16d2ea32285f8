#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sturmkit/error.hpp"
#include "sturmkit/potential.hpp"
#include "sturmkit/propagate.hpp"

namespace sturmkit {

enum class Outcome { holds, fails, not_applicable };

const char* to_string(Outcome o);

struct SctDiagnostics {
  std::size_t sweep_directions = 0;
  /// Directions of the sweep whose solution has no zero on the interval.
  std::size_t zero_free_in_sweep = 0;
  /// False when the sweep contradicts the disconjugacy test (a zero-free
  /// direction while the verdict is holds).
  bool sweep_consistent = true;
  /// For holds: every swept solution also vanishes in the open interval.
  std::optional<bool> zeros_interior;
};

struct SctVerdict {
  Outcome outcome = Outcome::not_applicable;
  Interval interval{0.0, 1.0};
  std::optional<std::pair<double, double>> u_zeros;
  std::optional<double> witness_theta;          // fails: zero-free direction
  std::optional<std::size_t> min_zero_count;    // holds: min over the sweep, ≥ 1
  bool disconjugate = false;                    // of q2 on the interval
  SctDiagnostics diagnostics;
};

/// (a, b): the first two zeros of u with u(q1.a) = 0, u'(q1.a) = 1, or
/// nullopt when u has fewer than two zeros on the domain.
std::optional<std::pair<double, double>> consecutive_zeros(const PiecewisePotential& q1, double tol = kDefaultTol);

/// Holds iff every solution of v'' + q2 v = 0 vanishes on the interval,
/// decided as: fails ⟺ q2 disconjugate there. Without an interval, the
/// consecutive zeros of q1 define it.
SctVerdict sct_verdict(const PiecewisePotential& q1, const PiecewisePotential& q2,
                       std::optional<Interval> interval = std::nullopt, double tol = kDefaultTol);

/// Pointwise comparisons on I: exact per constant/constant segment (between
/// the merged breakpoints of both potentials), grid-based (10^4 points plus
/// breakpoints) elsewhere.
bool pointwise_le(const PiecewisePotential& q1, const PiecewisePotential& q2, const Interval& I);
bool pointwise_gt(const PiecewisePotential& q1, const PiecewisePotential& q2, const Interval& I);

class Lemma2PreconditionError : public DomainError {
 public:
  enum class Reason { u_has_interior_zero, not_strictly_greater };
  Lemma2PreconditionError(Reason reason, const std::string& what) : DomainError(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// Every solution in a 720-direction sweep has at most one zero in I.
/// Requires q1 > q2 on I and no interior zero of u in I.
bool check_lemma2(const PiecewisePotential& q1, const PiecewisePotential& q2, const Interval& I,
                  double tol = kDefaultTol);

struct ConverseReport {
  double epsilon;
  Interval J;
  double delta;
  double q2_level;                    // 1/δ²
  std::vector<double> cos_zeros;      // first two zeros of cos(t/δ)
  double expected_first;              // πδ/2
  double expected_second;             // 3πδ/2
  bool zeros_in_J;
  bool q1_le_q2;
  SctVerdict verdict;
  std::size_t min_open_zero_count;    // min over the sweep of zeros in (0, π)
  double M;
  SctVerdict large_M_verdict;
  std::size_t large_M_min_zeros_in_J; // min over the sweep of zeros in J
};

/// q1 ≡ 1 on [0, π] with J = [0, ε]: the constant 1/δ² construction and the
/// large-M construction both make SCT hold.
ConverseReport converse_counterexample(double epsilon, double tol = kDefaultTol);

}  // namespace sturmkit
