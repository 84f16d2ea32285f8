#include "sturmkit/sct.hpp"

#include <algorithm>
#include <numbers>

#include "sturmkit/format.hpp"
#include "sturmkit/oscillate.hpp"

namespace sturmkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kComparisonGrid = 10000;

// Calls cmp(x1, x2) on every certified sample pair; returns false on the
// first failure.
template <class Cmp>
bool compare_pointwise(const PiecewisePotential& q1, const PiecewisePotential& q2, const Interval& I, Cmp cmp) {
  if (!q1.domain().contains(I) || !q2.domain().contains(I))
    throw DomainError("comparison interval outside a potential's domain");
  std::vector<double> cuts{I.a, I.b};
  for (double x : q1.breakpoints())
    if (I.a < x && x < I.b) cuts.push_back(x);
  for (double x : q2.breakpoints())
    if (I.a < x && x < I.b) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double s = cuts[i];
    const double e = cuts[i + 1];
    const Piece& p1 = q1.pieces()[q1.owner(s)];
    const Piece& p2 = q2.pieces()[q2.owner(s)];
    if (p1.is_constant() && p2.is_constant()) {
      if (!cmp(p1.level(), p2.level())) return false;
      continue;
    }
    if (!cmp(p1.value(s), p2.value(s))) return false;
    const bool last = i + 2 == cuts.size();
    for (int k = 0; k <= kComparisonGrid; ++k) {
      const double t = I.a + I.length() * k / kComparisonGrid;
      if (t < s || t > e || (t == e && !last)) continue;
      if (!cmp(p1.value(t), p2.value(t))) return false;
    }
  }
  // I.b may be an interior breakpoint owned by the next piece.
  return cmp(q1(I.b), q2(I.b));
}

std::size_t min_of(const std::vector<std::size_t>& v) { return *std::min_element(v.begin(), v.end()); }

}  // namespace

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    case Outcome::not_applicable: return "not-applicable";
  }
  return "?";
}

bool pointwise_le(const PiecewisePotential& q1, const PiecewisePotential& q2, const Interval& I) {
  return compare_pointwise(q1, q2, I, [](double x1, double x2) { return x1 <= x2; });
}

bool pointwise_gt(const PiecewisePotential& q1, const PiecewisePotential& q2, const Interval& I) {
  return compare_pointwise(q1, q2, I, [](double x1, double x2) { return x1 > x2; });
}

std::optional<std::pair<double, double>> consecutive_zeros(const PiecewisePotential& q1, double tol) {
  if (auto b = first_conjugate_point(q1, q1.a(), q1.b(), tol)) return std::pair{q1.a(), *b};
  return std::nullopt;
}

SctVerdict sct_verdict(const PiecewisePotential& q1, const PiecewisePotential& q2, std::optional<Interval> interval,
                       double tol) {
  if (q1.domain() != q2.domain()) throw DomainError("q1 and q2 must share the same domain");
  SctVerdict verdict;
  if (interval) {
    if (!q1.domain().contains(*interval)) throw DomainError("verdict interval outside the domain");
    verdict.interval = *interval;
    if (auto c = first_conjugate_point(q1, interval->a, interval->b, tol)) verdict.u_zeros = std::pair{interval->a, *c};
  } else {
    verdict.u_zeros = consecutive_zeros(q1, tol);
    verdict.interval = verdict.u_zeros ? Interval(verdict.u_zeros->first, verdict.u_zeros->second) : q1.domain();
  }
  const Interval I = verdict.interval;
  verdict.disconjugate = is_disconjugate(q2, I, tol);
  if (!verdict.u_zeros) {
    verdict.outcome = Outcome::not_applicable;
    return verdict;
  }

  const auto counts = sweep_zero_counts(q2, I, kSweepDirections, true, tol);
  verdict.diagnostics.sweep_directions = counts.size();
  verdict.diagnostics.zero_free_in_sweep =
      static_cast<std::size_t>(std::count(counts.begin(), counts.end(), std::size_t{0}));

  if (verdict.disconjugate) {
    verdict.outcome = Outcome::fails;
    verdict.witness_theta = zero_free_direction(q2, I, tol);
    return verdict;
  }
  verdict.outcome = Outcome::holds;
  verdict.min_zero_count = min_of(counts);
  verdict.diagnostics.sweep_consistent = *verdict.min_zero_count >= 1;
  verdict.diagnostics.zeros_interior = min_of(sweep_zero_counts(q2, I, kSweepDirections, false, tol)) >= 1;
  return verdict;
}

bool check_lemma2(const PiecewisePotential& q1, const PiecewisePotential& q2, const Interval& I, double tol) {
  const ZeroSet u = locate_zeros(IVP(q1, q1.a(), 0.0, 1.0), I, false, tol);
  if (!u.zeros.empty())
    throw Lemma2PreconditionError(Lemma2PreconditionError::Reason::u_has_interior_zero,
                                  "u has an interior zero at t = " + format_real(u.zeros.front()));
  if (!pointwise_gt(q1, q2, I))
    throw Lemma2PreconditionError(Lemma2PreconditionError::Reason::not_strictly_greater,
                                  "q1 > q2 does not hold on the whole interval");
  const auto counts = sweep_zero_counts(q2, I, kSweepDirections, true, tol);
  return std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c <= 1; });
}

ConverseReport converse_counterexample(double epsilon, double tol) {
  auto [delta, q2] = build_delta_construction(epsilon);
  const auto q1 = PiecewisePotential::constant(1.0, 0.0, kPi);
  const Interval domain(0.0, kPi);
  const Interval J(0.0, epsilon);

  ConverseReport r{.epsilon = epsilon,
                   .J = J,
                   .delta = delta,
                   .q2_level = q2.pieces().front().level(),
                   .cos_zeros = {},
                   .expected_first = kPi * delta / 2,
                   .expected_second = 3 * kPi * delta / 2,
                   .zeros_in_J = false,
                   .q1_le_q2 = pointwise_le(q1, q2, domain),
                   .verdict = sct_verdict(q1, q2, std::nullopt, tol),
                   .min_open_zero_count = min_of(sweep_zero_counts(q2, domain, kSweepDirections, false, tol)),
                   .M = 0.0,
                   .large_M_verdict = {},
                   .large_M_min_zeros_in_J = 0};

  const ZeroSet zs = locate_zeros(IVP(q2, 0.0, 1.0, 0.0), domain, true, tol);
  r.cos_zeros.assign(zs.zeros.begin(), zs.zeros.begin() + std::min<std::size_t>(2, zs.size()));
  r.zeros_in_J = r.cos_zeros.size() == 2 && r.cos_zeros[1] < epsilon;

  const auto large = build_large_M_construction(q1, J);
  r.M = large.M;
  r.large_M_verdict = sct_verdict(q1, large.q2, std::nullopt, tol);
  r.large_M_min_zeros_in_J = min_of(sweep_zero_counts(large.q2, J, kSweepDirections, true, tol));
  return r;
}

}  // namespace sturmkit
