#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sturmkit/potential.hpp"
#include "sturmkit/propagate.hpp"

namespace sturmkit {

/// Zeros of a solution are tested against |sin θ| below this at the ends of
/// an interval; interior zeros are exact θ-crossings.
inline constexpr double kEndpointZeroTol = 1e-12;
inline constexpr std::size_t kSweepDirections = 720;

/// Polar form v = r sin θ, v' = r cos θ with θ the continuous lift.
struct PruferState {
  double t;
  double theta;
  double logr;
};

struct ZeroSet {
  std::vector<double> zeros;  // strictly increasing
  Interval interval;
  bool closed = true;  // false: zeros at the interval ends are excluded

  std::size_t size() const { return zeros.size(); }
};

/// Zeros in the closed interval, counted as upward crossings of θ through
/// multiples of π. Requires ivp.t0() ≤ interval.a and interval ⊆ domain.
std::size_t count_zeros(const IVP& ivp, const Interval& interval, double tol = kDefaultTol);

/// Each zero is bracketed by its θ-crossing and refined by bisection.
/// With closed = false, zeros at either end of the interval are dropped.
ZeroSet locate_zeros(const IVP& ivp, const Interval& interval, bool closed = true, double tol = kDefaultTol);

/// θ lifted continuously from atan2(v0, v0') at t0.
PruferState prufer_state(const IVP& ivp, double t, double tol = kDefaultTol);

/// First zero in (a, b] of the solution with y(a) = 0, y'(a) = 1.
std::optional<double> first_conjugate_point(const PiecewisePotential& q, double a, double b,
                                            double tol = kDefaultTol);

/// Disconjugate on the compact interval iff it holds no conjugate point of
/// its left end.
bool is_disconjugate(const PiecewisePotential& q, const Interval& interval, double tol = kDefaultTol);

/// Solution with v(a) = cos θ, v'(a) = sin θ.
IVP direction_ivp(const PiecewisePotential& q, double a, double theta);

/// Zero counts (closed interval) for the directions θ_j = jπ/n, j < n.
std::vector<std::size_t> sweep_zero_counts(const PiecewisePotential& q, const Interval& interval,
                                           std::size_t n = kSweepDirections, bool closed = true,
                                           double tol = kDefaultTol);

/// θ* ∈ [0, π) whose solution has no zero on the interval, or nullopt when
/// the equation is not disconjugate there. Throws InternalError if the
/// equation is disconjugate but no witness can be produced.
std::optional<double> zero_free_direction(const PiecewisePotential& q, const Interval& interval,
                                          double tol = kDefaultTol);

/// Sturm separation for the basis y1 = (1, 0), y2 = (0, 1) at interval.a:
/// strictly between consecutive zeros of either lies exactly one zero of the
/// other.
bool check_interlacing(const PiecewisePotential& q, const Interval& interval, double tol = kDefaultTol);

/// CSV `index,t`.
void write_zeroset_csv(std::ostream& out, const ZeroSet& zs);

}  // namespace sturmkit
