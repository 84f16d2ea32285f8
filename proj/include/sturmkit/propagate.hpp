#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "sturmkit/potential.hpp"

namespace sturmkit {

inline constexpr double kDefaultTol = 1e-10;

/// Instantaneous solution value: (t, v(t), v'(t)).
struct State {
  double t;
  double v;
  double dv;
};

/// v'' + q(t) v = 0, v(t0) = v0, v'(t0) = dv0 with (v0, dv0) ≠ (0, 0).
class IVP {
 public:
  IVP(PiecewisePotential q, double t0, double v0, double dv0);

  const PiecewisePotential& q() const { return q_; }
  double t0() const { return t0_; }
  double v0() const { return v0_; }
  double dv0() const { return dv0_; }
  State initial() const { return {t0_, v0_, dv0_}; }

 private:
  PiecewisePotential q_;
  double t0_;
  double v0_;
  double dv0_;
};

enum class Method { exact, numeric };

struct Trajectory {
  std::vector<State> samples;  // strictly increasing t
  Method method = Method::exact;
  double accuracy = 0.0;  // summed local error estimates; 0 for exact propagation
};

/// Maps (v, v') across a step h of constant level c. det = 1.
struct TransferMatrix {
  double m00, m01, m10, m11;

  double determinant() const { return m00 * m11 - m01 * m10; }
  State apply(const State& s, double h) const {
    return {s.t + h, m00 * s.v + m01 * s.dv, m10 * s.v + m11 * s.dv};
  }
};

TransferMatrix transfer_matrix(double level, double h);

/// Composes transfer matrices piece by piece. Every piece overlapping
/// [t0, t_end] must be constant (DomainError otherwise).
State propagate_exact(const IVP& ivp, double t_end);

/// Adaptive Dormand–Prince 5(4) integration, piece by piece so breakpoints
/// are always step boundaries. Each abscissa of `output_times` inside
/// [t0, t_end] also becomes a step boundary and appears in the samples.
Trajectory integrate_numeric(const IVP& ivp, double t_end, double tol, std::span<const double> output_times = {});

/// Exact on constant pieces, numeric on expression pieces.
State propagate(const IVP& ivp, double t_end, double tol = kDefaultTol);

/// n ≥ 2 equispaced samples on [t0, t_end]; exact whenever all relevant
/// pieces are constant.
Trajectory sample_solution(const IVP& ivp, double t_end, std::size_t n, double tol = kDefaultTol);

/// IVP of w = ∂v/∂λ for the family v(t0) = 1, v'(t0) = λ: w(t0) = 0, w'(t0) = 1.
IVP variational_solution(const PiecewisePotential& q, double t0);

/// s1.v·s2.dv − s1.dv·s2.v; throws DomainError if the abscissae differ.
double wronskian(const State& s1, const State& s2);

/// CSV with header `t,v,dv`, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace sturmkit
