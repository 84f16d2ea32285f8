#include "sturmkit/propagate.hpp"

#include <cmath>
#include <ostream>

#include "dopri.hpp"
#include "segments.hpp"
#include "sturmkit/error.hpp"
#include "sturmkit/format.hpp"

namespace sturmkit {

namespace {

// sin(x)/x and sinh(x)/x with a series below |x| < 1e-4.
double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  return std::sin(x) / x;
}

double sinhc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0 + x * x * x * x / 120.0;
  return std::sinh(x) / x;
}

void check_range(const IVP& ivp, double t_end) {
  if (!ivp.q().domain().contains(t_end))
    throw DomainError("t_end = " + format_real(t_end) + " outside the potential's domain");
  if (t_end < ivp.t0()) throw DomainError("propagation runs forward only (t_end < t0)");
}

detail::Vec2 linear_rhs(const Piece& p, double t, const detail::Vec2& y) { return {y[1], -p.value(t) * y[0]}; }

}  // namespace

IVP::IVP(PiecewisePotential q, double t0, double v0, double dv0) : q_(std::move(q)), t0_(t0), v0_(v0), dv0_(dv0) {
  if (!q_.domain().contains(t0_)) throw DomainError("initial abscissa outside the potential's domain");
  if (v0_ == 0.0 && dv0_ == 0.0) throw DomainError("initial data (0, 0) gives the trivial solution");
  if (!std::isfinite(v0_) || !std::isfinite(dv0_)) throw DomainError("initial data must be finite");
}

TransferMatrix transfer_matrix(double level, double h) {
  if (level > 0.0) {
    const double w = std::sqrt(level);
    const double x = w * h;
    const double c = std::cos(x);
    return {c, h * sinc(x), -w * std::sin(x), c};
  }
  if (level < 0.0) {
    const double k = std::sqrt(-level);
    const double x = k * h;
    const double c = std::cosh(x);
    return {c, h * sinhc(x), k * std::sinh(x), c};
  }
  return {1.0, h, 0.0, 1.0};
}

State propagate_exact(const IVP& ivp, double t_end) {
  check_range(ivp, t_end);
  State s = ivp.initial();
  detail::for_each_segment(ivp.q(), ivp.t0(), t_end, [&](const Piece& p, double from, double to) {
    if (!p.is_constant())
      throw DomainError("exact propagation met a non-constant piece on [" + format_real(p.left) + ", " +
                        format_real(p.right) + "]");
    s = transfer_matrix(p.level(), to - from).apply(s, to - from);
    s.t = to;
  });
  s.t = t_end;
  return s;
}

Trajectory integrate_numeric(const IVP& ivp, double t_end, double tol, std::span<const double> output_times) {
  check_range(ivp, t_end);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  Trajectory traj;
  traj.method = Method::numeric;
  traj.samples.push_back(ivp.initial());

  std::vector<double> stops(output_times.begin(), output_times.end());
  std::sort(stops.begin(), stops.end());

  detail::Vec2 y{ivp.v0(), ivp.dv0()};
  detail::for_each_segment(ivp.q(), ivp.t0(), t_end, [&](const Piece& p, double from, double to) {
    auto first = std::upper_bound(stops.begin(), stops.end(), from);
    auto last = std::lower_bound(first, stops.end(), to);
    const auto stats = detail::integrate_dp45(
        [&p](double t, const detail::Vec2& u) { return linear_rhs(p, t, u); }, from, y, to, tol,
        std::span<const double>(first, last), [&](double t, const detail::Vec2& u) {
          traj.samples.push_back({t, u[0], u[1]});
        });
    traj.accuracy += stats.error_sum;
  });
  return traj;
}

State propagate(const IVP& ivp, double t_end, double tol) {
  check_range(ivp, t_end);
  State s = ivp.initial();
  detail::for_each_segment(ivp.q(), ivp.t0(), t_end, [&](const Piece& p, double from, double to) {
    if (p.is_constant()) {
      s = transfer_matrix(p.level(), to - from).apply(s, to - from);
    } else {
      detail::Vec2 y{s.v, s.dv};
      detail::integrate_dp45([&p](double t, const detail::Vec2& u) { return linear_rhs(p, t, u); }, from, y, to,
                             tol, {}, [](double, const detail::Vec2&) {});
      s = {to, y[0], y[1]};
    }
    s.t = to;
  });
  s.t = t_end;
  return s;
}

Trajectory sample_solution(const IVP& ivp, double t_end, std::size_t n, double tol) {
  check_range(ivp, t_end);
  if (n < 2) throw DomainError("need at least two samples");
  if (!(t_end > ivp.t0())) throw DomainError("sampling needs t_end > t0");
  std::vector<double> grid(n);
  for (std::size_t k = 0; k < n; ++k)
    grid[k] = ivp.t0() + (t_end - ivp.t0()) * static_cast<double>(k) / static_cast<double>(n - 1);
  grid.back() = t_end;

  Trajectory traj;
  if (ivp.q().constant_on(ivp.t0(), t_end)) {
    const auto pieces = ivp.q().pieces();
    std::size_t i = ivp.q().owner(ivp.t0());
    State base = ivp.initial();
    for (double t : grid) {
      while (i + 1 < pieces.size() && pieces[i].right <= t) {
        const double h = pieces[i].right - base.t;
        base = transfer_matrix(pieces[i].level(), h).apply(base, h);
        base.t = pieces[i].right;
        ++i;
      }
      State s = transfer_matrix(pieces[i].level(), t - base.t).apply(base, t - base.t);
      s.t = t;
      traj.samples.push_back(s);
    }
    return traj;
  }

  Trajectory dense = integrate_numeric(ivp, t_end, tol, grid);
  traj.method = Method::numeric;
  traj.accuracy = dense.accuracy;
  std::size_t k = 0;
  for (const State& s : dense.samples) {
    while (k < grid.size() && grid[k] < s.t) ++k;
    if (k < grid.size() && grid[k] == s.t) traj.samples.push_back(s);
  }
  return traj;
}

IVP variational_solution(const PiecewisePotential& q, double t0) { return IVP(q, t0, 0.0, 1.0); }

double wronskian(const State& s1, const State& s2) {
  if (s1.t != s2.t) throw DomainError("wronskian of states at different abscissae");
  return s1.v * s2.dv - s1.dv * s2.v;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,v,dv\n";
  for (const State& s : traj.samples) out << format_real(s.t) << ',' << format_real(s.v) << ',' << format_real(s.dv) << '\n';
}

}  // namespace sturmkit
