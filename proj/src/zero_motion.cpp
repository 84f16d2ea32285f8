#include "sturmkit/zero_motion.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sturmkit/error.hpp"
#include "sturmkit/format.hpp"
#include "sturmkit/oscillate.hpp"

namespace sturmkit {

namespace {

IVP family(const PiecewisePotential& q, double lambda) { return IVP(q, q.a(), 1.0, lambda); }

std::vector<double> zeros_at(const PiecewisePotential& q, double lambda, double tol) {
  return locate_zeros(family(q, lambda), q.domain(), true, tol).zeros;
}

}  // namespace

double dt0_dlambda(const PiecewisePotential& q, double lambda, double t0, double tol) {
  const State v = propagate(family(q, lambda), t0, tol);
  if (std::abs(v.v) > 1e-10 * std::max(1.0, std::abs(v.dv)))
    throw DomainError("t0 = " + format_real(t0) + " is not a zero (v = " + format_real(v.v) + ")");
  if (std::abs(v.dv) < 1e-12) throw NumericError("degenerate zero: |v'(t0)| below 1e-12");
  const State w = propagate(variational_solution(q, q.a()), t0, tol);
  return -v.dv * w.v / (v.dv * v.dv);
}

ZeroTrack track_zero(const PiecewisePotential& q, double lambda_start, double lambda_end, std::size_t n,
                     std::size_t index, double tol) {
  if (!(lambda_start < lambda_end)) throw DomainError("track_zero needs lambda_start < lambda_end");
  if (n < 2) throw DomainError("track_zero needs at least two grid points");

  ZeroTrack track;
  const std::vector<double> first = zeros_at(q, lambda_start, tol);
  if (first.size() <= index) throw DomainError("the tracked zero does not exist at lambda_start");
  double lambda = lambda_start;
  double t = first[index];
  double slope = dt0_dlambda(q, lambda, t, tol);
  track.lambda_grid.push_back(lambda);
  track.t0.push_back(t);
  track.dt0_dlambda.push_back(slope);

  const double range = lambda_end - lambda_start;
  const double min_step = 1e-12 * std::max(1.0, range);

  for (std::size_t i = 1; i < n; ++i) {
    const double target = i + 1 == n ? lambda_end : lambda_start + range * static_cast<double>(i) / (n - 1);
    double step = target - lambda;
    while (lambda < target) {
      const double trial = std::min(target, lambda + step);
      const std::vector<double> zs = zeros_at(q, trial, tol);

      if (zs.size() <= index) {
        // v(a) = 1 bars zeros from entering at a and zeros move right with
        // λ, so the tracked zero can only have left through q.b().
        double lo = lambda;
        double hi = trial;
        while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          (count_zeros(family(q, mid), q.domain(), tol) > index ? lo : hi) = mid;
        }
        const std::vector<double> last = zeros_at(q, lo, tol);
        if (last.size() <= index || std::abs(last[index] - q.b()) > 1e-6)
          throw NumericError("tracked zero vanished inside the domain near lambda = " + format_real(lo));
        track.exit_lambda = 0.5 * (lo + hi);
        return track;
      }

      const double predicted = t + slope * (trial - lambda);
      std::size_t nearest = 0;
      for (std::size_t j = 1; j < zs.size(); ++j)
        if (std::abs(zs[j] - predicted) < std::abs(zs[nearest] - predicted)) nearest = j;
      bool ambiguous = nearest != index || !(zs[nearest] > t);
      for (std::size_t j = 0; j < zs.size() && !ambiguous; ++j)
        if (j != nearest && std::abs(std::abs(zs[j] - predicted) - std::abs(zs[nearest] - predicted)) < 1e-6)
          ambiguous = true;
      if (ambiguous) {
        step *= 0.5;
        if (step < min_step) throw NumericError("zero tracking stalled near lambda = " + format_real(lambda));
        continue;
      }
      lambda = trial;
      t = zs[nearest];
      slope = dt0_dlambda(q, lambda, t, tol);
      step = target - lambda;
    }
    track.lambda_grid.push_back(lambda);
    track.t0.push_back(t);
    track.dt0_dlambda.push_back(slope);
  }
  return track;
}

std::optional<double> check_identity(const PiecewisePotential& q, double lambda, double tol) {
  const std::vector<double> zs = zeros_at(q, lambda, tol);
  if (zs.empty()) return std::nullopt;
  const IVP v = family(q, lambda);
  const IVP w = variational_solution(q, q.a());
  double worst = 0.0;
  for (double z : zs) worst = std::max(worst, std::abs(propagate(v, z, tol).dv * propagate(w, z, tol).v + 1.0));
  return worst;
}

void write_zerotrack_csv(std::ostream& out, const ZeroTrack& track) {
  out << "lambda,t0,dt0_dlambda\n";
  for (std::size_t i = 0; i < track.lambda_grid.size(); ++i)
    out << format_real(track.lambda_grid[i]) << ',' << format_real(track.t0[i]) << ','
        << format_real(track.dt0_dlambda[i]) << '\n';
  out << "{\"exit_lambda\":" << (track.exit_lambda ? format_real(*track.exit_lambda) : std::string("null")) << "}\n";
}

}  // namespace sturmkit
