#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sturmkit/potential.hpp"
#include "sturmkit/propagate.hpp"

namespace sturmkit {

// All quantities refer to the family v(a) = 1, v'(a) = λ with a = q.a().

struct ZeroTrack {
  std::vector<double> lambda_grid;
  std::vector<double> t0;
  std::vector<double> dt0_dlambda;
  std::optional<double> exit_lambda;  // where the zero leaves through q.b()
};

/// dt0/dλ = −v'(t0) v_λ(t0) / v'(t0)², with v_λ from the variational IVP.
/// Throws DomainError if t0 is not a zero of v(·, λ) (|v| > 1e−10·max(1, |v'|)).
double dt0_dlambda(const PiecewisePotential& q, double lambda, double t0, double tol = kDefaultTol);

/// Follows zero number `index` on an n-point λ grid by nearest-zero matching
/// against a first-order prediction, halving the λ step when the match is
/// ambiguous. Records exit_lambda (refined by bisection) if the zero leaves
/// the domain; grid points after the exit are not recorded.
ZeroTrack track_zero(const PiecewisePotential& q, double lambda_start, double lambda_end, std::size_t n,
                     std::size_t index = 0, double tol = kDefaultTol);

/// max over the zeros t0 of v(·, λ) of |v'(t0) v_λ(t0) + 1|; nullopt when v
/// has no zero on the domain.
std::optional<double> check_identity(const PiecewisePotential& q, double lambda, double tol = kDefaultTol);

/// CSV `lambda,t0,dt0_dlambda` followed by a one-line JSON footer
/// {"exit_lambda": <number|null>}.
void write_zerotrack_csv(std::ostream& out, const ZeroTrack& track);

}  // namespace sturmkit
