#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sturmkit/expression.hpp"

namespace sturmkit {

/// Closed interval [a, b] with a < b.
struct Interval {
  double a;
  double b;

  Interval(double a_, double b_);
  double length() const { return b - a; }
  bool contains(double t) const { return a <= t && t <= b; }
  bool contains(const Interval& other) const { return a <= other.a && other.b <= b; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Constant {
  double value;
  friend bool operator==(const Constant&, const Constant&) = default;
};

/// One contiguous piece of a potential. Owns [left, right) except when it is
/// the last piece of its potential, which owns [left, right].
struct Piece {
  double left;
  double right;
  std::variant<Constant, Expression> kind;

  bool is_constant() const { return std::holds_alternative<Constant>(kind); }
  /// Level of a constant piece; throws DomainError for expression pieces.
  double level() const;
  /// Value of this piece's formula at t; does not check ownership.
  double value(double t) const;

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// q(t) on [a, b] as an ordered, contiguous list of pieces.
class PiecewisePotential {
 public:
  /// Validates contiguity; throws SpecError on gap, overlap or empty piece.
  PiecewisePotential(std::vector<Piece> pieces);

  static PiecewisePotential constant(double value, double a, double b);

  double a() const { return pieces_.front().left; }
  double b() const { return pieces_.back().right; }
  Interval domain() const { return {a(), b()}; }
  std::span<const Piece> pieces() const { return pieces_; }

  bool all_constant() const;
  /// True when every piece overlapping [from, to] is constant.
  bool constant_on(double from, double to) const;

  /// Index of the piece owning t under the right-continuous convention.
  std::size_t owner(double t) const;
  /// Throws DomainError for t outside [a, b].
  double operator()(double t) const;

  /// Interior breakpoints (piece boundaries other than a and b).
  std::vector<double> breakpoints() const;

  /// sup |q| on [a, b]; exact for constant pieces, grid-based (10^4 points
  /// per piece plus endpoints) for expression pieces.
  double sup_abs() const;

  friend bool operator==(const PiecewisePotential&, const PiecewisePotential&) = default;

 private:
  std::vector<Piece> pieces_;
};

PiecewisePotential parse_potential_spec(std::string_view text);
std::string serialize_potential_spec(const PiecewisePotential& q);

/// Convenience wrapper for the constructions below.
double eval_potential(const PiecewisePotential& q, double t);

/// 1 on [0, π−ε), (1−ε)² on [π−ε, π]; requires 0 < ε < 1.
PiecewisePotential build_theorem1_q2(double epsilon);

struct DeltaConstruction {
  double delta;
  PiecewisePotential q2;
};

/// δ = ½·min{1, 2ε/(3π)}, q2 ≡ 1/δ² on [0, π]; requires 0 < ε < π.
DeltaConstruction build_delta_construction(double epsilon);

struct LargeMConstruction {
  double M;
  PiecewisePotential q2;
};

/// M = max(sup|q1|, (2π/|J|)²), q2 ≡ M on the domain of q1. Zeros of every
/// solution of v'' + Mv = 0 are spaced π/√M ≤ |J|/2 apart.
LargeMConstruction build_large_M_construction(const PiecewisePotential& q1, const Interval& J);

/// Affine map of [a, b] onto [0, π]: q̃(s) = ((b−a)/π)² q(a + (b−a)s/π).
PiecewisePotential rescale_to_standard(const PiecewisePotential& q);

}  // namespace sturmkit
