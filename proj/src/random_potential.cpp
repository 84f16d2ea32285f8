#include "sturmkit/random_potential.hpp"

#include <algorithm>
#include <numbers>
#include <vector>

namespace sturmkit {

namespace {

constexpr double kPi = std::numbers::pi;

double max_level_on(const PiecewisePotential& q, double s, double e) {
  double m = -1e300;
  for (const Piece& p : q.pieces())
    if (p.right > s && p.left < e) m = std::max(m, p.level());
  return m;
}

double min_level_on(const PiecewisePotential& q, double s, double e) {
  double m = 1e300;
  for (const Piece& p : q.pieces())
    if (p.right > s && p.left < e) m = std::min(m, p.level());
  return m;
}

}  // namespace

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

PiecewisePotential random_step_potential(std::mt19937_64& rng, double a, double b, std::size_t pieces, double lo,
                                         double hi) {
  const double min_gap = (b - a) / (8.0 * static_cast<double>(pieces));
  std::vector<double> cuts;
  while (cuts.size() + 1 < pieces) {
    const double x = uniform(rng, a + min_gap, b - min_gap);
    const bool clear = std::all_of(cuts.begin(), cuts.end(), [&](double c) { return std::abs(c - x) >= min_gap; });
    if (clear) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.insert(cuts.begin(), a);
  cuts.push_back(b);
  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back(Piece{cuts[i], cuts[i + 1], Constant{uniform(rng, lo, hi)}});
  return PiecewisePotential(std::move(out));
}

StepPair random_mixed_pair(std::mt19937_64& rng) {
  auto q1 = random_step_potential(rng, 0.0, kPi, 3, 1.0, 4.0);
  auto q2 = random_step_potential(rng, 0.0, kPi, 3, 0.05, 3.0);
  return {std::move(q1), std::move(q2)};
}

StepPair random_ordered_pair(std::mt19937_64& rng) {
  auto q1 = random_step_potential(rng, 0.0, kPi, 3, 1.0, 4.0);
  const auto shape = random_step_potential(rng, 0.0, kPi, 3, 0.0, 2.0);
  std::vector<Piece> pieces;
  for (const Piece& p : shape.pieces())
    pieces.push_back(Piece{p.left, p.right, Constant{max_level_on(q1, p.left, p.right) + p.level()}});
  return {std::move(q1), PiecewisePotential(std::move(pieces))};
}

StepPair random_strict_gap_pair(std::mt19937_64& rng, double gap) {
  auto q1 = random_step_potential(rng, 0.0, kPi, 3, 1.0, 4.0);
  const auto shape = random_step_potential(rng, 0.0, kPi, 3, 0.0, 1.0);
  std::vector<Piece> pieces;
  for (const Piece& p : shape.pieces()) {
    // min q1 − 1.5·gap − 2u with u ∈ [0, 1)
    const double level = min_level_on(q1, p.left, p.right) - 1.5 * gap - 2.0 * p.level();
    pieces.push_back(Piece{p.left, p.right, Constant{level}});
  }
  return {std::move(q1), PiecewisePotential(std::move(pieces))};
}

}  // namespace sturmkit
