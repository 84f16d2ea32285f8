#pragma once

#include <cstdint>
#include <random>

#include "sturmkit/potential.hpp"

namespace sturmkit {

/// Uniform double in [0, 1) from the top 53 bits; unlike the standard
/// distributions this is identical on every platform for a given seed.
double uniform01(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);

/// Step potential on [a, b] with `pieces` pieces, breakpoints at least
/// (b − a)/(8·pieces) apart, levels uniform in [lo, hi].
PiecewisePotential random_step_potential(std::mt19937_64& rng, double a, double b, std::size_t pieces, double lo,
                                         double hi);

struct StepPair {
  PiecewisePotential q1;
  PiecewisePotential q2;
};

/// Independent 3-piece q1 (levels in [1, 4]) and q2 (levels in [0.05, 3]) on
/// [0, π]; mixes SCT outcomes.
StepPair random_mixed_pair(std::mt19937_64& rng);

/// q1 as above and q2 ≥ q1 pointwise: each q2 piece takes the largest q1 level
/// it overlaps plus a uniform offset in [0, 2].
StepPair random_ordered_pair(std::mt19937_64& rng);

/// q1 > q2 + gap pointwise.
StepPair random_strict_gap_pair(std::mt19937_64& rng, double gap = 0.01);

}  // namespace sturmkit
