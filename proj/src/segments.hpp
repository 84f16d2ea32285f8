#pragma once

#include <algorithm>

#include "sturmkit/potential.hpp"

namespace sturmkit::detail {

/// Calls fn(piece, s, e) for each non-empty intersection [s, e] of a piece
/// with [from, to], in order. Requires q.a ≤ from ≤ to ≤ q.b.
template <class Fn>
void for_each_segment(const PiecewisePotential& q, double from, double to, Fn&& fn) {
  if (!(to > from)) return;
  const auto pieces = q.pieces();
  for (std::size_t i = q.owner(from); i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    const double s = std::max(from, p.left);
    const double e = std::min(to, p.right);
    if (e > s) fn(p, s, e);
    if (p.right >= to) break;
  }
}

}  // namespace sturmkit::detail
