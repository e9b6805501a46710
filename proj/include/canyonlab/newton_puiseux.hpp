#pragma once

#include <vector>

#include "canyonlab/series.hpp"

namespace canyonlab {

struct PuiseuxRoot {
  PuiseuxSeries series;  // one concrete conjugate branch
  int multiplicity = 1;
  // true when the truncation bound was reached before the branch fully
  // separated from its siblings (or before an exact tail was confirmed)
  bool merged = false;
};

// All Puiseux roots x = s(y) of F with ord s > 0, one entry per conjugate,
// each developed up to the truncation bound. Iterated Newton polygon:
// one branch per lower-hull edge and per root of the edge's characteristic
// polynomial, recursing on the shifted polynomial.
std::vector<PuiseuxRoot> newton_puiseux(const BivarPoly& F, const Rat& trunc);

}  // namespace canyonlab
