#pragma once

#include <optional>
#include <vector>

#include "canyonlab/singularity.hpp"

namespace canyonlab {

// (h, a): order and leading coefficient of f along a canyon. A change of
// coordinates by a bi-Lipschitz map with scale constant c fixes h and
// multiplies a by c^h.
struct FirstLevel {
  int canyon = -1;
  Rat h;
  Coeff a;
};

// Pair record: H is the order of the difference of the normalized
// expansions (1/a_i) f(gamma_i) - (1/a_j) f(gamma_j); diff its leading
// coefficient. Meaningful (applicable) only while H < h + delta - 1,
// where delta is the contact order of the two canyons; diff then scales
// by c^{h-H}.
struct SecondLevel {
  int ci = -1, cj = -1;
  Rat h;
  Rat delta;
  RatInf H;     // infinity when the difference vanishes below the bound
  Coeff ai_t, aj_t;  // y^H coefficients of the two normalized expansions
  Coeff diff;        // ai_t - aj_t
  bool applicable = false;
};

// Triple record, one level deeper: normalize the two pair differences by
// their leading coefficients and compare; diff = A12 - A31 scales by
// c^{H-H'}.
struct ThirdLevel {
  int c1 = -1, c2 = -1, c3 = -1;
  RatInf H;
  RatInf Hp;
  Coeff a12, a31;
  Coeff diff;
  bool applicable = false;
};

// P(y) = c y + r_1 y^{beta_1} + ... with 1 < beta_1 < ... < cutoff = d-1,
// the part of the second coordinate of a matching homeomorphism along a
// canyon that is forced by the two germs.
struct Development {
  Coeff c;
  std::vector<std::pair<Rat, Coeff>> terms;  // (beta, r), first is (1, c)
  Rat cutoff;
  PuiseuxSeries series() const;
};

struct IdentityCard {
  Skeleton skel;
  std::vector<FirstLevel> first;
  std::vector<SecondLevel> second;
  std::vector<ThirdLevel> third;
};

FirstLevel first_level(const Skeleton& sk, int canyon);

// Pre: distinct tangential canyons in the same tangent group with equal h.
SecondLevel second_level(const Skeleton& sk, int ci, int cj);

ThirdLevel third_level(const Skeleton& sk, int c1, int c2, int c3);

// Iteratively solve series_f = series_g(P(y)) for P below the cutoff
// d - 1. series_f, series_g are the expansions of the two germs along
// matched canyons, both of order h; c must satisfy c^h = a/a'. Throws
// InconsistentDevelopment when no admissible correction can absorb the
// lowest surviving residual term (a refutation signal).
Development develop_phi2(const Rat& h, const PuiseuxSeries& series_f,
                         const PuiseuxSeries& series_g, const Coeff& c,
                         const Rat& d);

IdentityCard identity_card(const BivarPoly& f,
                           std::optional<Rat> trunc_override = {});

}  // namespace canyonlab
