#pragma once

#include <json.hpp>

#include "canyonlab/equivalence.hpp"
#include "canyonlab/parser.hpp"

namespace canyonlab {

// All documents use ordered_json: key order is fixed by construction, so
// identical inputs and flags produce byte-identical output. Rationals
// serialize as exact "p/q" strings. Complex ball coefficients serialize
// as {"re", "im", "rad"}; re and im are exact rational strings whenever
// a small rational sits inside the ball, decimal strings otherwise.
using json = nlohmann::ordered_json;

json rat_json(const Rat& r);
json ratinf_json(const RatInf& r);
json coeff_json(const Coeff& c);

json card_json(const IdentityCard& card);
json verdict_json(const Verdict& v, bool certificate);

// Attempt to recover an exact rational from a ball component: the best
// continued-fraction convergent of the midpoint with denominator at most
// max_den that lies within the ball's radius (plus a safety slack).
bool snap_rational(const Coeff& c, Rat& re, Rat& im, long max_den = 1000000);

}  // namespace canyonlab
