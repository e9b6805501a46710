#pragma once

#include <map>
#include <string>
#include <utility>

#include "canyonlab/series.hpp"

namespace canyonlab {

// A germ expression over +, -, *, / (by constants), ^ (nonnegative
// integer exponents), parentheses, integer and p/q literals, x, y, the
// imaginary unit i, and named parameters resolved from bindings at parse
// time. Coefficients are kept as exact Gaussian rationals so that
// rendering and re-parsing reproduce the monomial map bit for bit.
struct GermExpr {
  std::string source;
  std::map<std::string, Rat> bindings;
  // (dx, dy) -> (re, im), exact
  std::map<std::pair<int, int>, std::pair<Rat, Rat>> exact;
  BivarPoly poly;  // ball coefficients built from `exact`
};

// Throws ParseError (with position) and UnboundParameter.
GermExpr parse_germ(const std::string& text,
                    const std::map<std::string, Rat>& bindings = {});

// Canonical text form; parse_germ(render(e)) has the same exact map.
std::string render(const GermExpr& e);

}  // namespace canyonlab
