#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "canyonlab/errors.hpp"
#include "canyonlab/parser.hpp"
#include "doctest.h"

using namespace canyonlab;

namespace {
using Key = std::pair<int, int>;
std::pair<Rat, Rat> gr(long nre, long dre, long nim = 0, long dim = 1) {
  return {rat(nre, dre), rat(nim, dim)};
}
}  // namespace

TEST_CASE("parse: cubic family with a binding") {
  auto e = parse_germ("1/3*x^3 - t^2*x*y^10 + y^12", {{"t", Rat(1)}});
  REQUIRE(e.exact.size() == 3);
  CHECK(e.exact.at(Key{3, 0}) == gr(1, 3));
  CHECK(e.exact.at(Key{1, 10}) == gr(-1, 1));
  CHECK(e.exact.at(Key{0, 12}) == gr(1, 1));
  auto e2 = parse_germ("1/3*x^3 - t^2*x*y^10 + y^12", {{"t", Rat(2)}});
  CHECK(e2.exact.at(Key{1, 10}) == gr(-4, 1));
}

TEST_CASE("parse: second family") {
  auto e = parse_germ("x^3 + y^12 + x*y^9 + t*y^13", {{"t", Rat(2)}});
  REQUIRE(e.exact.size() == 4);
  CHECK(e.exact.at(Key{3, 0}) == gr(1, 1));
  CHECK(e.exact.at(Key{0, 13}) == gr(2, 1));
}

TEST_CASE("parse: double plus is a positioned error") {
  try {
    parse_germ("x + + y");
    FAIL("expected ParseError");
  } catch (const ParseError& ex) {
    CHECK(ex.position == 4);
  }
}

TEST_CASE("parse: unbound parameter") {
  CHECK_THROWS_AS(parse_germ("t*x + y"), UnboundParameter);
  CHECK_NOTHROW(parse_germ("t*x + y", {{"t", Rat(5)}}));
}

TEST_CASE("parse: imaginary unit and gaussian literals") {
  auto e = parse_germ("i*x*y - 2*i^2");
  CHECK(e.exact.at(Key{1, 1}) == gr(0, 1, 1, 1));
  CHECK(e.exact.at(Key{0, 0}) == gr(2, 1));
  auto g = parse_germ("(1/2 + 3/4*i)*y^2");
  CHECK(g.exact.at(Key{0, 2}) == gr(1, 2, 3, 4));
}

TEST_CASE("parse: precedence and grouping") {
  auto e = parse_germ("-x^2");
  CHECK(e.exact.at(Key{2, 0}) == gr(-1, 1));
  auto sq = parse_germ("(x + y)^2");
  CHECK(sq.exact.at(Key{2, 0}) == gr(1, 1));
  CHECK(sq.exact.at(Key{1, 1}) == gr(2, 1));
  CHECK(sq.exact.at(Key{0, 2}) == gr(1, 1));
  auto d = parse_germ("1/2/2*x");
  CHECK(d.exact.at(Key{1, 0}) == gr(1, 4));
  auto one = parse_germ("x^0");
  CHECK(one.exact.at(Key{0, 0}) == gr(1, 1));
  // cancellation drops the monomial entirely
  CHECK(parse_germ("x - x + y").exact.size() == 1);
}

TEST_CASE("parse: division by a non-constant is rejected") {
  CHECK_THROWS_AS(parse_germ("x/y"), ParseError);
  CHECK_THROWS_AS(parse_germ("1/(x+1)"), ParseError);
  CHECK_NOTHROW(parse_germ("x/(1/2)"));
}

TEST_CASE("parse: trailing and malformed input") {
  CHECK_THROWS_AS(parse_germ("x y"), ParseError);
  CHECK_THROWS_AS(parse_germ(""), ParseError);
  CHECK_THROWS_AS(parse_germ("x^"), ParseError);
  CHECK_THROWS_AS(parse_germ("x^-2"), ParseError);
  CHECK_THROWS_AS(parse_germ("(x"), ParseError);
}

TEST_CASE("render round trip reproduces the exact monomial map") {
  std::vector<std::string> sources = {
      "1/3*x^3 - t^2*x*y^10 + y^12",
      "x^3 + y^12 + x*y^9 + t*y^13",
      "(1/2 + 3/4*i)*y^2 - i*x^5",
      "x^2 - y^3",
      "x^4/4 - 7/3*x^3*y^4 + 7*x^2*y^8 - 8*x*y^12 + y^16 + y^17 + x*y^14",
  };
  for (auto& s : sources) {
    auto e = parse_germ(s, {{"t", rat(7, 3)}});
    auto back = parse_germ(render(e));
    CHECK(back.exact == e.exact);
  }
}

TEST_CASE("parsed polynomial matches hand-built coefficients") {
  auto e = parse_germ("1/3*x^3 - x*y^10 + y^12");
  BivarPoly f;
  f.add_monomial(3, 0, Coeff::from_rat(rat(1, 3)));
  f.add_monomial(1, 10, Coeff::from_rat(rat(-1)));
  f.add_monomial(0, 12, Coeff::from_rat(rat(1)));
  REQUIRE(e.poly.monomials().size() == f.monomials().size());
  for (auto& [k, c] : f.monomials())
    CHECK((e.poly.monomials().at(k) - c).contains_zero());
}
