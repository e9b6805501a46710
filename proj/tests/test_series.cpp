#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "canyonlab/series.hpp"

using namespace canyonlab;

namespace {
PuiseuxSeries mono(long num, long den, long cnum, long cden = 1) {
  return PuiseuxSeries::monomial(Coeff::from_rat(Rat(cnum, cden)),
                                 Rat(num, den));
}

// F1 = 1/3 x^3 - x y^10 + y^12  (Example family at t = 1)
BivarPoly f1() {
  BivarPoly f;
  f.add_monomial(3, 0, Coeff::from_rat(Rat(1, 3)));
  f.add_monomial(1, 10, Coeff::from_long(-1));
  f.add_monomial(0, 12, Coeff::from_long(1));
  return f;
}
}  // namespace

TEST_CASE("ord basics") {
  CHECK(mono(5, 1, 1).ord() == RatInf(Rat(5)));
  PuiseuxSeries z;
  CHECK(z.ord().is_inf());
  CHECK_THROWS_AS(PuiseuxSeries(RatInf(Rat(7))).ord_checked(),
                  TruncationAmbiguous);

  PuiseuxSeries s = mono(12, 1, 1) - mono(15, 1, 2, 3);
  CHECK(s.ord() == RatInf(Rat(12)));
}

TEST_CASE("series arithmetic") {
  PuiseuxSeries a = mono(5, 1, 1);
  PuiseuxSeries b = mono(5, 1, -1);
  PuiseuxSeries d = a - b;
  CHECK(d.coeff(Rat(5)).encloses(Rat(2), Rat(0)));

  PuiseuxSeries h = mono(9, 2, 1);
  PuiseuxSeries p = h * h;
  CHECK(p.ord() == RatInf(Rat(9)));
  CHECK(p.coeff(Rat(9)).encloses(Rat(1), Rat(0)));
}

TEST_CASE("multiplication truncation propagation") {
  PuiseuxSeries a = mono(2, 1, 1).truncated(RatInf(Rat(5)));
  PuiseuxSeries b = mono(3, 1, 1).truncated(RatInf(Rat(7)));
  PuiseuxSeries p = a * b;
  // min(5 + 3, 7 + 2) = 8
  CHECK(p.trunc() == RatInf(Rat(8)));
}

TEST_CASE("substitute_x on F1 at gamma = y^5") {
  PuiseuxSeries g = mono(5, 1, 1);
  PuiseuxSeries s = f1().substitute_x(g);
  CHECK(s.ord() == RatInf(Rat(12)));
  CHECK(s.coeff(Rat(12)).encloses(Rat(1), Rat(0)));
  CHECK(s.coeff(Rat(15)).encloses(Rat(-2, 3), Rat(0)));
  CHECK(s.terms().size() == 2);
}

TEST_CASE("substitute_x identity: f = x") {
  BivarPoly f;
  f.add_monomial(1, 0, Coeff::from_long(1));
  PuiseuxSeries g = mono(9, 2, 3) + mono(7, 1, -2);
  PuiseuxSeries s = f.substitute_x(g);
  CHECK(s.coeff(Rat(9, 2)).encloses(Rat(3), Rat(0)));
  CHECK(s.coeff(Rat(7)).encloses(Rat(-2), Rat(0)));
}

TEST_CASE("G1 along gamma_a: y^12 + y^13 + (2a/3) y^{27/2}") {
  // G_t = x^3 + y^12 + x y^9 + t y^13, t = 1; gamma_a = a y^{9/2}, 3a^2+1=0
  BivarPoly g;
  g.add_monomial(3, 0, Coeff::from_long(1));
  g.add_monomial(0, 12, Coeff::from_long(1));
  g.add_monomial(1, 9, Coeff::from_long(1));
  g.add_monomial(0, 13, Coeff::from_long(1));
  Coeff a = Coeff::from_rat(Rat(-1, 3)).nth_roots(2)[0];
  PuiseuxSeries ga = PuiseuxSeries::monomial(a, Rat(9, 2));
  PuiseuxSeries s = g.substitute_x(ga);
  CHECK(s.coeff(Rat(12)).encloses(Rat(1), Rat(0)));
  CHECK(s.coeff(Rat(13)).encloses(Rat(1), Rat(0)));
  // coefficient at 27/2 is a^3 + a = 2a/3
  Coeff expect = a * Coeff::from_rat(Rat(2, 3));
  CHECK((s.coeff(Rat(27, 2)) - expect).contains_zero());
  CHECK((s.coeff(Rat(27, 2)) - expect).rad_d() < 1e-50);
}

TEST_CASE("pow_rat: (cy)^h") {
  PuiseuxSeries s = mono(1, 1, 8);
  PuiseuxSeries p = s.pow_rat(Rat(2, 3), RatInf(Rat(10)));
  CHECK(p.ord() == RatInf(Rat(2, 3)));
  CHECK(p.coeff(Rat(2, 3)).encloses(Rat(4), Rat(0)));  // 8^{2/3} = 4
}

TEST_CASE("pow_rat: (y + p y^5)^12 = y^12 + 12 p y^16 + O(y^20)") {
  Rat pv(7, 2);
  PuiseuxSeries s = mono(1, 1, 1) + mono(5, 1, 7, 2);
  PuiseuxSeries r = s.pow_rat(Rat(12), RatInf(Rat(20)));
  CHECK(r.coeff(Rat(12)).encloses(Rat(1), Rat(0)));
  CHECK(r.coeff(Rat(16)).encloses(Rat(12) * pv, Rat(0)));
  // next term is 66 p^2 y^20, beyond the limit
  CHECK(r.coeff(Rat(13)).contains_zero());
}

TEST_CASE("pow_rat fractional: (y + e y^2)^{27/2}") {
  Rat ev(1, 4);
  PuiseuxSeries s = mono(1, 1, 1) + mono(2, 1, 1, 4);
  PuiseuxSeries r = s.pow_rat(Rat(27, 2), RatInf(Rat(31, 2)));
  CHECK(r.coeff(Rat(27, 2)).encloses(Rat(1), Rat(0)));
  CHECK(r.coeff(Rat(29, 2)).encloses(Rat(27, 2) * ev, Rat(0)));
}

TEST_CASE("conjugates") {
  CHECK(mono(5, 1, 1).conjugates().size() == 1);

  PuiseuxSeries s = mono(9, 2, 3);
  auto cs = s.conjugates();
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].coeff(Rat(9, 2)).encloses(Rat(3), Rat(0)));
  CHECK(cs[1].coeff(Rat(9, 2)).encloses(Rat(-3), Rat(0)));

  PuiseuxSeries t = mono(3, 2, 1) + mono(2, 1, 1);
  auto ct = t.conjugates();
  REQUIRE(ct.size() == 2);
  CHECK(ct[1].coeff(Rat(3, 2)).encloses(Rat(-1), Rat(0)));
  CHECK(ct[1].coeff(Rat(2)).encloses(Rat(1), Rat(0)));
}

TEST_CASE("contact orders from the worked examples") {
  CHECK(contact_order(mono(5, 1, 1), mono(5, 1, -1)) == Rat(5));
  CHECK(contact_order(mono(2, 1, 1), mono(3, 1, 1)) == Rat(2));

  Coeff a = Coeff::from_rat(Rat(-1, 3)).nth_roots(2)[0];
  PuiseuxSeries ga = PuiseuxSeries::monomial(a, Rat(9, 2));
  PuiseuxSeries gb = PuiseuxSeries::monomial(-a, Rat(9, 2));
  CHECK(contact_order(ga, gb) == Rat(9, 2));
}

TEST_CASE("contact order symmetry and conjugate invariance") {
  PuiseuxSeries a = mono(3, 2, 1) + mono(2, 1, 5);
  PuiseuxSeries b = mono(3, 2, 1) + mono(5, 2, -1);
  Rat c1 = contact_order(a, b);
  CHECK(c1 == contact_order(b, a));
  CHECK(c1 == contact_order(a.conjugate(1), b));
}
