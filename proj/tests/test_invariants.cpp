#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "canyonlab/invariants.hpp"

using namespace canyonlab;

namespace {
BivarPoly poly(std::initializer_list<std::tuple<int, int, Rat>> ms) {
  BivarPoly f;
  for (auto& [dx, dy, c] : ms) f.add_monomial(dx, dy, Coeff::from_rat(c));
  return f;
}

BivarPoly f_t(const Rat& t) {
  return poly({{3, 0, Rat(1, 3)}, {1, 10, Rat(-t * t)}, {0, 12, 1}});
}

BivarPoly g_t(const Rat& t) {
  return poly({{3, 0, 1}, {0, 12, 1}, {1, 9, 1}, {0, 13, t}});
}

// three polars c y^4 for c in {1, 2, 4}, perturbed so that the second and
// third level records are nontrivial with exact rational values
BivarPoly three_polar() {
  return poly({{4, 0, Rat(1, 4)},
               {3, 4, Rat(-7, 3)},
               {2, 8, 7},
               {1, 12, -8},
               {0, 16, 1},
               {0, 17, 1},
               {1, 14, 1}});
}
}  // namespace

TEST_CASE("first_level") {
  auto card = identity_card(f_t(1));
  REQUIRE(card.first.size() == 2);
  for (auto& fl : card.first) {
    CHECK(fl.h == Rat(12));
    CHECK(fl.a.encloses(Rat(1), Rat(0)));
  }

  // leading coefficient is linear in a constant factor
  auto scaled = identity_card(f_t(1).scale(Rat(2)));
  for (auto& fl : scaled.first) {
    CHECK(fl.h == Rat(12));
    CHECK(fl.a.encloses(Rat(2), Rat(0)));
  }

  auto gcard = identity_card(g_t(1));
  REQUIRE(gcard.first.size() == 2);
  for (auto& fl : gcard.first) {
    CHECK(fl.h == Rat(12));
    CHECK(fl.a.encloses(Rat(1), Rat(0)));
  }
}

TEST_CASE("second_level for F_1: H=15, |diff| = 4/3") {
  auto card = identity_card(f_t(1));
  REQUIRE(card.second.size() == 1);
  const SecondLevel& s = card.second[0];
  CHECK(s.h == Rat(12));
  CHECK(s.delta == Rat(5));
  CHECK(s.H == RatInf(Rat(15)));
  CHECK(s.applicable);
  // canyon 0 is the arc -y^5 (f along it is y^12 + (2/3) y^15)
  CHECK(s.ai_t.encloses(Rat(2, 3), Rat(0)));
  CHECK(s.aj_t.encloses(Rat(-2, 3), Rat(0)));
  CHECK(s.diff.encloses(Rat(4, 3), Rat(0)));
  // invariant range: h < H < h + delta - 1
  CHECK(Rat(12) < Rat(15));
  CHECK(Rat(15) < s.h + s.delta - 1);
}

TEST_CASE("second_level antisymmetry") {
  auto card = identity_card(f_t(1));
  const SecondLevel& s = card.second[0];
  SecondLevel r = second_level(card.skel, s.cj, s.ci);
  CHECK(r.H == s.H);
  CHECK(r.delta == s.delta);
  CHECK((r.diff + s.diff).contains_zero());
  CHECK((r.diff + s.diff).rad_d() < 1e-40);
}

TEST_CASE("second_level for G_1: H=27/2, diff = +-4a/3 with 3a^2+1=0") {
  auto card = identity_card(g_t(1));
  REQUIRE(card.second.size() == 1);
  const SecondLevel& s = card.second[0];
  CHECK(s.h == Rat(12));
  CHECK(s.delta == Rat(9, 2));
  CHECK(s.H == RatInf(Rat(27, 2)));
  CHECK(s.applicable);  // 27/2 < 31/2
  // diff = +-(4/3) a, so diff^2 = (16/9) a^2 = -16/27
  Coeff sq = s.diff * s.diff;
  CHECK(sq.encloses(Rat(-16, 27), Rat(0)));
  CHECK(sq.rad_d() < 1e-30);
}

TEST_CASE("vanishing difference: H = infinity sentinel") {
  // f = 1/3 x^3 - x y^10: both polars give (1/a) f = y^15 exactly
  auto card = identity_card(poly({{3, 0, Rat(1, 3)}, {1, 10, -1}}));
  REQUIRE(card.second.size() == 1);
  CHECK(card.second[0].H.is_inf());
  CHECK(!card.second[0].applicable);
}

TEST_CASE("three-polar germ: second and third level exact values") {
  auto card = identity_card(three_polar());
  REQUIRE(card.skel.canyons.size() == 3);
  REQUIRE(card.skel.clusters.size() == 1);
  for (auto& c : card.skel.canyons) {
    CHECK(c.degree == Rat(7));
    CHECK(c.h == Rat(16));
  }
  // canyon order follows the polar leading coefficients 1 < 2 < 4;
  // a_i = c^4/4 - (7/3)c^3 + 7c^2 - 8c + 1 at c = 1, 2, 4
  Rat a1(-25, 12), a2(-5, 3), a3(-13, 3);
  REQUIRE(card.first.size() == 3);
  CHECK(card.first[0].a.encloses(a1, Rat(0)));
  CHECK(card.first[1].a.encloses(a2, Rat(0)));
  CHECK(card.first[2].a.encloses(a3, Rat(0)));

  REQUIRE(card.second.size() == 3);
  // pair (0,1): H=17, diff = 1/a1 - 1/a2 = -12/25 + 3/5 = 3/25
  CHECK(card.second[0].H == RatInf(Rat(17)));
  CHECK(card.second[0].delta == Rat(4));
  CHECK(card.second[0].applicable);
  CHECK(card.second[0].diff.encloses(Rat(3, 25), Rat(0)));

  REQUIRE(card.third.size() == 1);
  const ThirdLevel& t = card.third[0];
  CHECK(t.applicable);
  CHECK(t.H == RatInf(Rat(17)));
  CHECK(t.Hp == RatInf(Rat(18)));
  CHECK(t.a12.encloses(Rat(6), Rat(0)));
  CHECK(t.a31.encloses(Rat(-16, 9), Rat(0)));
  CHECK(t.diff.encloses(Rat(70, 9), Rat(0)));
  CHECK(t.diff.rad_d() < 1e-30);
}

TEST_CASE("third_level rejects degenerate input") {
  auto card = identity_card(f_t(1));
  CHECK(card.third.empty());  // only two canyons
  CHECK_THROWS_AS(third_level(card.skel, 0, 0, 1), ComputeError);
}

TEST_CASE("scaling action y -> cy on the invariant ladder") {
  for (Rat c : {Rat(2), Rat(3), Rat(1, 2)}) {
    auto base = identity_card(f_t(1));
    auto scaled = identity_card(f_t(1).scale_y(c));
    REQUIRE(scaled.first.size() == base.first.size());
    for (size_t i = 0; i < base.first.size(); ++i) {
      CHECK(scaled.first[i].h == base.first[i].h);
      Rat factor(1);
      for (long k = 0; k < rat_num_l(base.first[i].h); ++k) factor *= c;
      Coeff want = base.first[i].a * Coeff::from_rat(factor);
      CHECK((scaled.first[i].a - want).contains_zero());
      CHECK((scaled.first[i].a - want).rad_d() < 1e-40);
    }
    REQUIRE(scaled.second.size() == base.second.size());
    for (size_t i = 0; i < base.second.size(); ++i) {
      const SecondLevel& b = base.second[i];
      const SecondLevel& s = scaled.second[i];
      CHECK(s.H == b.H);
      CHECK(s.delta == b.delta);
      // diff is normalized by a, which absorbs c^h: net factor c^{H-h}
      Rat factor(1);
      for (long k = 0; k < rat_num_l(b.H.value()) - rat_num_l(b.h); ++k)
        factor *= c;
      Coeff want = b.diff * Coeff::from_rat(factor);
      CHECK((s.diff - want).contains_zero());
    }
  }
}

TEST_CASE("develop_phi2: identity") {
  auto card = identity_card(g_t(1));
  const Canyon& c0 = card.skel.canyons[0];
  PuiseuxSeries s = c0.f_series.scaled(c0.a.inv());
  Development dev = develop_phi2(c0.h, s, s, Coeff::from_long(1), c0.degree);
  REQUIRE(dev.terms.size() == 1);
  CHECK(dev.terms[0].first == Rat(1));
  CHECK(dev.terms[0].second.encloses(Rat(1), Rat(0)));
}

TEST_CASE("develop_phi2: G_1 vs G_2 gives P = y - (1/12) y^2 + ...") {
  auto cf = identity_card(g_t(1));
  auto cg = identity_card(g_t(2));
  // match canyon 0 of each; both expansions start y^12 + t y^13 + ...
  const Canyon& a = cf.skel.canyons[0];
  const Canyon& b = cg.skel.canyons[0];
  Development dev =
      develop_phi2(a.h, a.f_series, b.f_series, Coeff::from_long(1), a.degree);
  REQUIRE(dev.terms.size() >= 2);
  CHECK(dev.terms[1].first == Rat(2));
  CHECK(dev.terms[1].second.encloses(Rat(-1, 12), Rat(0)));
  CHECK(dev.terms[1].second.rad_d() < 1e-30);
  CHECK(dev.cutoff == Rat(11, 2));
  for (auto& [beta, r] : dev.terms) CHECK(beta < Rat(11, 2));
}

TEST_CASE("develop_phi2: first correction follows the residual exponent") {
  // f side has an extra b y^{h+q} term: the correction is (b c / (a h))
  // y^{q+1} when the g side stays clean
  PuiseuxSeries sf, sg;
  sf.add_term(Rat(12), Coeff::from_long(1));
  sf.add_term(Rat(14), Coeff::from_long(5));
  sg.add_term(Rat(12), Coeff::from_long(1));
  Development dev =
      develop_phi2(Rat(12), sf, sg, Coeff::from_long(1), Rat(6));
  REQUIRE(dev.terms.size() >= 2);
  CHECK(dev.terms[1].first == Rat(3));
  CHECK(dev.terms[1].second.encloses(Rat(5, 12), Rat(0)));
}

TEST_CASE("develop_phi2: leading mismatch is a refutation") {
  PuiseuxSeries sf, sg;
  sf.add_term(Rat(12), Coeff::from_long(1));
  sg.add_term(Rat(12), Coeff::from_long(2));
  CHECK_THROWS_AS(
      develop_phi2(Rat(12), sf, sg, Coeff::from_long(1), Rat(6)),
      InconsistentDevelopment);
}

TEST_CASE("develop_phi2 recovers a planted development (randomized)") {
  std::mt19937 rng(20260826);
  auto rnd_rat = [&](int lo, int hi, int den) {
    std::uniform_int_distribution<int> num(lo * den, hi * den);
    int n = num(rng);
    if (n == 0) n = den;
    Rat r(n, den);
    r.canonicalize();
    return r;
  };
  int recovered = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Rat h(12), d(6);
    // random g-side series on exponents h .. h+d-1 in half-integer steps
    PuiseuxSeries sg;
    sg.add_term(h, Coeff::from_long(1));
    for (Rat e = h + Rat(1, 2); e < h + d - 1; e += Rat(1, 2))
      if (rng() % 2) sg.add_term(e, Coeff::from_rat(rnd_rat(-3, 3, 2)));
    sg = sg.truncated(RatInf(Rat(h + d - 1)));
    // planted P = c y + up to two correction terms below d - 1
    Rat c0 = rnd_rat(1, 2, 1);
    PuiseuxSeries p;
    p.add_term(Rat(1), Coeff::from_rat(c0));
    std::vector<std::pair<Rat, Rat>> planted;
    Rat b1 = rnd_rat(2, 3, 2);
    Rat r1 = rnd_rat(-2, 2, 3);
    planted.emplace_back(b1, r1);
    p.add_term(b1, Coeff::from_rat(r1));
    if (rng() % 2) {
      Rat b2 = b1 + rnd_rat(1, 2, 2);
      if (b2 < d - 1) {
        Rat r2 = rnd_rat(-2, 2, 5);
        planted.emplace_back(b2, r2);
        p.add_term(b2, Coeff::from_rat(r2));
      }
    }
    PuiseuxSeries sf = sg.compose(p, RatInf(Rat(h + d - 1)));
    Development dev =
        develop_phi2(h, sf, sg, Coeff::from_rat(c0), d);
    // every planted term below the cutoff must be recovered in place
    for (auto& [be, re] : planted) {
      bool found = false;
      for (auto& [bg, rg] : dev.terms)
        if (bg == be && rg.encloses(re, Rat(0))) found = true;
      CHECK(found);
      if (found) ++recovered;
    }
    // and the recovered P reproduces the f side below the window
    PuiseuxSeries back = sg.compose(dev.series(), RatInf(Rat(h + d - 1)));
    PuiseuxSeries resid = (sf - back).truncated(RatInf(Rat(h + d - 1)));
    CHECK(resid.known_zero());
  }
  CHECK(recovered >= 20);
}
