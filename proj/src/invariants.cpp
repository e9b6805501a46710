#include "canyonlab/invariants.hpp"

#include <algorithm>

#include "canyonlab/errors.hpp"

namespace canyonlab {

namespace {

// (1/a) f(gamma(y), y)
PuiseuxSeries normalized(const Canyon& c) {
  return c.f_series.scaled(c.a.inv());
}

Rat canyon_delta(const Skeleton& sk, int ci, int cj) {
  return contact_order(sk.polars[(size_t)sk.canyons[(size_t)ci].rep].arc,
                       sk.polars[(size_t)sk.canyons[(size_t)cj].rep].arc);
}

}  // namespace

PuiseuxSeries Development::series() const {
  PuiseuxSeries p;
  for (auto& [b, r] : terms) p.add_term(b, r);
  return p;
}

FirstLevel first_level(const Skeleton& sk, int canyon) {
  const Canyon& c = sk.canyons[(size_t)canyon];
  if (!c.tangential || !(c.degree > Rat(1)))
    throw ComputeError("first_level: canyon outside the card range");
  FirstLevel fl;
  fl.canyon = canyon;
  fl.h = c.h;
  fl.a = c.a;
  return fl;
}

SecondLevel second_level(const Skeleton& sk, int ci, int cj) {
  if (ci == cj) throw ComputeError("second_level: identical canyons");
  const Canyon& a = sk.canyons[(size_t)ci];
  const Canyon& b = sk.canyons[(size_t)cj];
  if (a.h != b.h) throw ComputeError("second_level: orders h differ");
  SecondLevel out;
  out.ci = ci;
  out.cj = cj;
  out.h = a.h;
  out.delta = canyon_delta(sk, ci, cj);
  Rat bound = out.h + out.delta - 1;
  PuiseuxSeries na = normalized(a);
  PuiseuxSeries nb = normalized(b);
  if (na.trunc() < RatInf(bound) || nb.trunc() < RatInf(bound))
    throw TruncationTooSmall("second_level: series known below h+delta-1 only");
  PuiseuxSeries u = (na - nb).truncated(RatInf(bound));
  RatInf H = u.ord();
  out.H = H;
  if (H.is_inf()) {
    out.applicable = false;  // vanishes identically below the bound
    return out;
  }
  out.ai_t = na.coeff(H.value());
  out.aj_t = nb.coeff(H.value());
  out.diff = u.coeff(H.value());
  out.applicable = true;  // H < bound by the truncation above
  return out;
}

ThirdLevel third_level(const Skeleton& sk, int c1, int c2, int c3) {
  if (c1 == c2 || c2 == c3 || c1 == c3)
    throw ComputeError("third_level: canyons must be pairwise distinct");
  ThirdLevel out;
  out.c1 = c1;
  out.c2 = c2;
  out.c3 = c3;
  const Canyon& a1 = sk.canyons[(size_t)c1];
  const Canyon& a2 = sk.canyons[(size_t)c2];
  const Canyon& a3 = sk.canyons[(size_t)c3];
  if (a1.h != a2.h || a1.h != a3.h) return out;  // not applicable
  Rat delta = canyon_delta(sk, c1, c2);
  Rat deltap = canyon_delta(sk, c1, c3);
  Rat bound = std::min(Rat(a1.h + delta - 1), Rat(a1.h + deltap - 1));
  PuiseuxSeries u12 =
      (normalized(a1) - normalized(a2)).truncated(RatInf(bound));
  PuiseuxSeries u31 =
      (normalized(a3) - normalized(a1)).truncated(RatInf(bound));
  RatInf H12 = u12.ord();
  RatInf H31 = u31.ord();
  if (H12.is_inf() || !(H12 == H31)) return out;  // orders must coincide
  out.H = H12;
  PuiseuxSeries v12 = u12.scaled(u12.coeff(H12.value()).inv());
  PuiseuxSeries v31 = u31.scaled(u31.coeff(H31.value()).inv());
  PuiseuxSeries w = (v12 - v31).truncated(RatInf(bound));
  RatInf Hp = w.ord();
  out.Hp = Hp;
  if (Hp.is_inf()) return out;
  out.a12 = v12.coeff(Hp.value());
  out.a31 = v31.coeff(Hp.value());
  out.diff = w.coeff(Hp.value());
  out.applicable = true;  // Hp < bound by the truncation
  return out;
}

Development develop_phi2(const Rat& h, const PuiseuxSeries& series_f,
                         const PuiseuxSeries& series_g, const Coeff& c,
                         const Rat& d) {
  if (series_f.ord() != RatInf(h) || series_g.ord() != RatInf(h))
    throw ComputeError("develop_phi2: series do not have order h");
  Coeff a = series_f.lead_coeff();
  Coeff ap = series_g.lead_coeff();
  if (h.get_den() == 1 &&
      (a - ap * c.pow_int(rat_num_l(h))).surely_nonzero())
    throw InconsistentDevelopment(
        "scale constant fails the leading coefficient relation");

  Development dev;
  dev.c = c;
  dev.cutoff = d - 1;
  dev.terms.emplace_back(Rat(1), c);

  Rat limit = h + d - 1;
  // a' h c^{h-1}: the factor in front of the lowest new residual produced
  // by appending r y^beta to P
  Coeff denom = ap * Coeff::from_rat(h) * c.pow_rat(h - 1);

  Rat prev_beta(1);
  for (int step = 0; step < 500; ++step) {
    PuiseuxSeries g_of_p = series_g.compose(dev.series(), RatInf(limit));
    PuiseuxSeries r = (series_f - g_of_p).truncated(RatInf(limit));
    RatInf e = r.ord();
    if (e.is_inf()) return dev;  // matched through the whole window
    Rat beta = e.value() - h + 1;
    if (beta >= d - 1) return dev;  // cannot influence the window any more
    if (beta <= prev_beta)
      throw InconsistentDevelopment(
          "residual at exponent " + rat_str(e.value()) +
          " admits no admissible correction");
    Coeff rk = r.coeff(e.value()) / denom;
    dev.terms.emplace_back(beta, rk);
    prev_beta = beta;
  }
  throw PrecisionExhausted("develop_phi2: no convergence below the cutoff");
}

IdentityCard identity_card(const BivarPoly& f,
                           std::optional<Rat> trunc_override) {
  IdentityCard card;
  card.skel = analyze(f, trunc_override);
  const Skeleton& sk = card.skel;
  for (auto& group : sk.tangent_groups) {
    for (int cid : group) card.first.push_back(first_level(sk, cid));
    for (size_t i = 0; i < group.size(); ++i)
      for (size_t j = i + 1; j < group.size(); ++j) {
        if (sk.canyons[(size_t)group[i]].h != sk.canyons[(size_t)group[j]].h)
          continue;
        card.second.push_back(second_level(sk, group[i], group[j]));
      }
    for (size_t i = 0; i < group.size(); ++i)
      for (size_t j = i + 1; j < group.size(); ++j)
        for (size_t k = j + 1; k < group.size(); ++k) {
          const Canyon& a = sk.canyons[(size_t)group[i]];
          const Canyon& b = sk.canyons[(size_t)group[j]];
          const Canyon& cc = sk.canyons[(size_t)group[k]];
          if (a.h != b.h || a.h != cc.h) continue;
          card.third.push_back(third_level(sk, group[i], group[j], group[k]));
        }
  }
  return card;
}

}  // namespace canyonlab
