#include "canyonlab/json_io.hpp"

namespace canyonlab {

namespace {

Rat mpfr_to_rat(const __mpfr_struct* x) {
  if (mpfr_zero_p(x)) return Rat(0);
  mpz_class z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
  Rat r(z);
  Rat two(2);
  if (e >= 0)
    for (mpfr_exp_t k = 0; k < e; ++k) r *= two;
  else
    for (mpfr_exp_t k = 0; k < -e; ++k) r /= two;
  return r;
}

// Best continued-fraction convergent of v with denominator <= max_den.
Rat convergent(const Rat& v, long max_den) {
  Rat x = v;
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num().get_mpz_t(),
               x.get_den().get_mpz_t());
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rat frac = x - Rat(a);
    if (frac == 0) break;
    x = Rat(1) / frac;
  }
  if (q1 == 0) return v;
  Rat r(p1, q1);
  r.canonicalize();
  return r;
}

}  // namespace

bool snap_rational(const Coeff& c, Rat& re, Rat& im, long max_den) {
  if (c.rad_d() > 1e-12) return false;  // too loose to claim exactness
  Rat cre = convergent(mpfr_to_rat(c.re()), max_den);
  Rat cim = convergent(mpfr_to_rat(c.im()), max_den);
  if (!c.encloses(cre, cim)) return false;
  re = cre;
  im = cim;
  return true;
}

json rat_json(const Rat& r) { return rat_str(r); }

json ratinf_json(const RatInf& r) { return r.str(); }

json coeff_json(const Coeff& c) {
  json out = json::object();
  Rat re, im;
  if (snap_rational(c, re, im)) {
    out["re"] = rat_str(re);
    out["im"] = rat_str(im);
  } else {
    out["re"] = c.re_str(20);
    out["im"] = c.im_str(20);
  }
  out["rad"] = c.rad_str();
  return out;
}

namespace {

json series_json(const PuiseuxSeries& s) {
  json terms = json::array();
  for (auto& [e, c] : s.terms()) {
    json t = json::object();
    t["exp"] = rat_json(e);
    t["coeff"] = coeff_json(c);
    terms.push_back(std::move(t));
  }
  json out = json::object();
  out["terms"] = std::move(terms);
  out["trunc"] = ratinf_json(s.trunc());
  return out;
}

json canyon_json(const Canyon& c) {
  json out = json::object();
  out["id"] = c.id;
  out["members"] = c.members;
  out["d"] = rat_json(c.degree);
  out["h"] = rat_json(c.h);
  out["a"] = coeff_json(c.a);
  out["tangent"] = coeff_json(c.tangent);
  out["tangential"] = c.tangential;
  return out;
}

json cluster_json(const Cluster& c) {
  json out = json::object();
  out["tangent_group"] = c.tangent_group;
  out["d"] = rat_json(c.degree);
  out["bar_h"] = rat_json(c.h);
  out["canyons"] = c.canyons;
  json contacts = json::array();
  for (auto& [i, j, k] : c.contacts) {
    json e = json::object();
    e["i"] = i;
    e["j"] = j;
    e["k"] = rat_json(k);
    contacts.push_back(std::move(e));
  }
  out["contacts"] = std::move(contacts);
  out["omega_partition"] = c.omega_partition;
  return out;
}

}  // namespace

json card_json(const IdentityCard& card) {
  const Skeleton& sk = card.skel;
  json out = json::object();
  out["multiplicity"] = sk.f.total_order();
  out["shear"] = rat_json(sk.shear);
  out["trunc"] = rat_json(sk.trunc);
  json cone = json::array();
  for (auto& t : sk.tangent_cone) cone.push_back(coeff_json(t));
  out["tangent_cone"] = std::move(cone);
  json polars = json::array();
  for (auto& p : sk.polars) {
    json pj = json::object();
    if (p.arc.known_zero()) {
      pj["ord"] = "inf";  // the arc x = 0
    } else {
      pj["ord"] = ratinf_json(p.arc.ord());
      pj["lead"] = coeff_json(p.arc.lead_coeff());
    }
    pj["h"] = rat_json(p.h);
    pj["a"] = coeff_json(p.a);
    pj["d"] = rat_json(p.d);
    pj["tangential"] = p.tangential;
    polars.push_back(std::move(pj));
  }
  out["polars"] = std::move(polars);
  json canyons = json::array();
  for (auto& c : sk.canyons) canyons.push_back(canyon_json(c));
  out["canyons"] = std::move(canyons);
  out["tangent_groups"] = sk.tangent_groups;
  json clusters = json::array();
  for (auto& c : sk.clusters) clusters.push_back(cluster_json(c));
  out["clusters"] = std::move(clusters);

  json first = json::array();
  for (auto& r : card.first) {
    json e = json::object();
    e["canyon"] = r.canyon;
    e["h"] = rat_json(r.h);
    e["a"] = coeff_json(r.a);
    first.push_back(std::move(e));
  }
  out["first_level"] = std::move(first);
  json second = json::array();
  for (auto& r : card.second) {
    json e = json::object();
    e["ci"] = r.ci;
    e["cj"] = r.cj;
    e["h"] = rat_json(r.h);
    e["delta"] = rat_json(r.delta);
    e["H"] = ratinf_json(r.H);
    e["applicable"] = r.applicable;
    if (r.applicable) e["diff"] = coeff_json(r.diff);
    second.push_back(std::move(e));
  }
  out["second_level"] = std::move(second);
  json third = json::array();
  for (auto& r : card.third) {
    json e = json::object();
    e["c1"] = r.c1;
    e["c2"] = r.c2;
    e["c3"] = r.c3;
    e["applicable"] = r.applicable;
    if (r.applicable) {
      e["H"] = ratinf_json(r.H);
      e["Hp"] = ratinf_json(r.Hp);
      e["diff"] = coeff_json(r.diff);
    }
    third.push_back(std::move(e));
  }
  out["third_level"] = std::move(third);
  return out;
}

namespace {

json matching_json(const Matching& m) {
  json out = json::object();
  json cs = json::array();
  for (auto& [i, j] : m.canyons) cs.push_back(json::array({i, j}));
  out["canyons"] = std::move(cs);
  return out;
}

json constraint_json(const ScaleConstraint& sc) {
  json out = json::object();
  out["k"] = rat_json(sc.k);
  out["v"] = coeff_json(sc.v);
  out["p"] = sc.p;
  out["q"] = sc.q;
  out["w"] = coeff_json(sc.w);
  out["origin"] = sc.origin;
  return out;
}

json refined_json(const RefinedResult& r) {
  json out = json::object();
  out["consistent"] = r.consistent;
  if (!r.consistent) {
    out["pair"] = json::array({r.pair_f, r.pair_g});
    out["exponent"] = rat_json(r.exponent);
    out["residual"] = coeff_json(r.residual);
    out["detail"] = r.detail;
  }
  if (r.have_dev) {
    json terms = json::array();
    for (auto& [b, c] : r.dev.terms) {
      json t = json::object();
      t["exp"] = rat_json(b);
      t["coeff"] = coeff_json(c);
      terms.push_back(std::move(t));
    }
    out["development"] = std::move(terms);
  }
  return out;
}

}  // namespace

json verdict_json(const Verdict& v, bool certificate) {
  json out = json::object();
  out["verdict"] = v.kind == Verdict::Kind::NotEquivalent ? "not_equivalent"
                                                          : "inconclusive";
  out["summary"] = v.summary;
  if (v.kind == Verdict::Kind::NotEquivalent) {
    // headline route: the stage that refuted the last surviving matching
    std::string route = "discrete";
    for (auto& mo : v.certificate)
      if (mo.route == "refined_check")
        route = "refined_check";
      else if (mo.route == "scale_constraints" && route != "refined_check")
        route = "scale_constraints";
      else if (mo.route == "invariant_mismatch" && route == "discrete")
        route = "invariant_mismatch";
    out["route"] = route;
  }
  if (certificate) {
    json ms = json::array();
    for (auto& mo : v.certificate) {
      json e = json::object();
      e["matching"] = matching_json(mo.matching);
      e["route"] = mo.route;
      e["refuted"] = mo.refuted;
      e["detail"] = mo.detail;
      json cs = json::array();
      for (auto& sc : mo.constraints) cs.push_back(constraint_json(sc));
      e["constraints"] = std::move(cs);
      if (!mo.constraints.empty()) {
        json sol = json::object();
        sol["unsat"] = mo.solution.unsat;
        sol["failing"] = mo.solution.failing;
        sol["root_order"] = mo.solution.root_order;
        sol["z"] = coeff_json(mo.solution.z);
        e["solution"] = std::move(sol);
      }
      json cands = json::array();
      for (auto& co : mo.candidates) {
        json ce = json::object();
        ce["c"] = coeff_json(co.c);
        ce["refuted"] = co.refuted;
        ce["check"] = refined_json(co.result);
        cands.push_back(std::move(ce));
      }
      e["candidates"] = std::move(cands);
      ms.push_back(std::move(e));
    }
    out["matchings"] = std::move(ms);
  }
  return out;
}

}  // namespace canyonlab
