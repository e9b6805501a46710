#include "canyonlab/equivalence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "canyonlab/errors.hpp"

namespace canyonlab {

namespace {

// Card-range canyons (members of some tangent group) with lookup tables.
struct CardIndex {
  const Skeleton* sk = nullptr;
  std::vector<int> canyons;          // card-range canyon ids, sorted
  std::map<int, int> group_of;       // canyon id -> tangent group index
  std::map<int, int> cluster_of;     // canyon id -> cluster index
  std::map<int, int> omega_of;       // canyon id -> omega class (per cluster)

  explicit CardIndex(const Skeleton& s) : sk(&s) {
    for (size_t gi = 0; gi < s.tangent_groups.size(); ++gi)
      for (int cid : s.tangent_groups[gi]) {
        canyons.push_back(cid);
        group_of[cid] = (int)gi;
      }
    std::sort(canyons.begin(), canyons.end());
    for (size_t ci = 0; ci < s.clusters.size(); ++ci) {
      for (int cid : s.clusters[ci].canyons) cluster_of[cid] = (int)ci;
      for (size_t oi = 0; oi < s.clusters[ci].omega_partition.size(); ++oi)
        for (int cid : s.clusters[ci].omega_partition[oi])
          omega_of[cid] = (int)oi;
    }
  }

  const Canyon& canyon(int id) const { return sk->canyons[(size_t)id]; }
};

bool canyon_compatible(const CardIndex& F, int i, const CardIndex& G, int j) {
  const Canyon& a = F.canyon(i);
  const Canyon& b = G.canyon(j);
  if (a.degree != b.degree || a.h != b.h) return false;
  // bar height of the enclosing cluster
  const Cluster& ca = F.sk->clusters[(size_t)F.cluster_of.at(i)];
  const Cluster& cb = G.sk->clusters[(size_t)G.cluster_of.at(j)];
  return ca.h == cb.h && ca.degree == cb.degree &&
         ca.canyons.size() == cb.canyons.size() &&
         ca.omega_partition.size() == cb.omega_partition.size();
}

// Relational constraints against the already-assigned prefix.
bool pair_compatible(const CardIndex& F, const CardIndex& G,
                     const std::vector<int>& fc, const std::vector<int>& img,
                     size_t pos, int j) {
  int i = fc[pos];
  for (size_t t = 0; t < pos; ++t) {
    int i2 = fc[t], j2 = img[t];
    if ((F.group_of.at(i) == F.group_of.at(i2)) !=
        (G.group_of.at(j) == G.group_of.at(j2)))
      return false;
    bool same_cl_f = F.cluster_of.at(i) == F.cluster_of.at(i2);
    bool same_cl_g = G.cluster_of.at(j) == G.cluster_of.at(j2);
    if (same_cl_f != same_cl_g) return false;
    if (same_cl_f) {
      const Cluster& cf = F.sk->clusters[(size_t)F.cluster_of.at(i)];
      const Cluster& cg = G.sk->clusters[(size_t)G.cluster_of.at(j)];
      if (cf.contact(i, i2) != cg.contact(j, j2)) return false;
      if ((F.omega_of.at(i) == F.omega_of.at(i2)) !=
          (G.omega_of.at(j) == G.omega_of.at(j2)))
        return false;
    }
  }
  return true;
}

void derive_maps(const CardIndex& F, const CardIndex& G, Matching& m) {
  std::set<std::pair<int, int>> gr, cl;
  for (auto& [i, j] : m.canyons) {
    gr.insert({F.group_of.at(i), G.group_of.at(j)});
    cl.insert({F.cluster_of.at(i), G.cluster_of.at(j)});
  }
  m.groups.assign(gr.begin(), gr.end());
  m.clusters.assign(cl.begin(), cl.end());
}

void backtrack(const CardIndex& F, const CardIndex& G,
               const std::vector<int>& fc, std::vector<int>& img,
               std::vector<bool>& used, size_t pos, long cap,
               std::vector<Matching>& out) {
  if (pos == fc.size()) {
    if ((long)out.size() >= cap)
      throw CombinatorialBlowup("matching enumeration exceeds cap " +
                                std::to_string(cap));
    Matching m;
    for (size_t t = 0; t < fc.size(); ++t) m.canyons.push_back({fc[t], img[t]});
    derive_maps(F, G, m);
    out.push_back(std::move(m));
    return;
  }
  for (size_t gj = 0; gj < G.canyons.size(); ++gj) {
    if (used[gj]) continue;
    int j = G.canyons[gj];
    if (!canyon_compatible(F, fc[pos], G, j)) continue;
    if (!pair_compatible(F, G, fc, img, pos, j)) continue;
    used[gj] = true;
    img[pos] = j;
    backtrack(F, G, fc, img, used, pos + 1, cap, out);
    used[gj] = false;
  }
}

ScaleConstraint make_constraint(const Rat& k, const Coeff& v,
                                std::string origin) {
  ScaleConstraint sc;
  sc.k = k;
  sc.v = v;
  long p = rat_num_l(k);
  long q = rat_den_l(k);
  long qs = q;
  if (p < 0) {
    p = -p;
    qs = -q;
  }
  sc.p = p;
  sc.q = q;
  sc.w = v.pow_int(qs);
  sc.origin = std::move(origin);
  return sc;
}

// y^(1/q) -> zeta * y^(1/q): the coefficient at exponent m/q picks up
// zeta^m. Switching the branch like this walks through the conjugate
// arcs of the canyon on the composition side.
PuiseuxSeries twist(const PuiseuxSeries& s, const Coeff& zeta, long q) {
  PuiseuxSeries out;
  for (auto& [e, c] : s.terms()) {
    Rat m = e * q;
    out.add_term(e, c * zeta.pow_int(rat_num_l(m)));
  }
  return out.truncated(s.trunc());
}

}  // namespace

int Matching::image_of(int f_canyon) const {
  for (auto& [i, j] : canyons)
    if (i == f_canyon) return j;
  throw ComputeError("matching: canyon not in the card range");
}

std::vector<Matching> enumerate_matchings(const IdentityCard& f,
                                          const IdentityCard& g, long cap) {
  CardIndex F(f.skel), G(g.skel);
  std::vector<Matching> out;
  if (F.canyons.size() != G.canyons.size()) return out;
  if (F.sk->tangent_groups.size() != G.sk->tangent_groups.size()) return out;
  if (F.sk->clusters.size() != G.sk->clusters.size()) return out;
  std::vector<int> img(F.canyons.size(), -1);
  std::vector<bool> used(G.canyons.size(), false);
  backtrack(F, G, F.canyons, img, used, 0, cap, out);
  return out;
}

ConstraintBuild scale_constraints(const IdentityCard& f, const IdentityCard& g,
                                  const Matching& m) {
  ConstraintBuild out;
  const Skeleton& sf = f.skel;
  const Skeleton& sg = g.skel;
  auto tag = [](const char* kind, int i, int j) {
    return std::string(kind) + "(" + std::to_string(i) + "," +
           std::to_string(j) + ")";
  };

  for (auto& [i, j] : m.canyons) {
    const Canyon& a = sf.canyons[(size_t)i];
    const Canyon& b = sg.canyons[(size_t)j];
    out.constraints.push_back(
        make_constraint(a.h, a.a / b.a, tag("first_level", i, j)));
  }

  CardIndex F(sf), G(sg);
  for (size_t s = 0; s < m.canyons.size(); ++s)
    for (size_t t = s + 1; t < m.canyons.size(); ++t) {
      auto [i1, j1] = m.canyons[s];
      auto [i2, j2] = m.canyons[t];
      if (F.cluster_of.at(i1) != F.cluster_of.at(i2)) continue;
      SecondLevel pf = second_level(sf, i1, i2);
      SecondLevel pg = second_level(sg, j1, j2);
      if (!(pf.H == pg.H)) {
        out.mismatch = true;
        out.detail = "second-level order differs on pair " +
                     tag("", i1, i2) + ": " + pf.H.str() + " vs " + pg.H.str();
        return out;
      }
      if (!pf.applicable) continue;
      out.constraints.push_back(
          make_constraint(Rat(pf.H.value() - pf.h), pf.diff / pg.diff,
                          tag("second_level", i1, i2)));

      for (size_t u = t + 1; u < m.canyons.size(); ++u) {
        auto [i3, j3] = m.canyons[u];
        if (F.cluster_of.at(i1) != F.cluster_of.at(i3)) continue;
        ThirdLevel tf = third_level(sf, i1, i2, i3);
        ThirdLevel tg = third_level(sg, j1, j2, j3);
        if (tf.applicable != tg.applicable ||
            (tf.applicable && (!(tf.H == tg.H) || !(tf.Hp == tg.Hp)))) {
          out.mismatch = true;
          out.detail = "third-level record differs on triple (" +
                       std::to_string(i1) + "," + std::to_string(i2) + "," +
                       std::to_string(i3) + ")";
          return out;
        }
        if (!tf.applicable) continue;
        out.constraints.push_back(make_constraint(
            Rat(tf.Hp.value() - tf.H.value()), tf.diff / tg.diff,
            tag("third_level", i1, i3)));
      }
    }
  return out;
}

ScaleSolution solve_scale_constraints(
    const std::vector<ScaleConstraint>& constraints) {
  if (constraints.empty())
    throw ComputeError("solve_scale_constraints: no constraints");
  ScaleSolution sol;
  Coeff one = Coeff::from_rat(Rat(1));
  long g = 0;
  Coeff z = one;
  for (size_t i = 0; i < constraints.size(); ++i) {
    const ScaleConstraint& sc = constraints[i];
    if (sc.p == 0) {
      if ((sc.w - one).surely_nonzero()) {
        sol.unsat = true;
        sol.failing = (int)i;
        return sol;
      }
      continue;
    }
    if (g == 0) {
      g = sc.p;
      z = sc.w;
      continue;
    }
    // extended gcd: alpha*g + beta*p = gg, then c^gg = z^alpha * w^beta
    long old_r = g, r = sc.p;
    long old_a = 1, a = 0, old_b = 0, b = 1;
    while (r != 0) {
      long qq = old_r / r;
      std::tie(old_r, r) = std::pair<long, long>(r, old_r - qq * r);
      std::tie(old_a, a) = std::pair<long, long>(a, old_a - qq * a);
      std::tie(old_b, b) = std::pair<long, long>(b, old_b - qq * b);
    }
    z = z.pow_int(old_a) * sc.w.pow_int(old_b);
    g = old_r;
  }
  if (g == 0) {
    sol.root_order = 0;  // every relation was trivial: c unconstrained
    return sol;
  }
  sol.root_order = g;
  sol.z = z;
  for (size_t i = 0; i < constraints.size(); ++i) {
    if (constraints[i].p == 0) continue;
    Coeff lhs = z.pow_int(constraints[i].p / g);
    if ((lhs - constraints[i].w).surely_nonzero()) {
      sol.unsat = true;
      sol.failing = (int)i;
      return sol;
    }
  }
  sol.candidates = z.nth_roots((unsigned long)g);
  return sol;
}

RefinedResult refined_check(const IdentityCard& f, const IdentityCard& g,
                            const Matching& m, const Coeff& c) {
  const Skeleton& sf = f.skel;
  const Skeleton& sg = g.skel;
  CardIndex F(sf);
  RefinedResult ok;
  ok.consistent = true;

  for (size_t s = 0; s < m.canyons.size(); ++s)
    for (size_t t = s + 1; t < m.canyons.size(); ++t) {
      auto [i1, j1] = m.canyons[s];
      auto [i2, j2] = m.canyons[t];
      if (F.cluster_of.at(i1) != F.cluster_of.at(i2)) continue;
      const Cluster& cl = sf.clusters[(size_t)F.cluster_of.at(i1)];
      const Canyon& a1 = sf.canyons[(size_t)i1];
      const Canyon& a2 = sf.canyons[(size_t)i2];
      const Canyon& b1 = sg.canyons[(size_t)j1];
      const Canyon& b2 = sg.canyons[(size_t)j2];
      Rat h = a1.h;
      Rat d = std::min(a1.degree, a2.degree);
      Rat delta = cl.contact(i1, i2);
      // the free tail parameter of the pair enters at h + delta - 1; the
      // development is only pinned down below h + d - 2
      Rat bound = std::min(Rat(h + delta - 1), Rat(h + d - 2));

      long q = std::lcm(b1.f_series.common_denominator(),
                        b2.f_series.common_denominator());
      std::vector<Coeff> roots = Coeff::from_rat(Rat(1)).nth_roots(
          (unsigned long)std::max<long>(q, 1));

      bool pair_ok = false;
      RefinedResult first_fail;
      bool have_fail = false;
      for (const Coeff& z1 : roots) {
        for (const Coeff& z2 : roots) {
          PuiseuxSeries tg1 = twist(b1.f_series, z1, q);
          PuiseuxSeries tg2 = twist(b2.f_series, z2, q);
          try {
            Development dev = develop_phi2(h, a1.f_series, tg1, c, d);
            PuiseuxSeries p = dev.series();
            PuiseuxSeries lhs = a1.f_series - a2.f_series;
            PuiseuxSeries rhs = tg1.compose(p, RatInf(bound)) -
                                tg2.compose(p, RatInf(bound));
            PuiseuxSeries r = (lhs - rhs).truncated(RatInf(bound));
            RatInf e = r.ord();
            if (e.is_inf()) {
              pair_ok = true;
              break;
            }
            if (!have_fail) {
              have_fail = true;
              first_fail.consistent = false;
              first_fail.pair_f = i1;
              first_fail.pair_g = i2;
              first_fail.exponent = e.value();
              first_fail.residual = r.coeff(e.value());
              first_fail.have_dev = true;
              first_fail.dev = dev;
              first_fail.detail = "residual survives below the window top";
            }
          } catch (const InconsistentDevelopment& ex) {
            if (!have_fail) {
              have_fail = true;
              first_fail.consistent = false;
              first_fail.pair_f = i1;
              first_fail.pair_g = i2;
              first_fail.exponent = h;
              first_fail.detail =
                  std::string("development inconsistent: ") + ex.what();
            }
          }
        }
        if (pair_ok) break;
      }
      if (!pair_ok && have_fail) return first_fail;
      if (!pair_ok && !have_fail)
        // no branch produced a decision; treat as ambiguous
        throw PrecisionExhausted("refined_check: no branch decided");
    }
  return ok;
}

Verdict decide_cards(const IdentityCard& f, const IdentityCard& g,
                     long matching_cap) {
  Verdict v;
  std::vector<Matching> matchings;
  try {
    matchings = enumerate_matchings(f, g, matching_cap);
  } catch (const CombinatorialBlowup& ex) {
    v.kind = Verdict::Kind::Inconclusive;
    v.summary = ex.what();
    return v;
  }
  if (matchings.empty()) {
    v.kind = Verdict::Kind::NotEquivalent;
    v.summary = "discrete invariants differ: no canyon matching exists";
    return v;
  }

  bool all_refuted = true;
  for (const Matching& m : matchings) {
    MatchingOutcome out;
    out.matching = m;
    try {
      ConstraintBuild cb = scale_constraints(f, g, m);
      if (cb.mismatch) {
        out.refuted = true;
        out.route = "invariant_mismatch";
        out.detail = cb.detail;
      } else if (cb.constraints.empty()) {
        out.route = "survived";
        out.detail = "no ladder constraints available";
      } else {
        out.constraints = cb.constraints;
        out.solution = solve_scale_constraints(cb.constraints);
        if (out.solution.unsat) {
          out.refuted = true;
          out.route = "scale_constraints";
          out.detail = "relations on c have no common solution (constraint " +
                       std::to_string(out.solution.failing) + ")";
        } else if (out.solution.candidates.empty()) {
          out.route = "survived";
          out.detail = "scale constant unconstrained";
        } else {
          bool all_c = true;
          for (const Coeff& c : out.solution.candidates) {
            CandidateOutcome co;
            co.c = c;
            co.result = refined_check(f, g, m, c);
            co.refuted = !co.result.consistent;
            all_c = all_c && co.refuted;
            out.candidates.push_back(std::move(co));
          }
          out.refuted = all_c;
          out.route = all_c ? "refined_check" : "survived";
          if (!all_c) out.detail = "a candidate c passes the refined check";
        }
      }
    } catch (const ComputeError& ex) {
      out.refuted = false;
      out.route = "survived";
      out.detail = std::string("ambiguous: ") + ex.what();
    }
    all_refuted = all_refuted && out.refuted;
    v.certificate.push_back(std::move(out));
  }
  v.kind =
      all_refuted ? Verdict::Kind::NotEquivalent : Verdict::Kind::Inconclusive;
  v.summary = all_refuted ? "every matching refuted"
                          : "at least one matching not refuted";
  return v;
}

Verdict decide(const BivarPoly& f, const BivarPoly& g,
               std::optional<Rat> trunc_override) {
  try {
    IdentityCard cf = identity_card(f, trunc_override);
    IdentityCard cg = identity_card(g, trunc_override);
    return decide_cards(cf, cg);
  } catch (const ComputeError& ex) {
    Verdict v;
    v.kind = Verdict::Kind::Inconclusive;
    v.summary = std::string("card computation failed: ") + ex.what();
    return v;
  }
}

}  // namespace canyonlab
