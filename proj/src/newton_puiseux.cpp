#include "canyonlab/newton_puiseux.hpp"

#include <algorithm>

#include "canyonlab/errors.hpp"
#include "canyonlab/upoly.hpp"

namespace canyonlab {

namespace {

using XPoly = std::vector<PuiseuxSeries>;  // index = degree in x

struct Walker {
  Rat trunc;
  std::vector<PuiseuxRoot> out;

  void emit(const PuiseuxSeries& prefix, int mult, bool merged) {
    PuiseuxRoot r;
    r.series = prefix.truncated(RatInf(trunc));
    r.multiplicity = mult;
    r.merged = merged;
    out.push_back(std::move(r));
  }

  // F(y^mu * (rho + x'), y), coefficients re-gathered in x'
  static XPoly shift(const XPoly& F, const Rat& mu, const Coeff& rho) {
    size_t n = F.size();
    XPoly G(n);
    for (size_t i = 0; i < n; ++i) {
      if (F[i].known_zero() && F[i].trunc().is_inf()) continue;
      // y^{mu i} * c_i * (rho + x')^i
      PuiseuxSeries base = F[i].shifted(mu * Rat((long)i));
      Rat binom(1);
      Coeff pw = Coeff::from_long(1);
      for (size_t j = 0; j <= i; ++j) {
        // coefficient of x'^{i-j}: C(i, j) rho^j
        size_t k = i - j;
        G[k] = G[k] + base.scaled(pw * Coeff::from_rat(binom));
        pw = pw * rho;
        binom *= Rat((long)(i - j));
        binom /= Rat((long)(j + 1));
      }
    }
    return G;
  }

  void recurse(const XPoly& F0, const PuiseuxSeries& prefix, const Rat& base,
               int depth) {
    if (depth > 200)
      throw TruncationTooSmall("newton-puiseux recursion exceeded depth limit");
    XPoly F = F0;
    while (!F.empty() && F.back().known_zero() && F.back().trunc().is_inf())
      F.pop_back();
    if (F.empty()) return;

    // x = 0 factor: exact (or truncation-limited) zero tail
    size_t m0 = 0;
    bool tail_truncated = false;
    while (m0 < F.size() && F[m0].known_zero()) {
      if (!F[m0].trunc().is_inf()) tail_truncated = true;
      ++m0;
    }
    if (m0 >= F.size()) {
      // the whole polynomial vanished to truncation; cannot separate
      throw TruncationTooSmall("polynomial vanishes to working truncation");
    }
    if (m0 > 0) {
      emit(prefix, (int)m0, tail_truncated);
      F.erase(F.begin(), F.begin() + (long)m0);
      if (F.size() <= 1) return;
    }

    // Newton polygon: lower hull of (k, ord c_k)
    struct Pt {
      long k;
      Rat v;
    };
    std::vector<Pt> pts;
    for (size_t k = 0; k < F.size(); ++k) {
      if (F[k].known_zero()) continue;
      RatInf o = F[k].ord();
      if (o.is_inf()) continue;
      pts.push_back({(long)k, o.value()});
    }
    if (pts.size() < 2) return;
    std::vector<Pt> hull;
    for (auto& p : pts) {
      while (hull.size() >= 2) {
        auto& a = hull[hull.size() - 2];
        auto& b = hull[hull.size() - 1];
        // keep lower hull: slope(a,b) must be < slope(a,p)
        if ((b.v - a.v) * (p.k - a.k) >= (p.v - a.v) * (b.k - a.k))
          hull.pop_back();
        else
          break;
      }
      hull.push_back(p);
    }

    for (size_t e = 0; e + 1 < hull.size(); ++e) {
      const Pt& p1 = hull[e];
      const Pt& p2 = hull[e + 1];
      Rat mu = (p1.v - p2.v) / Rat(p2.k - p1.k);
      if (mu <= 0) continue;  // ord-0 (or negative) branches are not arcs

      // characteristic polynomial of the edge
      std::vector<Coeff> phi((size_t)(p2.k - p1.k) + 1, Coeff());
      for (auto& p : pts) {
        if (p.k < p1.k || p.k > p2.k) continue;
        Rat line = p1.v - mu * Rat(p.k - p1.k);
        if (p.v == line) phi[(size_t)(p.k - p1.k)] = F[(size_t)p.k].lead_coeff();
      }
      UPoly cp{std::move(phi)};
      for (auto& [rho, mult] : cp.roots()) {
        if (rho.contains_zero()) continue;  // no zero roots on an edge
        Rat abs_e = base + mu;
        PuiseuxSeries next = prefix;
        if (abs_e >= trunc) {
          emit(next, mult, true);
          continue;
        }
        next.add_term(abs_e, rho);
        XPoly G = shift(F, mu, rho);
        recurse(G, next, abs_e, depth + 1);
      }
    }
  }
};

}  // namespace

std::vector<PuiseuxRoot> newton_puiseux(const BivarPoly& F, const Rat& trunc) {
  Walker w;
  w.trunc = trunc;
  int dmax = F.deg_x();
  XPoly xp((size_t)dmax + 1);
  for (auto& [k, c] : F.monomials())
    xp[(size_t)k.first].add_term(Rat(k.second), c);
  w.recurse(xp, PuiseuxSeries(), Rat(0), 0);
  // deterministic order: by leading exponent, then midpoint of the leading
  // coefficient
  std::sort(w.out.begin(), w.out.end(), [](const PuiseuxRoot& a,
                                           const PuiseuxRoot& b) {
    RatInf oa = a.series.terms().empty() ? RatInf::infinity()
                                         : RatInf(a.series.terms().begin()->first);
    RatInf ob = b.series.terms().empty() ? RatInf::infinity()
                                         : RatInf(b.series.terms().begin()->first);
    if (oa < ob) return true;
    if (ob < oa) return false;
    if (a.series.terms().empty()) return false;
    return Coeff::mid_cmp(a.series.lead_coeff(), b.series.lead_coeff()) < 0;
  });
  return w.out;
}

}  // namespace canyonlab
