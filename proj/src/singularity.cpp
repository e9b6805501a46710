#include "canyonlab/singularity.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "canyonlab/errors.hpp"
#include "canyonlab/upoly.hpp"

namespace canyonlab {

namespace {

bool mini_regular(const BivarPoly& f) {
  int m = f.total_order();
  auto chart = f.initial_form_chart();
  if ((int)chart.size() != m + 1) return false;
  return chart.back().surely_nonzero();
}

// z-Taylor coefficients of g(gamma(y) + z, y): c_k = g^(k)(gamma) / k!
std::vector<PuiseuxSeries> taylor_z(const BivarPoly& g,
                                    const PuiseuxSeries& gamma) {
  std::vector<PuiseuxSeries> out;
  BivarPoly d = g;
  Rat fact(1);
  for (long k = 0; !d.empty(); ++k) {
    PuiseuxSeries ck = d.substitute_x(gamma);
    if (k > 1) ck = ck.scaled(Coeff::from_rat(Rat(1) / fact));
    out.push_back(std::move(ck));
    d = d.dx();
    fact *= Rat(k + 1);
  }
  return out;
}

// contact >= threshold, with agreement past the truncation counted as yes
bool contact_at_least(const PuiseuxSeries& a, const PuiseuxSeries& b,
                      const Rat& threshold) {
  try {
    return contact_order(a, b) >= threshold;
  } catch (const TruncationAmbiguous&) {
    return true;
  }
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int i) { return p[i] == i ? i : p[i] = find(p[i]); }
  void unite(int i, int j) { p[find(i)] = find(j); }
};

}  // namespace

std::pair<BivarPoly, Rat> mini_regularize(const BivarPoly& f) {
  if (f.empty()) throw ComputeError("mini_regularize: zero polynomial");
  if (mini_regular(f)) return {f, Rat(0)};
  int m = f.total_order();
  long num_limit = 4L * m + 8;
  for (long den = 1; den <= 8; ++den) {
    for (long num = 1; num <= num_limit; ++num) {
      if (den > 1 && std::gcd(num, den) != 1) continue;
      for (long sgn : {1L, -1L}) {
        Rat lambda(sgn * num, den);
        BivarPoly g = f.shear_y(lambda);
        if (mini_regular(g)) return {g, lambda};
      }
    }
  }
  throw ComputeError("mini_regularize: no shear found");
}

std::vector<Coeff> tangent_cone(const BivarPoly& f) {
  auto chart = f.initial_form_chart();
  std::vector<Coeff> slopes;
  for (auto& [root, mult] : UPoly(chart).roots()) {
    (void)mult;
    slopes.push_back(root);
  }
  return slopes;
}

std::vector<PolarArc> polar_arcs(const BivarPoly& f, const Rat& trunc) {
  BivarPoly fx = f.dx();
  auto cone = tangent_cone(f);
  std::vector<PolarArc> out;
  for (auto& root : newton_puiseux(fx, trunc)) {
    PuiseuxSeries fs = f.substitute_x(root.series);
    RatInf o = fs.ord();
    // roots shared with f are branches of the curve, not polars
    if (o.is_inf() || o.value() >= trunc - Rat(2)) continue;
    PolarArc p;
    p.arc = root.series;
    p.h = o.value();
    p.a = fs.coeff(p.h);
    p.f_series = std::move(fs);
    RatInf ao = root.series.known_zero() ? RatInf::infinity()
                                         : root.series.ord();
    if (!ao.is_inf() && ao.value() < Rat(1)) {
      p.steep = true;
      p.tangential = false;
    } else if (!ao.is_inf() && ao.value() == Rat(1)) {
      p.tangent = root.series.lead_coeff();
    }
    // else: order > 1, tangent line x = 0, slope stays zero
    if (!p.steep) {
      for (auto& s : cone) {
        if (s.overlaps(p.tangent)) {
          p.tangential = true;
          break;
        }
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

struct TreeBuilder {
  const std::vector<PuiseuxRoot>* roots;
  std::vector<KuoLuNode> nodes;

  Rat pair_contact(int i, int j) const {
    PuiseuxSeries d = (*roots)[(size_t)i].series - (*roots)[(size_t)j].series;
    RatInf o = d.ord();
    if (o.is_inf()) {
      // agreement to the working truncation; split at the bound
      if (d.trunc().is_inf())
        throw ComputeError("kuo_lu_tree: identical root entries");
      return d.trunc().value();
    }
    return o.value();
  }

  int build(std::vector<int> idx, const Rat& low, int parent) {
    int id = (int)nodes.size();
    nodes.emplace_back();
    nodes[(size_t)id].id = id;
    nodes[(size_t)id].parent = parent;
    nodes[(size_t)id].low = low;
    nodes[(size_t)id].roots = idx;
    if (idx.size() == 1) {
      nodes[(size_t)id].height = RatInf::infinity();
      return id;
    }
    Rat q = pair_contact(idx[0], idx[1]);
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = i + 1; j < idx.size(); ++j)
        q = std::min(q, pair_contact(idx[i], idx[j]));
    nodes[(size_t)id].height = RatInf(q);
    // contact is an ultrametric, so "contact > q" partitions the set
    UnionFind uf((int)idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = i + 1; j < idx.size(); ++j)
        if (pair_contact(idx[i], idx[j]) > q) uf.unite((int)i, (int)j);
    std::map<int, std::vector<int>> groups;
    for (size_t i = 0; i < idx.size(); ++i)
      groups[uf.find((int)i)].push_back(idx[i]);
    for (auto& [rep, g] : groups) {
      (void)rep;
      int child = build(g, q, id);
      nodes[(size_t)id].children.push_back(child);
    }
    return id;
  }
};

}  // namespace

KuoLuTree kuo_lu_tree(const BivarPoly& f, const Rat& trunc) {
  KuoLuTree t;
  t.roots = newton_puiseux(f, trunc);
  if (t.roots.empty()) return t;
  TreeBuilder b;
  b.roots = &t.roots;
  std::vector<int> all((size_t)t.roots.size());
  std::iota(all.begin(), all.end(), 0);
  t.root_node = b.build(std::move(all), Rat(0), -1);
  t.nodes = std::move(b.nodes);
  return t;
}

int bar_of(const KuoLuTree& tree, const PolarArc& gamma) {
  if (tree.root_node < 0) throw BarMismatch("bar_of: empty tree");
  auto contact = [&](int ri) {
    PuiseuxSeries d = gamma.arc - tree.roots[(size_t)ri].series;
    RatInf o = d.ord();
    if (o.is_inf()) {
      if (d.trunc().is_inf())
        throw BarMismatch("bar_of: polar coincides with a root of f");
      return d.trunc().value();
    }
    return o.value();
  };
  // factorization identity: ord f(gamma) = sum of contacts with the roots
  Rat sum(0);
  for (size_t i = 0; i < tree.roots.size(); ++i)
    sum += contact((int)i) * Rat(tree.roots[i].multiplicity);
  if (sum != gamma.h)
    throw BarMismatch("bar_of: contact sum " + rat_str(sum) +
                      " != h = " + rat_str(gamma.h));
  int cur = tree.root_node;
  for (;;) {
    const KuoLuNode& n = tree.nodes[(size_t)cur];
    if (n.height.is_inf()) return cur;
    int next = -1;
    for (int c : n.children) {
      bool all_above = true;
      for (int ri : tree.nodes[(size_t)c].roots)
        if (!(contact(ri) > n.height.value())) {
          all_above = false;
          break;
        }
      if (all_above) {
        next = c;
        break;
      }
    }
    if (next < 0) return cur;
    cur = next;
  }
}

RatInf gradient_lambda(const BivarPoly& f, const PuiseuxSeries& gamma,
                       const RatInf& q) {
  RatInf best = RatInf::infinity();
  for (const BivarPoly& comp : {f.dx(), f.dy()}) {
    auto tay = taylor_z(comp, gamma);
    for (size_t k = 0; k < tay.size(); ++k) {
      if (k > 0 && q.is_inf()) break;
      RatInf o = tay[k].ord();
      if (o.is_inf()) continue;
      RatInf v = k == 0 ? o : RatInf(o.value() + Rat((long)k) * q.value());
      best = std::min(best, v);
    }
  }
  return best;
}

Rat gradient_degree(const BivarPoly& f, const PolarArc& gamma) {
  // lambda(q) = min over both gradient components of ord c_k + k*q, with
  // c_k the z-Taylor coefficients along the arc; the degree is the largest
  // breakpoint (lambda_inf - ord c_k) / k, i.e. the smallest q at which
  // lambda(q) reaches its limit value
  RatInf linf_i = gradient_lambda(f, gamma.arc, RatInf::infinity());
  if (linf_i.is_inf())
    throw TruncationTooSmall("gradient_degree: gradient vanishes to truncation");
  Rat linf = linf_i.value();
  Rat d(1);
  for (const BivarPoly& comp : {f.dx(), f.dy()}) {
    auto tay = taylor_z(comp, gamma.arc);
    for (size_t k = 1; k < tay.size(); ++k) {
      RatInf o = tay[k].ord();
      if (o.is_inf() || o.value() >= linf) continue;
      d = std::max(d, Rat((linf - o.value()) / Rat((long)k)));
    }
  }
  return d;
}

std::vector<Canyon> group_canyons(const std::vector<PolarArc>& polars) {
  int n = (int)polars.size();
  UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (polars[(size_t)i].d != polars[(size_t)j].d) continue;
      if (contact_at_least(polars[(size_t)i].arc, polars[(size_t)j].arc,
                           polars[(size_t)i].d))
        uf.unite(i, j);
    }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  std::vector<Canyon> out;
  // deterministic order: by smallest member index
  std::vector<std::vector<int>> ordered;
  for (auto& [rep, g] : groups) {
    (void)rep;
    ordered.push_back(g);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  for (auto& g : ordered) {
    Canyon c;
    c.id = (int)out.size();
    c.members = g;
    c.rep = g[0];
    const PolarArc& r = polars[(size_t)g[0]];
    c.degree = r.d;
    c.h = r.h;
    c.a = r.a;
    c.tangent = r.tangent;
    c.tangential = r.tangential;
    c.bar_id = r.bar_id;
    c.f_series = r.f_series;
    for (int m : g) {
      const PolarArc& p = polars[(size_t)m];
      if (p.h != c.h)
        throw InconsistentCanyon("canyon members disagree on h");
      if (!p.a.overlaps(c.a))
        throw InconsistentCanyon("canyon members disagree on a");
      if (!p.steep && !p.tangent.overlaps(c.tangent))
        throw InconsistentCanyon("canyon members disagree on tangent");
      if (p.bar_id != c.bar_id)
        throw InconsistentCanyon("canyon members disagree on bar");
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

Skeleton analyze_at(BivarPoly f, const Rat& shear, const Rat& trunc) {
  Skeleton sk;
  sk.f = f;
  sk.shear = shear;
  sk.trunc = trunc;
  sk.tangent_cone = tangent_cone(f);
  sk.polars = polar_arcs(f, trunc);
  sk.tree = kuo_lu_tree(f, trunc);
  for (auto& p : sk.polars) {
    p.d = gradient_degree(f, p);
    if (p.tangential) p.bar_id = bar_of(sk.tree, p);
  }
  sk.canyons = group_canyons(sk.polars);

  // tangent-line groups over the card-relevant canyons
  std::vector<int> relevant;
  for (auto& c : sk.canyons)
    if (c.tangential && c.degree > Rat(1)) relevant.push_back(c.id);
  UnionFind uf((int)relevant.size());
  for (size_t i = 0; i < relevant.size(); ++i)
    for (size_t j = i + 1; j < relevant.size(); ++j)
      if (sk.canyons[(size_t)relevant[i]].tangent.overlaps(
              sk.canyons[(size_t)relevant[j]].tangent))
        uf.unite((int)i, (int)j);
  std::map<int, std::vector<int>> tg;
  for (size_t i = 0; i < relevant.size(); ++i)
    tg[uf.find((int)i)].push_back(relevant[i]);
  for (auto& [rep, g] : tg) {
    (void)rep;
    sk.tangent_groups.push_back(g);
  }
  std::sort(sk.tangent_groups.begin(), sk.tangent_groups.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });

  // clusters: key (tangent group, degree, bar)
  std::map<std::tuple<int, Rat, int>, std::vector<int>> buckets;
  for (size_t gi = 0; gi < sk.tangent_groups.size(); ++gi)
    for (int cid : sk.tangent_groups[gi]) {
      const Canyon& c = sk.canyons[(size_t)cid];
      buckets[{(int)gi, c.degree, c.bar_id}].push_back(cid);
    }
  for (auto& [key, cids] : buckets) {
    Cluster cl;
    cl.tangent_group = std::get<0>(key);
    cl.degree = std::get<1>(key);
    cl.bar_id = std::get<2>(key);
    cl.h = sk.canyons[(size_t)cids[0]].h;
    cl.canyons = cids;
    for (size_t i = 0; i < cids.size(); ++i)
      for (size_t j = i + 1; j < cids.size(); ++j) {
        Rat k = contact_order(sk.polars[(size_t)sk.canyons[(size_t)cids[i]].rep].arc,
                              sk.polars[(size_t)sk.canyons[(size_t)cids[j]].rep].arc);
        cl.contacts.emplace_back(cids[i], cids[j], k);
      }
    for (int ci : cids) {
      std::vector<Rat> row;
      for (auto& [i, j, k] : cl.contacts)
        if (i == ci || j == ci) row.push_back(k);
      std::sort(row.begin(), row.end());
      cl.contact_row.push_back(std::move(row));
    }
    // sub-clusters: canyons with equal contact multisets
    std::vector<bool> used(cids.size(), false);
    for (size_t i = 0; i < cids.size(); ++i) {
      if (used[i]) continue;
      std::vector<int> part{cids[i]};
      used[i] = true;
      for (size_t j = i + 1; j < cids.size(); ++j)
        if (!used[j] && cl.contact_row[j] == cl.contact_row[i]) {
          part.push_back(cids[j]);
          used[j] = true;
        }
      cl.omega_partition.push_back(std::move(part));
    }
    sk.clusters.push_back(std::move(cl));
  }
  return sk;
}

}  // namespace

Rat Cluster::contact(int ci, int cj) const {
  for (auto& [i, j, k] : contacts)
    if ((i == ci && j == cj) || (i == cj && j == ci)) return k;
  throw ComputeError("cluster contact: pair not in this cluster");
}

Skeleton analyze(const BivarPoly& f_in, std::optional<Rat> trunc_override) {
  auto [f, lambda] = mini_regularize(f_in);
  if (trunc_override) return analyze_at(f, lambda, *trunc_override);
  int dy = 0;
  for (auto& [k, c] : f.monomials()) {
    (void)c;
    dy = std::max(dy, k.second);
  }
  Rat t0 = Rat(2 * (f.deg_x() + dy) + 4);
  for (int attempt = 0; attempt < 3; ++attempt) {
    try {
      Skeleton sk = analyze_at(f, lambda, t0);
      // every invariant lives below h + d - 1; re-run if the guess was short
      Rat need(0);
      for (auto& p : sk.polars) need = std::max(need, Rat(p.h + p.d + Rat(2)));
      if (need <= t0) return sk;
      t0 = need + Rat(2);
    } catch (const TruncationTooSmall&) {
      t0 *= Rat(2);
    }
  }
  return analyze_at(f, lambda, t0);
}

}  // namespace canyonlab
