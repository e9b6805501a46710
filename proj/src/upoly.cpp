#include "canyonlab/upoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace canyonlab {

namespace {

Coeff mid_only(const Coeff& c) {
  Coeff out(c);
  Coeff z(c.prec());
  // rebuild with zero radius
  Coeff m(c.prec());
  mpfr_set(const_cast<__mpfr_struct*>(m.re()), c.re(), MPFR_RNDN);
  mpfr_set(const_cast<__mpfr_struct*>(m.im()), c.im(), MPFR_RNDN);
  return m;
}

double log2_abs(const Coeff& c) {
  // crude log2 of midpoint magnitude via exponents; -inf -> very small
  if (mpfr_zero_p(c.re()) && mpfr_zero_p(c.im())) return -1e9;
  long er = mpfr_zero_p(c.re()) ? LONG_MIN : mpfr_get_exp(c.re());
  long ei = mpfr_zero_p(c.im()) ? LONG_MIN : mpfr_get_exp(c.im());
  return (double)std::max(er, ei);
}

}  // namespace

UPoly::UPoly(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::from_longs(const std::vector<long>& c) {
  std::vector<Coeff> v;
  v.reserve(c.size());
  for (long x : c) v.push_back(Coeff::from_long(x));
  return UPoly(std::move(v));
}

Coeff UPoly::eval(const Coeff& z) const {
  Coeff acc(z.prec());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<std::pair<Coeff, int>> UPoly::roots() const {
  std::vector<std::pair<Coeff, int>> out;
  if (degree() < 1) return out;

  std::vector<Coeff> c = c_;
  // Deflate exact-ish zero roots first.
  int zero_mult = 0;
  while ((int)c.size() > 1 && c.front().is_zero()) {
    c.erase(c.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) out.emplace_back(Coeff(c_.front().prec()), zero_mult);

  int n = (int)c.size() - 1;
  if (n >= 1) {
    mpfr_prec_t prec = c.back().prec();
    const Coeff lead = c.back();

    // Cauchy-style radius bound from coefficient exponents.
    double llead = log2_abs(lead);
    double lr = -1e9;
    for (int j = 0; j < n; ++j) {
      double lj = log2_abs(c[(size_t)j]);
      if (lj < -1e8) continue;
      lr = std::max(lr, (lj - llead) / (double)(n - j));
    }
    double radius = (lr < -1e8) ? 1.0 : std::exp2(std::min(lr + 1.0, 60.0));
    if (!(radius > 0)) radius = 1.0;

    // Durand-Kerner on midpoints.
    std::vector<Coeff> z;
    for (int k = 0; k < n; ++k) {
      double th = 2.0 * M_PI * k / n + 0.4;
      Coeff zk(prec);
      mpfr_set_d(const_cast<__mpfr_struct*>(zk.re()), radius * std::cos(th),
                 MPFR_RNDN);
      mpfr_set_d(const_cast<__mpfr_struct*>(zk.im()), radius * std::sin(th),
                 MPFR_RNDN);
      z.push_back(zk);
    }
    std::vector<Coeff> cm;
    for (auto& cc : c) cm.push_back(mid_only(cc));

    auto eval_mid = [&](const Coeff& w) {
      Coeff acc(prec);
      for (auto it = cm.rbegin(); it != cm.rend(); ++it)
        acc = mid_only(acc * w + *it);
      return acc;
    };

    const int max_iter = 600;
    for (int iter = 0; iter < max_iter; ++iter) {
      bool moved = false;
      for (int i = 0; i < n; ++i) {
        Coeff denom = mid_only(cm.back());
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          Coeff d = mid_only(z[(size_t)i] - z[(size_t)j]);
          if (mpfr_zero_p(d.re()) && mpfr_zero_p(d.im())) {
            // nudge coincident iterates apart
            mpfr_set_d(const_cast<__mpfr_struct*>(d.re()), 1e-20, MPFR_RNDN);
          }
          denom = mid_only(denom * d);
        }
        Coeff w;
        try {
          w = mid_only(eval_mid(z[(size_t)i]) / denom);
        } catch (const DivisionByUncertainZero&) {
          continue;
        }
        double step = log2_abs(w);
        double mag = std::max(log2_abs(z[(size_t)i]), 0.0);
        if (step > mag - (double)prec - 8) moved = true;
        z[(size_t)i] = mid_only(z[(size_t)i] - w);
      }
      if (!moved) break;
    }

    // Certify: enclosure radius n * |W_i| with ball-evaluated numerator.
    std::vector<Coeff> disks;
    for (int i = 0; i < n; ++i) {
      Coeff denom = lead;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        denom = denom * (z[(size_t)i] - z[(size_t)j]);
      }
      Coeff num(prec);
      {
        Coeff acc(prec);
        for (int k = n; k >= 0; --k) acc = acc * z[(size_t)i] + c[(size_t)k];
        num = acc;
      }
      Coeff disk = z[(size_t)i];
      mpfr_t r;
      mpfr_init2(r, 40);
      bool certified = false;
      if (denom.surely_nonzero()) {
        Coeff w = num / denom;
        // r = n * (|w.mid| + w.rad)
        mpfr_hypot(r, w.re(), w.im(), MPFR_RNDU);
        mpfr_add(r, r, w.rad(), MPFR_RNDU);
        mpfr_mul_ui(r, r, (unsigned long)n, MPFR_RNDU);
        certified = true;
      }
      if (!certified) {
        // coincident iterates: fall back to a pessimistic disk, the
        // cluster merge below will absorb it
        mpfr_set_d(r, 1e-15, MPFR_RNDU);
      }
      Coeff d2(prec);
      mpfr_set(const_cast<__mpfr_struct*>(d2.re()), disk.re(), MPFR_RNDN);
      mpfr_set(const_cast<__mpfr_struct*>(d2.im()), disk.im(), MPFR_RNDN);
      mpfr_add(const_cast<__mpfr_struct*>(d2.rad()), d2.rad(), r, MPFR_RNDU);
      mpfr_clear(r);
      disks.push_back(d2);
    }

    // Merge overlapping disks into clusters; multiplicity = cluster size.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
      while (parent[(size_t)a] != a) a = parent[(size_t)a] = parent[(size_t)parent[(size_t)a]];
      return a;
    };
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (disks[(size_t)i].overlaps(disks[(size_t)j]))
          parent[(size_t)find(i)] = find(j);
    std::vector<std::vector<int>> groups(n);
    for (int i = 0; i < n; ++i) groups[(size_t)find(i)].push_back(i);

    for (auto& g : groups) {
      if (g.empty()) continue;
      Coeff center(prec);
      for (int i : g) center = center + disks[(size_t)i];
      center = center * Coeff::from_rat(Rat(1, (long)g.size()), prec);
      // widen to cover all member disks
      mpfr_t cover, d;
      mpfr_init2(cover, 40);
      mpfr_init2(d, 40);
      mpfr_set(cover, center.rad(), MPFR_RNDU);
      for (int i : g) {
        mpfr_t dr, di;
        mpfr_init2(dr, 64);
        mpfr_init2(di, 64);
        mpfr_sub(dr, center.re(), disks[(size_t)i].re(), MPFR_RNDA);
        mpfr_sub(di, center.im(), disks[(size_t)i].im(), MPFR_RNDA);
        mpfr_hypot(d, dr, di, MPFR_RNDU);
        mpfr_add(d, d, disks[(size_t)i].rad(), MPFR_RNDU);
        if (mpfr_cmp(d, cover) > 0) mpfr_set(cover, d, MPFR_RNDU);
        mpfr_clear(dr);
        mpfr_clear(di);
      }
      Coeff cl(prec);
      mpfr_set(const_cast<__mpfr_struct*>(cl.re()), center.re(), MPFR_RNDN);
      mpfr_set(const_cast<__mpfr_struct*>(cl.im()), center.im(), MPFR_RNDN);
      mpfr_set(const_cast<__mpfr_struct*>(cl.rad()), cover, MPFR_RNDU);
      mpfr_clear(cover);
      mpfr_clear(d);

      // A size-m cluster disk carries an m-th-root loss of precision. A
      // true m-fold root is a simple root of the (m-1)-th derivative, so
      // its enclosure there recovers full precision; per the ball model a
      // cluster below separation tolerance is treated as a true multiple.
      int m = (int)g.size();
      if (m >= 2 && m <= n) {
        std::vector<Coeff> dc = c;
        for (int t = 1; t < m; ++t) {
          std::vector<Coeff> nd;
          for (size_t k = 1; k < dc.size(); ++k)
            nd.push_back(dc[k] * Coeff::from_long((long)k, prec));
          dc = std::move(nd);
        }
        auto droots = UPoly(std::move(dc)).roots();
        const Coeff* best = nullptr;
        double best_d = 0;
        for (auto& [dr, dm] : droots) {
          (void)dm;
          double dd = Coeff::mid_dist_upper(dr, cl);
          if (!best || dd < best_d) {
            best = &dr;
            best_d = dd;
          }
        }
        if (best && best_d <= 2 * cl.rad_d() + best->rad_d() &&
            best->rad_d() < cl.rad_d())
          cl = *best;
      }
      out.emplace_back(cl, m);
    }
  }

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return Coeff::mid_cmp(a.first, b.first) < 0;
  });
  return out;
}

}  // namespace canyonlab
