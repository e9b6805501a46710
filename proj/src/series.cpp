#include "canyonlab/series.hpp"

#include <climits>
#include <cmath>
#include <numeric>
#include <sstream>

#include "canyonlab/errors.hpp"

namespace canyonlab {

namespace {

// Non-throwing variant of the zero test used when normalizing term maps:
// certainly-tiny coefficients are dropped, ambiguous ones are kept and
// surface later through ord().
bool droppable(const Coeff& c) {
  if (!c.contains_zero()) return false;
  return c.rad_d() < std::exp2((double)Numerics::zero_tol_log2);
}

long lcm_l(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace

Coeff root_of_unity(long num, long den, mpfr_prec_t prec) {
  num %= den;
  if (num < 0) num += den;
  Coeff u(prec);
  mpfr_t th;
  mpfr_init2(th, prec);
  mpfr_const_pi(th, MPFR_RNDN);
  mpfr_mul_si(th, th, 2 * num, MPFR_RNDN);
  mpfr_div_si(th, th, den, MPFR_RNDN);
  mpfr_sin_cos(const_cast<__mpfr_struct*>(u.im()),
               const_cast<__mpfr_struct*>(u.re()), th, MPFR_RNDN);
  mpfr_clear(th);
  Coeff fix = u + Coeff(prec);  // one ulp of slack through the add
  return fix;
}

PuiseuxSeries PuiseuxSeries::monomial(const Coeff& c, const Rat& e, RatInf trunc) {
  PuiseuxSeries s(std::move(trunc));
  s.add_term(e, c);
  return s;
}

void PuiseuxSeries::add_term(const Rat& e, const Coeff& c) {
  if (!trunc_.is_inf() && e >= trunc_.value()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!droppable(c)) terms_.emplace(e, c);
  } else {
    Coeff s = it->second + c;
    if (droppable(s))
      terms_.erase(it);
    else
      it->second = s;
  }
}

RatInf PuiseuxSeries::ord() const {
  for (auto& [e, c] : terms_) {
    if (c.surely_nonzero()) return RatInf(e);
    if (c.is_zero()) continue;  // throws if ambiguous
  }
  return RatInf::infinity();
}

Rat PuiseuxSeries::ord_checked() const {
  RatInf o = ord();
  if (o.is_inf()) {
    if (!trunc_.is_inf())
      throw TruncationAmbiguous("series is zero up to its truncation " +
                                trunc_.str());
    throw TruncationAmbiguous("series is identically zero");
  }
  return o.value();
}

Coeff PuiseuxSeries::coeff(const Rat& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Coeff() : it->second;
}

Coeff PuiseuxSeries::lead_coeff() const {
  RatInf o = ord();
  if (o.is_inf()) return Coeff();
  return terms_.at(o.value());
}

PuiseuxSeries PuiseuxSeries::truncated(const RatInf& t) const {
  RatInf nt = t < trunc_ ? t : trunc_;
  PuiseuxSeries out(nt);
  for (auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

PuiseuxSeries PuiseuxSeries::shifted(const Rat& delta) const {
  PuiseuxSeries out(trunc_ + delta);
  for (auto& [e, c] : terms_) out.add_term(e + delta, c);
  return out;
}

PuiseuxSeries PuiseuxSeries::scaled(const Coeff& c) const {
  PuiseuxSeries out(trunc_);
  for (auto& [e, v] : terms_) out.add_term(e, v * c);
  return out;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries out(trunc_);
  for (auto& [e, c] : terms_) out.add_term(e, -c);
  return out;
}

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  RatInf t = a.trunc_ < b.trunc_ ? a.trunc_ : b.trunc_;
  PuiseuxSeries out(t);
  for (auto& [e, c] : a.terms_) out.add_term(e, c);
  for (auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  return a + (-b);
}

namespace {
// Lower bound on ord usable for truncation propagation; an empty series
// counts as its truncation bound.
RatInf ord_lower(const PuiseuxSeries& s) {
  if (!s.terms().empty()) return RatInf(s.terms().begin()->first);
  return s.trunc();
}
}  // namespace

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  RatInf ta = a.trunc_ + ord_lower(b);
  RatInf tb = b.trunc_ + ord_lower(a);
  RatInf t = ta < tb ? ta : tb;
  PuiseuxSeries out(t);
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_) {
      Rat e = ea + eb;
      if (!t.is_inf() && e >= t.value()) continue;
      out.add_term(e, ca * cb);
    }
  return out;
}

PuiseuxSeries PuiseuxSeries::pow_int(long n, const RatInf& limit) const {
  PuiseuxSeries acc = PuiseuxSeries::monomial(Coeff::from_long(1), Rat(0), limit);
  PuiseuxSeries base = truncated(limit < trunc_ ? limit : trunc_);
  long e = n;
  while (e) {
    if (e & 1) acc = (acc * base).truncated(limit);
    e >>= 1;
    if (e) base = (base * base).truncated(limit);
  }
  return acc;
}

PuiseuxSeries PuiseuxSeries::pow_rat(const Rat& h, const RatInf& limit) const {
  if (h.get_den() == 1 && h >= 0) return pow_int(rat_num_l(h), limit);
  Rat e0 = ord_checked();
  Coeff lead = terms_.at(e0);
  // w = s / (lead y^{e0}) - 1, ord w > 0
  PuiseuxSeries w = scaled(lead.inv()).shifted(-e0);
  w.add_term(Rat(0), Coeff::from_long(-1));
  Rat base_e = e0 * h;
  // absolute trunc of the result
  RatInf t = limit;
  if (!trunc_.is_inf()) {
    RatInf prop = RatInf(trunc_.value() - e0 + base_e);
    if (prop < t) t = prop;
  }
  if (t.is_inf() && !w.known_zero())
    throw TruncationTooSmall("pow_rat of an exact series needs a finite limit");
  RatInf rel = t.is_inf() ? RatInf::infinity() : RatInf(t.value() - base_e);

  PuiseuxSeries sum(rel);
  sum.add_term(Rat(0), Coeff::from_long(1));
  PuiseuxSeries wk = PuiseuxSeries::monomial(Coeff::from_long(1), Rat(0), rel);
  Rat binom(1);
  Rat w_ord = w.known_zero() ? Rat(0) : w.terms().begin()->first;
  for (long k = 1; !w.known_zero(); ++k) {
    if (!rel.is_inf() && w_ord * k >= rel.value()) break;
    wk = wk * w;
    if (wk.known_zero()) break;
    binom *= (h - (k - 1));
    binom /= k;
    sum = sum + wk.scaled(Coeff::from_rat(binom));
  }
  return sum.scaled(lead.pow_rat(h)).shifted(base_e).truncated(t);
}

PuiseuxSeries PuiseuxSeries::compose(const PuiseuxSeries& inner,
                                     const RatInf& limit) const {
  RatInf t = limit;
  if (!trunc_.is_inf()) {
    Rat oi = inner.ord_checked();
    RatInf prop = RatInf(trunc_.value() * oi);
    if (prop < t) t = prop;
  }
  PuiseuxSeries acc(t);
  for (auto& [e, c] : terms_) acc = acc + inner.pow_rat(e, t).scaled(c);
  return acc.truncated(t);
}

long PuiseuxSeries::common_denominator() const {
  long N = 1;
  for (auto& [e, c] : terms_) N = lcm_l(N, rat_den_l(e));
  return N;
}

PuiseuxSeries PuiseuxSeries::conjugate(long k) const {
  long N = common_denominator();
  PuiseuxSeries out(trunc_);
  for (auto& [e, c] : terms_) {
    long n = rat_num_l(e) * (N / rat_den_l(e));
    out.add_term(e, c * root_of_unity(k * n, N));
  }
  return out;
}

std::vector<PuiseuxSeries> PuiseuxSeries::conjugates() const {
  long N = common_denominator();
  std::vector<PuiseuxSeries> out;
  out.reserve((size_t)N);
  for (long k = 0; k < N; ++k) out.push_back(conjugate(k));
  return out;
}

PuiseuxSeries PuiseuxSeries::scale_y(const Rat& c) const {
  Coeff cc = Coeff::from_rat(c);
  PuiseuxSeries out(trunc_);
  for (auto& [e, v] : terms_) out.add_term(e, v * cc.pow_rat(e));
  return out;
}

std::string PuiseuxSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")*y^" << rat_str(e);
    first = false;
  }
  if (first) os << "0";
  if (!trunc_.is_inf()) os << " + O(y^" << rat_str(trunc_.value()) << ")";
  return os.str();
}

Rat contact_order(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  bool have = false;
  Rat best;
  for (auto& ac : a.conjugates()) {
    for (auto& bc : b.conjugates()) {
      PuiseuxSeries d = ac - bc;
      RatInf o = d.ord();
      if (o.is_inf()) {
        // a vanishing difference means the two conjugates parametrize the
        // same branch, which carries no contact information; arcs of one
        // orbit developed to a common truncation cancel exactly, while
        // genuine contacts always sit below the working truncation
        continue;
      }
      if (!have || o.value() > best) {
        have = true;
        best = o.value();
      }
    }
  }
  if (!have)
    throw TruncationAmbiguous("contact order of identical arcs is undefined");
  return best;
}

void BivarPoly::add_monomial(int dx, int dy, const Coeff& c) {
  auto key = std::make_pair(dx, dy);
  auto it = m_.find(key);
  if (it == m_.end()) {
    if (!droppable(c)) m_.emplace(key, c);
  } else {
    Coeff s = it->second + c;
    if (droppable(s))
      m_.erase(it);
    else
      it->second = s;
  }
}

int BivarPoly::deg_x() const {
  int d = 0;
  for (auto& [k, c] : m_) d = std::max(d, k.first);
  return d;
}

int BivarPoly::total_order() const {
  int m = INT_MAX;
  for (auto& [k, c] : m_) m = std::min(m, k.first + k.second);
  return m == INT_MAX ? 0 : m;
}

BivarPoly BivarPoly::dx() const {
  BivarPoly out;
  for (auto& [k, c] : m_)
    if (k.first > 0)
      out.add_monomial(k.first - 1, k.second, c * Coeff::from_long(k.first));
  return out;
}

BivarPoly BivarPoly::dy() const {
  BivarPoly out;
  for (auto& [k, c] : m_)
    if (k.second > 0)
      out.add_monomial(k.first, k.second - 1, c * Coeff::from_long(k.second));
  return out;
}

BivarPoly BivarPoly::shear(const Rat& lambda) const {
  if (lambda == 0) return *this;
  BivarPoly out;
  for (auto& [k, c] : m_) {
    // (x + lambda y)^dx
    Rat pw(1);
    Rat binom(1);
    for (int j = 0; j <= k.first; ++j) {
      // coefficient of x^{dx-j} y^j: C(dx, j) lambda^j
      out.add_monomial(k.first - j, k.second + j,
                       c * Coeff::from_rat(binom * pw));
      pw *= lambda;
      binom *= (k.first - j);
      binom /= (j + 1);
    }
  }
  return out;
}

BivarPoly BivarPoly::shear_y(const Rat& lambda) const {
  if (lambda == 0) return *this;
  BivarPoly out;
  for (auto& [k, c] : m_) {
    // (y + lambda x)^dy
    Rat pw(1);
    Rat binom(1);
    for (int j = 0; j <= k.second; ++j) {
      // coefficient of y^{dy-j} x^j: C(dy, j) lambda^j
      out.add_monomial(k.first + j, k.second - j,
                       c * Coeff::from_rat(binom * pw));
      pw *= lambda;
      binom *= (k.second - j);
      binom /= (j + 1);
    }
  }
  return out;
}

BivarPoly BivarPoly::scale_y(const Rat& c) const {
  BivarPoly out;
  Rat pw;
  for (auto& [k, v] : m_) {
    Rat p(1);
    for (int j = 0; j < k.second; ++j) p *= c;
    out.add_monomial(k.first, k.second, v * Coeff::from_rat(p));
  }
  return out;
}

BivarPoly BivarPoly::scale(const Rat& c) const {
  BivarPoly out;
  Coeff cc = Coeff::from_rat(c);
  for (auto& [k, v] : m_) out.add_monomial(k.first, k.second, v * cc);
  return out;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly out;
  for (auto& [ka, ca] : a.m_)
    for (auto& [kb, cb] : b.m_)
      out.add_monomial(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return out;
}

BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly out = a;
  for (auto& [k, c] : b.m_) out.add_monomial(k.first, k.second, c);
  return out;
}

std::vector<Coeff> BivarPoly::initial_form_chart() const {
  int m = total_order();
  std::vector<Coeff> out((size_t)m + 1, Coeff());
  for (auto& [k, c] : m_)
    if (k.first + k.second == m) out[(size_t)k.first] = c;
  return out;
}

PuiseuxSeries BivarPoly::substitute_x(const PuiseuxSeries& s) const {
  int dmax = deg_x();
  // coefficients of x^k as (polynomial) series in y
  std::vector<PuiseuxSeries> ck((size_t)dmax + 1);
  for (auto& [k, c] : m_) ck[(size_t)k.first].add_term(Rat(k.second), c);
  PuiseuxSeries acc;
  for (int k = dmax; k >= 0; --k) acc = acc * s + ck[(size_t)k];
  return acc;
}

std::string BivarPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : m_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")*x^" << k.first << "*y^" << k.second;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace canyonlab
