#include "canyonlab/coeff.hpp"

#include <cmath>
#include <cstring>

namespace canyonlab {

mpfr_prec_t Numerics::default_prec = 256;
long Numerics::zero_tol_log2 = -128;

namespace {
constexpr mpfr_prec_t kRadPrec = 40;

// |re| + |im|, rounded up, at radius precision.
void abs1_up(mpfr_t out, const mpfr_t re, const mpfr_t im) {
  mpfr_t t;
  mpfr_init2(t, kRadPrec);
  mpfr_abs(out, re, MPFR_RNDU);
  mpfr_abs(t, im, MPFR_RNDU);
  mpfr_add(out, out, t, MPFR_RNDU);
  mpfr_clear(t);
}

void hypot_rnd(mpfr_t out, const mpfr_t re, const mpfr_t im, mpfr_rnd_t rnd) {
  mpfr_hypot(out, re, im, rnd);
}
}  // namespace

Coeff::Coeff() : Coeff(Numerics::default_prec) {}

Coeff::Coeff(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(re_, prec);
  mpfr_init2(im_, prec);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set_zero(re_, 1);
  mpfr_set_zero(im_, 1);
  mpfr_set_zero(rad_, 1);
}

Coeff::Coeff(const Coeff& o) : prec_(o.prec_) {
  mpfr_init2(re_, prec_);
  mpfr_init2(im_, prec_);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set(re_, o.re_, MPFR_RNDN);
  mpfr_set(im_, o.im_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

Coeff::Coeff(Coeff&& o) noexcept : prec_(o.prec_) {
  std::memcpy(re_, o.re_, sizeof(mpfr_t));
  std::memcpy(im_, o.im_, sizeof(mpfr_t));
  std::memcpy(rad_, o.rad_, sizeof(mpfr_t));
  mpfr_init2(o.re_, 2);
  mpfr_init2(o.im_, 2);
  mpfr_init2(o.rad_, 2);
}

Coeff& Coeff::operator=(const Coeff& o) {
  if (this == &o) return *this;
  if (prec_ != o.prec_) {
    mpfr_set_prec(re_, o.prec_);
    mpfr_set_prec(im_, o.prec_);
    prec_ = o.prec_;
  }
  mpfr_set(re_, o.re_, MPFR_RNDN);
  mpfr_set(im_, o.im_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
  return *this;
}

Coeff& Coeff::operator=(Coeff&& o) noexcept {
  if (this == &o) return *this;
  mpfr_swap(re_, o.re_);
  mpfr_swap(im_, o.im_);
  mpfr_swap(rad_, o.rad_);
  std::swap(prec_, o.prec_);
  return *this;
}

Coeff::~Coeff() {
  mpfr_clear(re_);
  mpfr_clear(im_);
  mpfr_clear(rad_);
}

void Coeff::bump_err(int ulps) {
  mpfr_t m;
  mpfr_init2(m, kRadPrec);
  abs1_up(m, re_, im_);
  mpfr_mul_ui(m, m, (unsigned long)ulps, MPFR_RNDU);
  mpfr_mul_2si(m, m, 1 - (long)prec_, MPFR_RNDU);
  mpfr_add(rad_, rad_, m, MPFR_RNDU);
  mpfr_clear(m);
}

Coeff Coeff::from_long(long v, mpfr_prec_t prec) {
  Coeff c(prec);
  mpfr_set_si(c.re_, v, MPFR_RNDN);
  return c;
}

Coeff Coeff::from_rat(const Rat& v, mpfr_prec_t prec) {
  Coeff c(prec);
  mpfr_set_q(c.re_, v.get_mpq_t(), MPFR_RNDN);
  c.bump_err(1);
  return c;
}

Coeff Coeff::gaussian(const Rat& re, const Rat& im, mpfr_prec_t prec) {
  Coeff c(prec);
  mpfr_set_q(c.re_, re.get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(c.im_, im.get_mpq_t(), MPFR_RNDN);
  c.bump_err(1);
  return c;
}

Coeff Coeff::i_unit(mpfr_prec_t prec) {
  Coeff c(prec);
  mpfr_set_si(c.im_, 1, MPFR_RNDN);
  return c;
}

Coeff Coeff::operator-() const {
  Coeff c(*this);
  mpfr_neg(c.re_, c.re_, MPFR_RNDN);
  mpfr_neg(c.im_, c.im_, MPFR_RNDN);
  return c;
}

Coeff Coeff::conj() const {
  Coeff c(*this);
  mpfr_neg(c.im_, c.im_, MPFR_RNDN);
  return c;
}

Coeff operator+(const Coeff& a, const Coeff& b) {
  Coeff c(std::max(a.prec_, b.prec_));
  mpfr_add(c.re_, a.re_, b.re_, MPFR_RNDN);
  mpfr_add(c.im_, a.im_, b.im_, MPFR_RNDN);
  mpfr_add(c.rad_, a.rad_, b.rad_, MPFR_RNDU);
  c.bump_err(2);
  return c;
}

Coeff operator-(const Coeff& a, const Coeff& b) {
  Coeff c(std::max(a.prec_, b.prec_));
  mpfr_sub(c.re_, a.re_, b.re_, MPFR_RNDN);
  mpfr_sub(c.im_, a.im_, b.im_, MPFR_RNDN);
  mpfr_add(c.rad_, a.rad_, b.rad_, MPFR_RNDU);
  c.bump_err(2);
  return c;
}

Coeff operator*(const Coeff& a, const Coeff& b) {
  mpfr_prec_t p = std::max(a.prec_, b.prec_);
  Coeff c(p);
  mpfr_t t1, t2;
  mpfr_init2(t1, p);
  mpfr_init2(t2, p);
  // re = a.re*b.re - a.im*b.im
  mpfr_mul(t1, a.re_, b.re_, MPFR_RNDN);
  mpfr_mul(t2, a.im_, b.im_, MPFR_RNDN);
  mpfr_sub(c.re_, t1, t2, MPFR_RNDN);
  // im = a.re*b.im + a.im*b.re
  mpfr_mul(t1, a.re_, b.im_, MPFR_RNDN);
  mpfr_mul(t2, a.im_, b.re_, MPFR_RNDN);
  mpfr_add(c.im_, t1, t2, MPFR_RNDN);
  mpfr_clear(t1);
  mpfr_clear(t2);
  // rad = |a|*rb + |b|*ra + ra*rb, outward
  mpfr_t ma, mb, r;
  mpfr_init2(ma, kRadPrec);
  mpfr_init2(mb, kRadPrec);
  mpfr_init2(r, kRadPrec);
  hypot_rnd(ma, a.re_, a.im_, MPFR_RNDU);
  hypot_rnd(mb, b.re_, b.im_, MPFR_RNDU);
  mpfr_mul(r, ma, b.rad_, MPFR_RNDU);
  mpfr_add(c.rad_, c.rad_, r, MPFR_RNDU);
  mpfr_mul(r, mb, a.rad_, MPFR_RNDU);
  mpfr_add(c.rad_, c.rad_, r, MPFR_RNDU);
  mpfr_mul(r, a.rad_, b.rad_, MPFR_RNDU);
  mpfr_add(c.rad_, c.rad_, r, MPFR_RNDU);
  mpfr_clear(ma);
  mpfr_clear(mb);
  mpfr_clear(r);
  c.bump_err(6);
  return c;
}

Coeff Coeff::inv() const {
  // Lower bound on |mid| must exceed rad.
  mpfr_t mlo;
  mpfr_init2(mlo, kRadPrec);
  hypot_rnd(mlo, re_, im_, MPFR_RNDD);
  if (mpfr_cmp(mlo, rad_) <= 0) {
    mpfr_clear(mlo);
    throw DivisionByUncertainZero("division by a ball containing zero");
  }
  Coeff c(prec_);
  mpfr_t m2;
  mpfr_init2(m2, prec_);
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_sqr(m2, re_, MPFR_RNDN);
  mpfr_sqr(t, im_, MPFR_RNDN);
  mpfr_add(m2, m2, t, MPFR_RNDN);
  mpfr_div(c.re_, re_, m2, MPFR_RNDN);
  mpfr_div(c.im_, im_, m2, MPFR_RNDN);
  mpfr_neg(c.im_, c.im_, MPFR_RNDN);
  mpfr_clear(m2);
  mpfr_clear(t);
  // |1/z - 1/mid| <= rad / (mlo * (mlo - rad))
  mpfr_t d, r;
  mpfr_init2(d, kRadPrec);
  mpfr_init2(r, kRadPrec);
  mpfr_sub(d, mlo, rad_, MPFR_RNDD);
  mpfr_mul(d, d, mlo, MPFR_RNDD);
  mpfr_div(r, rad_, d, MPFR_RNDU);
  mpfr_set(c.rad_, r, MPFR_RNDU);
  mpfr_clear(d);
  mpfr_clear(r);
  mpfr_clear(mlo);
  c.bump_err(6);
  return c;
}

Coeff operator/(const Coeff& a, const Coeff& b) { return a * b.inv(); }

Coeff Coeff::pow_int(long n) const {
  if (n < 0) return inv().pow_int(-n);
  Coeff acc = Coeff::from_long(1, prec_);
  Coeff base(*this);
  unsigned long e = (unsigned long)n;
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

Coeff Coeff::root(unsigned long n) const {
  if (n == 1) return *this;
  mpfr_t mlo;
  mpfr_init2(mlo, kRadPrec);
  hypot_rnd(mlo, re_, im_, MPFR_RNDD);
  if (mpfr_cmp(mlo, rad_) <= 0) {
    mpfr_clear(mlo);
    throw PrecisionExhausted("n-th root of a ball containing zero");
  }
  Coeff c(prec_);
  mpfr_t m, th, rr;
  mpfr_init2(m, prec_);
  mpfr_init2(th, prec_);
  mpfr_init2(rr, prec_);
  mpfr_hypot(m, re_, im_, MPFR_RNDN);
  mpfr_atan2(th, im_, re_, MPFR_RNDN);
  mpfr_rootn_ui(rr, m, n, MPFR_RNDN);
  mpfr_div_ui(th, th, n, MPFR_RNDN);
  mpfr_t s;
  mpfr_init2(s, prec_);
  mpfr_sin_cos(s, m /*reuse as cos*/, th, MPFR_RNDN);
  mpfr_mul(c.re_, rr, m, MPFR_RNDN);
  mpfr_mul(c.im_, rr, s, MPFR_RNDN);
  mpfr_clear(s);
  mpfr_clear(m);
  mpfr_clear(th);
  mpfr_clear(rr);
  // Lipschitz bound: (1/n) * (mlo - rad)^{1/n - 1} * rad
  mpfr_t t, L;
  mpfr_init2(t, kRadPrec);
  mpfr_init2(L, kRadPrec);
  mpfr_sub(t, mlo, rad_, MPFR_RNDD);
  mpfr_rootn_ui(L, t, n, MPFR_RNDU);  // t^{1/n}, t<mlo so this overestimates ratio
  mpfr_div(L, L, t, MPFR_RNDU);       // t^{1/n - 1}
  mpfr_div_ui(L, L, n, MPFR_RNDU);
  mpfr_mul(L, L, rad_, MPFR_RNDU);
  mpfr_set(c.rad_, L, MPFR_RNDU);
  mpfr_clear(t);
  mpfr_clear(L);
  mpfr_clear(mlo);
  c.bump_err(8);
  return c;
}

Coeff Coeff::pow_rat(const Rat& e) const {
  long p = rat_num_l(e);
  unsigned long q = (unsigned long)rat_den_l(e);
  Coeff b = pow_int(p);
  return q == 1 ? b : b.root(q);
}

std::vector<Coeff> Coeff::nth_roots(unsigned long n) const {
  std::vector<Coeff> out;
  Coeff r0 = root(n);
  for (unsigned long k = 0; k < n; ++k) {
    Coeff u(prec_);
    mpfr_t th;
    mpfr_init2(th, prec_);
    mpfr_const_pi(th, MPFR_RNDN);
    mpfr_mul_ui(th, th, 2 * k, MPFR_RNDN);
    mpfr_div_ui(th, th, n, MPFR_RNDN);
    mpfr_sin_cos(u.im_, u.re_, th, MPFR_RNDN);
    mpfr_clear(th);
    u.bump_err(4);
    out.push_back(r0 * u);
  }
  return out;
}

bool Coeff::contains_zero() const {
  mpfr_t mlo;
  mpfr_init2(mlo, kRadPrec);
  hypot_rnd(mlo, re_, im_, MPFR_RNDD);
  bool in = mpfr_cmp(mlo, rad_) <= 0;
  mpfr_clear(mlo);
  return in;
}

bool Coeff::surely_nonzero() const { return !contains_zero(); }

bool Coeff::is_zero() const {
  if (!contains_zero()) return false;
  mpfr_t tol;
  mpfr_init2(tol, kRadPrec);
  mpfr_set_ui_2exp(tol, 1, Numerics::zero_tol_log2, MPFR_RNDN);
  bool small = mpfr_cmp(rad_, tol) < 0;
  mpfr_clear(tol);
  if (!small)
    throw PrecisionExhausted(
        "zero test ambiguous: ball contains 0 with radius above tolerance");
  return true;
}

double Coeff::mid_dist_upper(const Coeff& a, const Coeff& b) {
  mpfr_t dr, di, d;
  mpfr_init2(dr, kRadPrec);
  mpfr_init2(di, kRadPrec);
  mpfr_init2(d, kRadPrec);
  mpfr_sub(dr, a.re_, b.re_, MPFR_RNDU);
  mpfr_sub(di, a.im_, b.im_, MPFR_RNDU);
  mpfr_hypot(d, dr, di, MPFR_RNDU);
  double v = mpfr_get_d(d, MPFR_RNDU);
  mpfr_clear(dr);
  mpfr_clear(di);
  mpfr_clear(d);
  return v;
}

bool Coeff::overlaps(const Coeff& b) const {
  mpfr_t dr, di, d, rr;
  mpfr_init2(dr, kRadPrec + 64);
  mpfr_init2(di, kRadPrec + 64);
  mpfr_init2(d, kRadPrec);
  mpfr_init2(rr, kRadPrec);
  mpfr_sub(dr, re_, b.re_, MPFR_RNDD);
  mpfr_sub(di, im_, b.im_, MPFR_RNDD);
  mpfr_hypot(d, dr, di, MPFR_RNDD);
  mpfr_add(rr, rad_, b.rad_, MPFR_RNDU);
  bool ov = mpfr_cmp(d, rr) <= 0;
  mpfr_clear(dr);
  mpfr_clear(di);
  mpfr_clear(d);
  mpfr_clear(rr);
  return ov;
}

bool Coeff::encloses(const Rat& qre, const Rat& qim) const {
  mpfr_t dr, di, d;
  mpfr_init2(dr, prec_ + 64);
  mpfr_init2(di, prec_ + 64);
  mpfr_init2(d, kRadPrec);
  mpfr_set_q(dr, qre.get_mpq_t(), MPFR_RNDN);
  mpfr_sub(dr, re_, dr, MPFR_RNDA);
  mpfr_set_q(di, qim.get_mpq_t(), MPFR_RNDN);
  mpfr_sub(di, im_, di, MPFR_RNDA);
  mpfr_hypot(d, dr, di, MPFR_RNDU);
  bool in = mpfr_cmp(d, rad_) <= 0;
  mpfr_clear(dr);
  mpfr_clear(di);
  mpfr_clear(d);
  return in;
}

double Coeff::rad_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }

double Coeff::abs_d() const {
  mpfr_t m;
  mpfr_init2(m, kRadPrec);
  mpfr_hypot(m, re_, im_, MPFR_RNDN);
  double v = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return v;
}

int Coeff::mid_cmp(const Coeff& a, const Coeff& b) {
  int c = mpfr_cmp(a.re_, b.re_);
  if (c) return c;
  return mpfr_cmp(a.im_, b.im_);
}

namespace {
std::string mpfr_dec(const mpfr_t x, int digits) {
  if (mpfr_zero_p(x)) return "0";
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, x);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}
}  // namespace

std::string Coeff::re_str(int digits) const { return mpfr_dec(re_, digits); }
std::string Coeff::im_str(int digits) const { return mpfr_dec(im_, digits); }
std::string Coeff::rad_str() const { return mpfr_dec(rad_, 3); }

std::string Coeff::str(int digits) const {
  std::string s = re_str(digits);
  if (!mpfr_zero_p(im_)) {
    s += (mpfr_sgn(im_) > 0 ? "+" : "") + im_str(digits) + "i";
  }
  return s;
}

}  // namespace canyonlab
