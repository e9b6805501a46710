#pragma once

#include <map>
#include <vector>

#include "canyonlab/coeff.hpp"
#include "canyonlab/rat.hpp"

namespace canyonlab {

// e^{2 pi i num/den}
Coeff root_of_unity(long num, long den, mpfr_prec_t prec = Numerics::default_prec);

// Truncated fractional power series in y: finitely many terms with
// strictly increasing rational exponents, known modulo O(y^trunc).
class PuiseuxSeries {
 public:
  PuiseuxSeries() : trunc_(RatInf::infinity()) {}
  explicit PuiseuxSeries(RatInf trunc) : trunc_(std::move(trunc)) {}

  static PuiseuxSeries monomial(const Coeff& c, const Rat& e,
                                RatInf trunc = RatInf::infinity());

  // Inserting a zero coefficient is a no-op; exponents at or above trunc
  // are dropped.
  void add_term(const Rat& e, const Coeff& c);

  const std::map<Rat, Coeff>& terms() const { return terms_; }
  const RatInf& trunc() const { return trunc_; }
  bool known_zero() const { return terms_.empty(); }

  // Least exponent carrying a surely-nonzero coefficient; +inf when the
  // series has no terms. Throws PrecisionExhausted if the leading
  // coefficient cannot be decided.
  RatInf ord() const;
  // As ord(), but an empty series with finite trunc is an error: the true
  // order may be hiding beyond the truncation.
  Rat ord_checked() const;

  Coeff coeff(const Rat& e) const;  // zero ball when absent
  Coeff lead_coeff() const;

  PuiseuxSeries truncated(const RatInf& t) const;
  PuiseuxSeries shifted(const Rat& delta) const;       // * y^delta
  PuiseuxSeries scaled(const Coeff& c) const;          // * c
  PuiseuxSeries operator-() const;
  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);

  PuiseuxSeries pow_int(long n, const RatInf& limit = RatInf::infinity()) const;

  // s(y)^h for rational h via binomial expansion of the leading monomial
  // factored out. Principal branch for the leading coefficient power.
  PuiseuxSeries pow_rat(const Rat& h, const RatInf& limit = RatInf::infinity()) const;

  // Substitute y -> (other series), for series with ord >= 1 composed into
  // this one. Exponents of *this must stay manageable: every exponent e
  // maps to other^e via pow_rat.
  PuiseuxSeries compose(const PuiseuxSeries& inner, const RatInf& limit) const;

  long common_denominator() const;  // N: lcm of exponent denominators
  PuiseuxSeries conjugate(long k) const;
  std::vector<PuiseuxSeries> conjugates() const;  // all N, k = 0..N-1

  // substitute y -> c*y (exact rational scale), coeff(e) *= c^e
  PuiseuxSeries scale_y(const Rat& c) const;

  std::string str() const;

 private:
  std::map<Rat, Coeff> terms_;
  RatInf trunc_;
};

// ord of the difference maximized over all conjugate pairs.
// Throws TruncationAmbiguous when the maximum hits the truncation bound.
Rat contact_order(const PuiseuxSeries& a, const PuiseuxSeries& b);

// Finitely supported polynomial in (x, y) over Coeff.
class BivarPoly {
 public:
  BivarPoly() = default;

  void add_monomial(int dx, int dy, const Coeff& c);
  const std::map<std::pair<int, int>, Coeff>& monomials() const { return m_; }
  bool empty() const { return m_.empty(); }

  int deg_x() const;
  int total_order() const;  // multiplicity at 0: min total degree

  BivarPoly dx() const;
  BivarPoly dy() const;
  // f(x + lambda*y, y)
  BivarPoly shear(const Rat& lambda) const;
  // f(x, y + lambda*x); the only shear that can repair mini-regularity,
  // since x -> x + lambda*y leaves the x^m coefficient alone
  BivarPoly shear_y(const Rat& lambda) const;
  // f(x, c*y) exact rational scale
  BivarPoly scale_y(const Rat& c) const;
  BivarPoly scale(const Rat& c) const;  // c * f
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b);

  // initial homogeneous form as univariate in the direction chart x = a*y:
  // returns coefficients of f_m(a, 1) by degree in a.
  std::vector<Coeff> initial_form_chart() const;

  // f(s(y), y)
  PuiseuxSeries substitute_x(const PuiseuxSeries& s) const;

  std::string str() const;

 private:
  std::map<std::pair<int, int>, Coeff> m_;
};

}  // namespace canyonlab
