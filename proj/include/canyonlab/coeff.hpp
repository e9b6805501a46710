#pragma once

#include <mpfr.h>

#include <string>
#include <vector>

#include "canyonlab/errors.hpp"
#include "canyonlab/rat.hpp"

namespace canyonlab {

// Process-wide numeric configuration, set once at startup (CLI flags
// --precision-bits / --zero-tol). All Coeff values are immutable after
// construction and safe to share between threads.
struct Numerics {
  static mpfr_prec_t default_prec;  // working bits, default 256
  static long zero_tol_log2;        // zero test threshold 2^this, default -128
};

// Complex ball: arbitrary-precision midpoint plus an outward-rounded
// error radius. Every operation returns a ball containing the exact
// result of applying the operation to any points of the input balls.
class Coeff {
 public:
  Coeff();
  explicit Coeff(mpfr_prec_t prec);
  Coeff(const Coeff& o);
  Coeff(Coeff&& o) noexcept;
  Coeff& operator=(const Coeff& o);
  Coeff& operator=(Coeff&& o) noexcept;
  ~Coeff();

  static Coeff from_long(long v, mpfr_prec_t prec = Numerics::default_prec);
  static Coeff from_rat(const Rat& v, mpfr_prec_t prec = Numerics::default_prec);
  // re + im*i with rational parts.
  static Coeff gaussian(const Rat& re, const Rat& im,
                        mpfr_prec_t prec = Numerics::default_prec);
  static Coeff i_unit(mpfr_prec_t prec = Numerics::default_prec);

  mpfr_prec_t prec() const { return prec_; }
  const __mpfr_struct* re() const { return re_; }
  const __mpfr_struct* im() const { return im_; }
  const __mpfr_struct* rad() const { return rad_; }

  Coeff operator-() const;
  Coeff conj() const;
  friend Coeff operator+(const Coeff& a, const Coeff& b);
  friend Coeff operator-(const Coeff& a, const Coeff& b);
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend Coeff operator/(const Coeff& a, const Coeff& b);
  Coeff& operator+=(const Coeff& b) { return *this = *this + b; }
  Coeff& operator-=(const Coeff& b) { return *this = *this - b; }
  Coeff& operator*=(const Coeff& b) { return *this = *this * b; }

  Coeff inv() const;                // throws DivisionByUncertainZero
  Coeff pow_int(long n) const;      // n may be negative
  Coeff root(unsigned long n) const;  // principal n-th root
  Coeff pow_rat(const Rat& e) const;  // pow_int(num) then root(den)

  // All n complex n-th roots, principal first, counter-clockwise.
  std::vector<Coeff> nth_roots(unsigned long n) const;

  bool contains_zero() const;   // 0 lies within the ball
  bool surely_nonzero() const;  // |mid| > rad, so 0 excluded
  // Decidable zero test per the ball model: true if the ball contains 0
  // with radius below the zero tolerance, false if 0 is excluded.
  // Throws PrecisionExhausted in the ambiguous band.
  bool is_zero() const;

  // Upper bound on the distance between the midpoints of two balls.
  static double mid_dist_upper(const Coeff& a, const Coeff& b);
  // Do the two balls intersect?
  bool overlaps(const Coeff& b) const;
  // Does the ball contain the exact rational point re + im*i?
  bool encloses(const Rat& re, const Rat& im) const;

  double rad_d() const;
  double abs_d() const;  // midpoint magnitude, approximate
  // Deterministic ordering by midpoint (re, then im). Not a math order.
  static int mid_cmp(const Coeff& a, const Coeff& b);

  std::string str(int digits = 8) const;  // human-readable
  std::string re_str(int digits) const;   // decimal midpoint parts
  std::string im_str(int digits) const;
  std::string rad_str() const;

 private:
  mpfr_t re_, im_, rad_;
  mpfr_prec_t prec_;

  void bump_err(int ulps);  // add ulps * 2^-prec * |mid| to rad
  friend class CoeffOps;
};

}  // namespace canyonlab
