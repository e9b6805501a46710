#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>

namespace canyonlab {

// Exact rational. mpq_class keeps values canonicalized (gcd 1, positive
// denominator), which is exactly the invariant we need.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline long rat_num_l(const Rat& r) { return mpz_get_si(r.get_num().get_mpz_t()); }
inline long rat_den_l(const Rat& r) { return mpz_get_si(r.get_den().get_mpz_t()); }

// A rational extended with +infinity, used for series orders and
// truncation bounds.
class RatInf {
 public:
  RatInf() : inf_(true) {}
  RatInf(Rat v) : inf_(false), v_(std::move(v)) {}
  RatInf(long v) : inf_(false), v_(v) {}
  static RatInf infinity() { return RatInf(); }

  bool is_inf() const { return inf_; }
  const Rat& value() const { return v_; }

  friend bool operator==(const RatInf& a, const RatInf& b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ || a.v_ == b.v_;
  }
  friend bool operator<(const RatInf& a, const RatInf& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const RatInf& a, const RatInf& b) { return a < b || a == b; }
  friend bool operator>(const RatInf& a, const RatInf& b) { return b < a; }
  friend bool operator>=(const RatInf& a, const RatInf& b) { return b <= a; }

  friend RatInf operator+(const RatInf& a, const RatInf& b) {
    if (a.inf_ || b.inf_) return infinity();
    return RatInf(a.v_ + b.v_);
  }
  friend RatInf operator+(const RatInf& a, const Rat& b) {
    if (a.inf_) return infinity();
    return RatInf(a.v_ + b);
  }

  std::string str() const { return inf_ ? "inf" : rat_str(v_); }

 private:
  bool inf_;
  Rat v_{};
};

}  // namespace canyonlab
