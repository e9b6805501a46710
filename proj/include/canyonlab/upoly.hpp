#pragma once

#include <utility>
#include <vector>

#include "canyonlab/coeff.hpp"

namespace canyonlab {

// Univariate polynomial over Coeff, coefficients by ascending degree.
// Invariant: the leading coefficient is not zero per the ball zero test.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Coeff> coeffs);

  static UPoly from_longs(const std::vector<long>& c);

  int degree() const { return (int)c_.size() - 1; }
  const Coeff& operator[](int k) const { return c_[(size_t)k]; }
  const std::vector<Coeff>& coeffs() const { return c_; }

  Coeff eval(const Coeff& z) const;  // ball Horner

  // Multiplicity-counted roots with certified enclosures. Simple roots get
  // Weierstrass disks; overlapping disks merge into one cluster whose size
  // is reported as the multiplicity.
  std::vector<std::pair<Coeff, int>> roots() const;

 private:
  std::vector<Coeff> c_;
};

}  // namespace canyonlab
