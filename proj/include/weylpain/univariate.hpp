#ifndef WEYLPAIN_UNIVARIATE_HPP
#define WEYLPAIN_UNIVARIATE_HPP

#include <vector>

#include "weylpain/exactpoly.hpp"

namespace weylpain {

// Dense univariate polynomial over Q; coef[i] multiplies x^i, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coef);

  // `a` may only involve `var`.
  static UPoly from_poly(const Poly& a, std::size_t var);

  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  bool is_zero() const { return coef_.empty(); }
  const std::vector<Rational>& coef() const { return coef_; }
  Rational eval(const Rational& x) const;
  UPoly monic() const;

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coef_ == b.coef_; }

 private:
  void trim();
  std::vector<Rational> coef_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);  // monic, gcd(0,0) = 0

// Divides out (x - r) as often as it divides; returns the multiplicity.
unsigned strip_root(UPoly& a, const Rational& r);

}  // namespace weylpain

#endif
