#include "weylpain/exactpoly.hpp"

namespace weylpain {

RationalFunction::RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.table(), 1)) {}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (!same_table(num_.table(), den_.table())) throw Error(ErrorCode::Structural, "VarTable mismatch");
  normalize();
}

RationalFunction RationalFunction::constant(VarTablePtr table, const Rational& c) {
  return RationalFunction(Poly::constant(std::move(table), c));
}

RationalFunction RationalFunction::var(VarTablePtr table, std::size_t idx) {
  return RationalFunction(Poly::var(std::move(table), idx));
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw Error(ErrorCode::Structural, "zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.table(), 1);
    return;
  }
  if (den_.is_constant()) {
    num_ *= Rational(1 / den_.terms()[0].coef);
    den_ = Poly::constant(num_.table(), 1);
    return;
  }
  // common monomial factors are certified divisors of both sides
  Monomial cn = monomial_content(num_), cd = monomial_content(den_);
  Monomial common;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    common.e[i] = std::min(cn.e[i], cd.e[i]);
    common.deg += common.e[i];
  }
  if (common.deg) {
    num_ = divide_by_monomial(num_, common);
    den_ = divide_by_monomial(den_, common);
  }
  Rational lc = den_.leading().coef;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
  if (den_.is_constant()) return;
  if (auto q = divide_exact(num_, den_)) {
    num_ = std::move(*q);
    den_ = Poly::constant(num_.table(), 1);
  }
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(Raw{}, -num_, den_); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  if (b.is_polynomial()) return RationalFunction(a.num_ + b.num_ * a.den_, a.den_);
  if (a.is_polynomial()) return RationalFunction(a.num_ * b.den_ + b.num_, b.den_);
  if (auto k = divide_exact(b.den_, a.den_)) return RationalFunction(a.num_ * *k + b.num_, b.den_);
  if (auto k = divide_exact(a.den_, b.den_)) return RationalFunction(a.num_ + b.num_ * *k, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction(Poly(a.table()));
  if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_);
  // cross-cancel before multiplying out
  Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!bd.is_constant())
    if (auto k = divide_exact(an, bd)) {
      an = std::move(*k);
      bd = Poly::constant(a.table(), 1);
    }
  if (!ad.is_constant())
    if (auto k = divide_exact(bn, ad)) {
      bn = std::move(*k);
      ad = Poly::constant(a.table(), 1);
    }
  return RationalFunction(an * bn, ad * bd);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error(ErrorCode::Pole, "division by zero rational function");
  return a * RationalFunction(b.den_, b.num_);
}

RationalFunction derivative(const RationalFunction& a, std::size_t var) {
  if (a.is_polynomial()) return RationalFunction(derivative(a.num(), var));
  Poly dn = derivative(a.num(), var), dd = derivative(a.den(), var);
  if (dd.is_zero()) return RationalFunction(dn, a.den());
  return RationalFunction(dn * a.den() - a.num() * dd, a.den() * a.den());
}

std::string format(const RationalFunction& a) {
  if (a.is_polynomial()) return format(a.num());
  return "(" + format(a.num()) + ")/(" + format(a.den()) + ")";
}

RationalFunction parse_rational_function(std::string_view num, std::string_view den, const VarTablePtr& table) {
  return RationalFunction(parse_poly(num, table), parse_poly(den, table));
}

Rational eval_at(const RationalFunction& a, const Point& point) {
  Rational d = eval_at(a.den(), point);
  if (d == 0) throw Error(ErrorCode::Pole, "denominator vanishes at point");
  return eval_at(a.num(), point) / d;
}

double eval_double(const RationalFunction& a, const std::vector<double>& point) {
  double d = eval_double(a.den(), point);
  if (d == 0) throw Error(ErrorCode::Pole, "denominator vanishes at point");
  return eval_double(a.num(), point) / d;
}

}  // namespace weylpain
