#include "weylpain/univariate.hpp"

namespace weylpain {

UPoly::UPoly(std::vector<Rational> coef) : coef_(std::move(coef)) { trim(); }

void UPoly::trim() {
  while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
}

UPoly UPoly::from_poly(const Poly& a, std::size_t var) {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(a.degree_in(var), 0)) + 1);
  for (const auto& t : a.terms()) {
    if (t.mono.deg != t.mono.e[var]) throw Error(ErrorCode::Structural, "polynomial is not univariate");
    c[t.mono.e[var]] += t.coef;
  }
  return UPoly(std::move(c));
}

Rational UPoly::eval(const Rational& x) const {
  Rational s = 0;
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) s = s * x + *it;
  return s;
}

UPoly UPoly::monic() const {
  if (coef_.empty()) return *this;
  UPoly r = *this;
  Rational inv = 1 / coef_.back();
  for (auto& c : r.coef_) c *= inv;
  return r;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::Structural, "division by zero polynomial");
  std::vector<Rational> r = a.coef();
  int db = b.degree();
  std::vector<Rational> q(a.degree() >= db ? a.degree() - db + 1 : 0);
  const Rational& lb = b.coef().back();
  for (int k = a.degree(); k >= db; --k) {
    if (r[k] == 0) continue;
    Rational c = r[k] / lb;
    q[k - db] = c;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= c * b.coef()[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

unsigned strip_root(UPoly& a, const Rational& r) {
  if (a.is_zero()) return 0;
  UPoly lin(std::vector<Rational>{Rational(-r), Rational(1)});
  unsigned m = 0;
  while (a.degree() >= 1) {
    auto [q, rem] = divmod(a, lin);
    if (!rem.is_zero()) break;
    a = std::move(q);
    ++m;
  }
  return m;
}

}  // namespace weylpain
