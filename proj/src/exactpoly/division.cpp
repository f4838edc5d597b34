#include <algorithm>
#include <map>

#include "weylpain/exactpoly.hpp"

namespace weylpain {

namespace {

using Remainder = std::map<Monomial, Rational, GrlexGreater>;

Remainder to_map(const Poly& f) {
  Remainder r;
  for (const auto& t : f.terms()) r.emplace_hint(r.end(), t.mono, t.coef);
  return r;
}

// r -= c * m * g
void subtract_multiple(Remainder& r, const Poly& g, const Monomial& m, const Rational& c, Rational& tmp) {
  for (const auto& t : g.terms()) {
    Monomial k = Monomial::product(t.mono, m);
    mpq_mul(tmp.get_mpq_t(), t.coef.get_mpq_t(), c.get_mpq_t());
    auto [it, fresh] = r.try_emplace(k);
    if (fresh) {
      mpq_neg(it->second.get_mpq_t(), tmp.get_mpq_t());
    } else {
      mpq_sub(it->second.get_mpq_t(), it->second.get_mpq_t(), tmp.get_mpq_t());
      if (it->second == 0) r.erase(it);
    }
  }
}

// Necessary conditions for g | f, cheap enough to run first.
bool plausible_divisor(const Poly& f, const Poly& g) {
  std::size_t n = f.table()->size();
  for (std::size_t v = 0; v < n; ++v) {
    int df = 0, dg = 0;
    int lf = 1 << 20, lg = 1 << 20;
    for (const auto& t : f.terms()) {
      df = std::max<int>(df, t.mono.e[v]);
      lf = std::min<int>(lf, t.mono.e[v]);
    }
    for (const auto& t : g.terms()) {
      dg = std::max<int>(dg, t.mono.e[v]);
      lg = std::min<int>(lg, t.mono.e[v]);
    }
    if (dg - lg > df - lf || lg > lf) return false;
  }
  return g.terms().back().mono.divides(f.terms().back().mono);
}

}  // namespace

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
  if (!same_table(f.table(), g.table())) throw Error(ErrorCode::Structural, "VarTable mismatch");
  if (g.is_zero()) throw Error(ErrorCode::Structural, "division by the zero polynomial");
  if (f.is_zero()) return Poly(f.table());
  if (g.is_constant()) return f * Rational(1 / g.terms()[0].coef);
  if (g.is_monomial()) {
    const auto& gt = g.terms()[0];
    Rational inv = 1 / gt.coef;
    std::vector<Poly::Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
      if (!gt.mono.divides(t.mono)) return std::nullopt;
      out.push_back(Poly::Term{Monomial::quotient(t.mono, gt.mono), t.coef * inv});
    }
    return Poly::from_canonical(f.table(), std::move(out));
  }
  if (!plausible_divisor(f, g)) return std::nullopt;

  const auto& lt = g.leading();
  Rational inv = 1 / lt.coef, c, tmp;
  Remainder r = to_map(f);
  std::vector<Poly::Term> quot;
  while (!r.empty()) {
    auto it = r.begin();
    if (!lt.mono.divides(it->first)) return std::nullopt;
    Monomial m = Monomial::quotient(it->first, lt.mono);
    c = it->second * inv;
    quot.push_back(Poly::Term{m, c});
    subtract_multiple(r, g, m, c, tmp);
  }
  return Poly::from_canonical(f.table(), std::move(quot));
}

DivisionResult divide_with_remainder(const Poly& f, const Poly& g) {
  if (!same_table(f.table(), g.table())) throw Error(ErrorCode::Structural, "VarTable mismatch");
  if (g.is_zero()) throw Error(ErrorCode::Structural, "division by the zero polynomial");
  const auto& lt = g.leading();
  Rational inv = 1 / lt.coef, c, tmp;
  Remainder r = to_map(f);
  std::vector<Poly::Term> quot, rem;
  while (!r.empty()) {
    auto it = r.begin();
    if (!lt.mono.divides(it->first)) {
      rem.push_back(Poly::Term{it->first, it->second});
      r.erase(it);
      continue;
    }
    Monomial m = Monomial::quotient(it->first, lt.mono);
    c = it->second * inv;
    quot.push_back(Poly::Term{m, c});
    subtract_multiple(r, g, m, c, tmp);
  }
  return DivisionResult{Poly::from_canonical(f.table(), std::move(quot)),
                        Poly::from_canonical(f.table(), std::move(rem))};
}

}  // namespace weylpain
