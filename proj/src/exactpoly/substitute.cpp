#include <algorithm>

#include "weylpain/exactpoly.hpp"

namespace weylpain {

namespace {

struct BoundVar {
  std::size_t var;
  unsigned degree;               // exponent budget for the common denominator
  std::vector<Poly> scaled;      // scaled[e] = num^e * den^(degree-e)
};

Poly combine(const std::vector<std::pair<Monomial, Poly>>& groups, std::size_t lo, std::size_t hi,
             const std::vector<BoundVar>& vars, std::size_t level, const VarTablePtr& table) {
  if (level == vars.size()) {
    Poly s(table);
    for (std::size_t i = lo; i < hi; ++i) s += groups[i].second;
    return s;
  }
  std::size_t v = vars[level].var;
  PolyBuilder acc(table);
  std::size_t i = lo;
  while (i < hi) {
    unsigned e = groups[i].first.e[v];
    std::size_t j = i;
    while (j < hi && groups[j].first.e[v] == e) ++j;
    Poly inner = combine(groups, i, j, vars, level + 1, table);
    const Poly& w = vars[level].scaled[e];
    if (w.is_monomial()) {
      acc.add_scaled(inner, w.terms()[0].mono, w.terms()[0].coef);
    } else {
      const Poly& small = inner.size() < w.size() ? inner : w;
      const Poly& big = inner.size() < w.size() ? w : inner;
      for (const auto& s : small.terms()) acc.add_scaled(big, s.mono, s.coef);
    }
    i = j;
  }
  return acc.finish();
}

std::pair<Poly, Poly> substitute_impl(const Poly& a, const Bindings& b, const std::vector<unsigned>& degs) {
  const auto& table = a.table();
  for (const auto& [v, rf] : b) {
    if (v >= table->size()) throw Error(ErrorCode::Structural, "binding for unknown variable");
    if (!same_table(rf.table(), table)) throw Error(ErrorCode::Structural, "binding VarTable mismatch");
    if (rf.den().is_zero()) throw Error(ErrorCode::Structural, "binding with zero denominator");
  }

  bool all_constant = true;
  for (const auto& [v, rf] : b)
    if (!(rf.num().is_constant() && rf.den().is_constant())) all_constant = false;
  if (all_constant) {
    Point pt(table->size());
    for (const auto& [v, rf] : b)
      pt[v] = rf.num().constant_term() / rf.den().constant_term();
    Poly den = Poly::constant(table, 1);
    return {partial_eval(a, pt), den};
  }

  std::vector<BoundVar> vars;
  Poly den = Poly::constant(table, 1);
  for (const auto& [v, rf] : b) {
    unsigned d = degs[v];
    if (d == 0) continue;
    BoundVar bv{v, d, {}};
    std::vector<Poly> npow{Poly::constant(table, 1)}, dpow{Poly::constant(table, 1)};
    bool unit_den = rf.den().is_constant() && rf.den().constant_term() == 1;
    for (unsigned e = 1; e <= d; ++e) {
      npow.push_back(npow.back() * rf.num());
      if (!unit_den) dpow.push_back(dpow.back() * rf.den());
    }
    for (unsigned e = 0; e <= d; ++e) bv.scaled.push_back(unit_den ? npow[e] : npow[e] * dpow[d - e]);
    if (!unit_den) den = den * dpow[d];
    vars.push_back(std::move(bv));
  }
  if (vars.empty()) return {a, den};

  // lexicographic on the bound exponents so each level sees contiguous runs
  std::vector<std::size_t> idx;
  for (const auto& bv : vars) idx.push_back(bv.var);
  auto groups = collect(a, idx);
  std::sort(groups.begin(), groups.end(), [&](const auto& x, const auto& y) {
    for (const auto& bv : vars)
      if (x.first.e[bv.var] != y.first.e[bv.var]) return x.first.e[bv.var] < y.first.e[bv.var];
    return false;
  });
  Poly num = combine(groups, 0, groups.size(), vars, 0, table);
  return {std::move(num), std::move(den)};
}

std::vector<unsigned> degrees_of(const Poly& a) {
  std::vector<unsigned> d(a.table()->size(), 0);
  for (const auto& t : a.terms())
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max<unsigned>(d[i], t.mono.e[i]);
  return d;
}

}  // namespace

std::pair<Poly, Poly> substitute_parts(const Poly& a, const Bindings& b) {
  return substitute_impl(a, b, degrees_of(a));
}

RationalFunction substitute(const Poly& a, const Bindings& b) {
  auto [n, d] = substitute_parts(a, b);
  return RationalFunction(std::move(n), std::move(d));
}

RationalFunction substitute(const RationalFunction& a, const Bindings& b) {
  // a shared exponent budget makes both denominators identical, so they cancel
  auto dn = degrees_of(a.num()), dd = degrees_of(a.den());
  for (std::size_t i = 0; i < dn.size(); ++i) dn[i] = std::max(dn[i], dd[i]);
  auto [nn, nd] = substitute_impl(a.num(), b, dn);
  auto [dn2, dd2] = substitute_impl(a.den(), b, dn);
  if (dn2.is_zero()) throw Error(ErrorCode::Pole, "denominator vanishes identically after substitution");
  return RationalFunction(std::move(nn), std::move(dn2));
}

RationalFunction substitute(const Poly& a, const std::map<std::string, RationalFunction>& b) {
  Bindings ib;
  for (const auto& [k, v] : b) ib.emplace(a.table()->index(k), v);
  return substitute(a, ib);
}

}  // namespace weylpain
