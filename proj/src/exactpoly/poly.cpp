#include <algorithm>
#include <cstring>
#include <unordered_map>

#include "weylpain/exactpoly.hpp"

namespace weylpain {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Structural: return "STRUCTURAL";
    case ErrorCode::Syntax: return "SYNTAX";
    case ErrorCode::UnknownIdentifier: return "UNKNOWN_IDENTIFIER";
    case ErrorCode::Pole: return "POLE";
    case ErrorCode::DegreeMismatch: return "DEGREE_MISMATCH";
    case ErrorCode::UnsupportedAnsatz: return "UNSUPPORTED_ANSATZ";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
    case ErrorCode::Inconsistent: return "INCONSISTENT";
    case ErrorCode::NonInvolution: return "NON_INVOLUTION";
    case ErrorCode::NotAPermutation: return "NOT_A_PERMUTATION";
    case ErrorCode::NotContractible: return "NOT_CONTRACTIBLE";
    case ErrorCode::UnknownCurve: return "UNKNOWN_CURVE";
    case ErrorCode::Escape: return "ESCAPE";
    case ErrorCode::MaxSteps: return "MAX_STEPS";
    case ErrorCode::Precondition: return "PRECONDITION";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

Rational parse_rational(std::string_view s) {
  Rational r;
  if (r.set_str(std::string(s), 10) != 0)
    throw Error(ErrorCode::Syntax, "bad rational '" + std::string(s) + "'");
  if (r.get_den() == 0) throw Error(ErrorCode::Structural, "zero denominator");
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) { return r.get_str(10); }

// ---- VarTable ----

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVars)
    throw Error(ErrorCode::Structural, "too many variables (" + std::to_string(names_.size()) + ")");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw Error(ErrorCode::Structural, "duplicate variable " + names_[i]);
}

std::shared_ptr<const VarTable> VarTable::standard(int alpha_count, int unknown_count) {
  std::vector<std::string> n{"q", "p", "t"};
  for (int i = 0; i < alpha_count; ++i) n.push_back("a" + std::to_string(i));
  for (int k = 0; k < unknown_count; ++k) n.push_back("u" + std::to_string(k));
  auto vt = std::make_shared<VarTable>(std::move(n));
  vt->alpha_count_ = alpha_count;
  vt->unknown_count_ = unknown_count;
  vt->standard_ = true;
  return vt;
}

std::optional<std::size_t> VarTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t VarTable::index(std::string_view name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorCode::UnknownIdentifier, "unknown variable '" + std::string(name) + "'");
  return *i;
}

bool same_table(const VarTablePtr& a, const VarTablePtr& b) {
  return a == b || (a && b && *a == *b);
}

static void require_same(const Poly& a, const Poly& b) {
  if (!same_table(a.table(), b.table())) throw Error(ErrorCode::Structural, "VarTable mismatch");
}

// ---- Monomial ----

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::product(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a.e[i]) + b.e[i];
    if (s > 0xFFFFu) throw Error(ErrorCode::Structural, "exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  r.deg = a.deg + b.deg;
  return r;
}

Monomial Monomial::quotient(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
  r.deg = a.deg - b.deg;
  return r;
}

Monomial Monomial::unit(std::size_t var, unsigned power) {
  Monomial m;
  m.set(var, power);
  return m;
}

void Monomial::set(std::size_t var, unsigned power) {
  if (var >= kMaxVars) throw Error(ErrorCode::Structural, "variable index out of range");
  if (power > 0xFFFFu) throw Error(ErrorCode::Structural, "exponent overflow");
  deg = deg - e[var] + power;
  e[var] = static_cast<std::uint16_t>(power);
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    h ^= m.e[i];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

// ---- PolyBuilder ----

struct PolyBuilder::Impl {
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  Rational tmp;
};

PolyBuilder::PolyBuilder(VarTablePtr table) : table_(std::move(table)), impl_(std::make_unique<Impl>()) {}
PolyBuilder::~PolyBuilder() = default;

void PolyBuilder::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = impl_->acc.try_emplace(m);
  if (fresh)
    it->second = c;
  else
    it->second += c;
}

void PolyBuilder::add_product(const Monomial& m, const Rational& a, const Rational& b) {
  auto [it, fresh] = impl_->acc.try_emplace(m);
  if (fresh) {
    mpq_mul(it->second.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  } else {
    mpq_mul(impl_->tmp.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), impl_->tmp.get_mpq_t());
  }
}

void PolyBuilder::add(const Poly& p) {
  for (const auto& t : p.terms()) add(t.mono, t.coef);
}

void PolyBuilder::add_scaled(const Poly& p, const Monomial& m, const Rational& c) {
  for (const auto& t : p.terms()) add_product(Monomial::product(t.mono, m), t.coef, c);
}

Poly PolyBuilder::finish() {
  Poly out(table_);
  out.terms_.reserve(impl_->acc.size());
  for (auto& [m, c] : impl_->acc)
    if (c != 0) out.terms_.push_back(Poly::Term{m, std::move(c)});
  impl_->acc.clear();
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Poly::Term& a, const Poly::Term& b) { return GrlexGreater{}(a.mono, b.mono); });
  return out;
}

// ---- Poly ----

Poly::Poly(VarTablePtr table, std::vector<Term> terms) : table_(std::move(table)) {
  PolyBuilder b(table_);
  for (auto& t : terms) b.add(t.mono, t.coef);
  *this = b.finish();
}

Poly Poly::constant(VarTablePtr table, const Rational& c) {
  Poly r(std::move(table));
  if (c != 0) r.terms_.push_back(Term{Monomial{}, c});
  return r;
}

Poly Poly::var(VarTablePtr table, std::size_t idx, unsigned power) {
  if (idx >= table->size()) throw Error(ErrorCode::Structural, "variable index out of range");
  Poly r(std::move(table));
  r.terms_.push_back(Term{Monomial::unit(idx, power), Rational(1)});
  return r;
}

Poly Poly::var(VarTablePtr table, std::string_view name) {
  std::size_t i = table->index(name);
  return var(std::move(table), i);
}

Poly Poly::monomial(VarTablePtr table, const Monomial& m, const Rational& c) {
  Poly r(std::move(table));
  if (c != 0) r.terms_.push_back(Term{m, c});
  return r;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.deg == 0); }

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.deg == 0) return terms_.back().coef;
  return Rational(0);
}

int Poly::total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.deg); }

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.mono.e[var]);
  return d;
}

int Poly::degree_in(const std::vector<std::size_t>& vars) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (auto v : vars) s += t.mono.e[v];
    d = std::max(d, s);
  }
  return d;
}

bool Poly::involves(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.mono.e[var]) return true;
  return false;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

namespace {

Poly merge(const Poly& a, const Poly& b, bool subtract) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  GrlexGreater gt;
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && gt(ia->mono, ib->mono))) {
      out.push_back(*ia++);
    } else if (ia == ea || gt(ib->mono, ia->mono)) {
      out.push_back(Poly::Term{ib->mono, subtract ? Rational(-ib->coef) : ib->coef});
      ++ib;
    } else {
      Rational c = subtract ? Rational(ia->coef - ib->coef) : Rational(ia->coef + ib->coef);
      if (c != 0) out.push_back(Poly::Term{ia->mono, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return Poly::from_canonical(a.table(), std::move(out));
}

}  // namespace

Poly Poly::from_canonical(VarTablePtr table, std::vector<Term> terms) {
  Poly r(std::move(table));
  r.terms_ = std::move(terms);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  require_same(*this, o);
  if (o.is_zero()) return *this;
  *this = merge(*this, o, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same(*this, o);
  if (o.is_zero()) return *this;
  *this = merge(*this, o, true);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.table());
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& big = a.size() <= b.size() ? b : a;
  if (small.size() == 1) {
    // order is preserved by multiplication with a monomial
    const auto& s = small.terms_[0];
    std::vector<Poly::Term> out;
    out.reserve(big.size());
    for (const auto& t : big.terms_) out.push_back(Poly::Term{Monomial::product(t.mono, s.mono), t.coef * s.coef});
    return Poly::from_canonical(a.table(), std::move(out));
  }
  PolyBuilder acc(a.table());
  for (const auto& s : small.terms_)
    for (const auto& t : big.terms_) acc.add_product(Monomial::product(s.mono, t.mono), s.coef, t.coef);
  return acc.finish();
}

bool Poly::operator==(const Poly& o) const {
  if (!same_table(table_, o.table_) || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coef != o.terms_[i].coef) return false;
  return true;
}

Poly add(const Poly& a, const Poly& b) { return a + b; }
Poly mul(const Poly& a, const Poly& b) { return a * b; }

Poly pow(const Poly& a, unsigned n) {
  Poly r = Poly::constant(a.table(), 1);
  if (n == 0) return r;
  if (a.is_monomial()) {
    const auto& t = a.terms()[0];
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned long s = static_cast<unsigned long>(t.mono.e[i]) * n;
      if (s > 0xFFFFu) throw Error(ErrorCode::Structural, "exponent overflow");
      m.e[i] = static_cast<std::uint16_t>(s);
    }
    m.deg = t.mono.deg * n;
    Rational c;
    mpz_pow_ui(c.get_num_mpz_t(), t.coef.get_num_mpz_t(), n);
    mpz_pow_ui(c.get_den_mpz_t(), t.coef.get_den_mpz_t(), n);
    return Poly::monomial(a.table(), m, c);
  }
  // repeated multiplication keeps one factor small, which beats squaring
  // for sparse inputs
  r = a;
  for (unsigned i = 1; i < n; ++i) r = r * a;
  return r;
}

Poly derivative(const Poly& a, std::size_t var) {
  if (var >= a.table()->size()) throw Error(ErrorCode::Structural, "variable index out of range");
  std::vector<Poly::Term> out;
  for (const auto& t : a.terms()) {
    unsigned e = t.mono.e[var];
    if (!e) continue;
    Monomial m = t.mono;
    m.e[var] = static_cast<std::uint16_t>(e - 1);
    m.deg -= 1;
    out.push_back(Poly::Term{m, t.coef * e});
  }
  // shifting every surviving exponent vector by the same unit keeps the order
  return Poly::from_canonical(a.table(), std::move(out));
}

Poly derivative(const Poly& a, std::string_view var) { return derivative(a, a.table()->index(var)); }

Poly retable(const Poly& a, const VarTablePtr& target) {
  if (same_table(a.table(), target)) return Poly::from_canonical(target, a.terms());
  std::vector<std::optional<std::size_t>> map(a.table()->size());
  for (std::size_t i = 0; i < a.table()->size(); ++i) map[i] = target->find(a.table()->name(i));
  std::vector<Poly::Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < a.table()->size(); ++i) {
      if (!t.mono.e[i]) continue;
      if (!map[i])
        throw Error(ErrorCode::Structural, "variable " + a.table()->name(i) + " missing from target table");
      m.e[*map[i]] = t.mono.e[i];
    }
    m.deg = t.mono.deg;
    out.push_back(Poly::Term{m, t.coef});
  }
  return Poly(target, std::move(out));
}

std::vector<std::pair<Monomial, Poly>> collect(const Poly& a, const std::vector<std::size_t>& vars) {
  std::vector<std::pair<Monomial, std::vector<Poly::Term>>> groups;
  std::unordered_map<Monomial, std::size_t, MonomialHash> where;
  for (const auto& t : a.terms()) {
    Monomial key, rest = t.mono;
    for (auto v : vars) {
      key.e[v] = t.mono.e[v];
      key.deg += t.mono.e[v];
      rest.e[v] = 0;
    }
    rest.deg -= key.deg;
    auto [it, fresh] = where.try_emplace(key, groups.size());
    if (fresh) groups.emplace_back(key, std::vector<Poly::Term>{});
    groups[it->second].second.push_back(Poly::Term{rest, t.coef});
  }
  std::vector<std::pair<Monomial, Poly>> out;
  out.reserve(groups.size());
  // the relative order of the remaining parts is still descending
  for (auto& [k, ts] : groups) out.emplace_back(k, Poly(a.table(), std::move(ts)));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return GrlexGreater{}(x.first, y.first); });
  return out;
}

Poly coefficient_of(const Poly& a, std::size_t var, unsigned power) {
  std::vector<Poly::Term> out;
  for (const auto& t : a.terms()) {
    if (t.mono.e[var] != power) continue;
    Monomial m = t.mono;
    m.e[var] = 0;
    m.deg -= power;
    out.push_back(Poly::Term{m, t.coef});
  }
  return Poly(a.table(), std::move(out));
}

Monomial monomial_content(const Poly& a) {
  if (a.is_zero()) return Monomial{};
  Monomial m = a.terms()[0].mono;
  for (const auto& t : a.terms())
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = std::min(m.e[i], t.mono.e[i]);
  m.deg = 0;
  for (auto x : m.e) m.deg += x;
  return m;
}

Poly divide_by_monomial(const Poly& a, const Monomial& m) {
  std::vector<Poly::Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) {
    if (!m.divides(t.mono)) throw Error(ErrorCode::Structural, "monomial does not divide term");
    out.push_back(Poly::Term{Monomial::quotient(t.mono, m), t.coef});
  }
  return Poly::from_canonical(a.table(), std::move(out));
}

// ---- relation ----

int LinearRelation::eliminated() const {
  for (int i = static_cast<int>(coeff.size()) - 1; i >= 0; --i)
    if (coeff[i] != 0) return i;
  throw Error(ErrorCode::Structural, "relation has no nonzero coefficient");
}

Poly reduce_mod_relation(const Poly& a, const LinearRelation& rel, int eliminated) {
  const auto& vt = a.table();
  if (eliminated < 0 || eliminated >= static_cast<int>(rel.coeff.size()) || rel.coeff[eliminated] == 0)
    throw Error(ErrorCode::Structural, "zero coefficient on eliminated parameter");
  if (eliminated >= vt->alpha_count()) throw Error(ErrorCode::Structural, "eliminated parameter not in table");
  std::size_t var = vt->alpha(eliminated);
  if (!a.involves(var)) return a;
  const Rational& c = rel.coeff[eliminated];
  Poly sol = Poly::constant(vt, rel.constant / c);
  for (int i = 0; i < static_cast<int>(rel.coeff.size()) && i < vt->alpha_count(); ++i) {
    if (i == eliminated || rel.coeff[i] == 0) continue;
    sol -= Poly::var(vt, vt->alpha(i)) * Rational(rel.coeff[i] / c);
  }
  Bindings b;
  b.emplace(var, RationalFunction(sol));
  auto [num, den] = substitute_parts(a, b);
  return num;  // denominator is 1 for a polynomial binding
}

Poly reduce_mod_relation(const Poly& a, const LinearRelation& rel) {
  return reduce_mod_relation(a, rel, rel.eliminated());
}

// ---- evaluation ----

Point make_point(const VarTablePtr& table, const std::map<std::string, Rational>& values) {
  Point pt(table->size());
  for (const auto& [k, v] : values) pt[table->index(k)] = v;
  return pt;
}

namespace {

// Cached powers of a rational, grown on demand.
class PowerCache {
 public:
  explicit PowerCache(std::size_t nvars) : pw_(nvars) {}
  void reset(std::size_t var, const Rational& x) {
    pw_[var].assign(1, Rational(1));
    pw_[var].push_back(x);
  }
  const Rational& get(std::size_t var, unsigned e) {
    auto& v = pw_[var];
    while (v.size() <= e) v.push_back(v.back() * v[1]);
    return v[e];
  }

 private:
  std::vector<std::vector<Rational>> pw_;
};

}  // namespace

Rational eval_at(const Poly& a, const Point& point) {
  std::size_t n = a.table()->size();
  if (point.size() != n) throw Error(ErrorCode::Structural, "point size mismatch");
  PowerCache pc(n);
  for (std::size_t i = 0; i < n; ++i)
    if (point[i]) pc.reset(i, *point[i]);
  Rational sum = 0, term;
  for (const auto& t : a.terms()) {
    term = t.coef;
    for (std::size_t i = 0; i < n; ++i) {
      if (!t.mono.e[i]) continue;
      if (!point[i]) throw Error(ErrorCode::Structural, "variable " + a.table()->name(i) + " unbound");
      term *= pc.get(i, t.mono.e[i]);
    }
    sum += term;
  }
  return sum;
}

Rational eval_at(const Poly& a, const std::map<std::string, Rational>& point) {
  return eval_at(a, make_point(a.table(), point));
}

Poly partial_eval(const Poly& a, const Point& point) {
  std::size_t n = a.table()->size();
  if (point.size() != n) throw Error(ErrorCode::Structural, "point size mismatch");
  PowerCache pc(n);
  for (std::size_t i = 0; i < n; ++i)
    if (point[i]) pc.reset(i, *point[i]);
  PolyBuilder b(a.table());
  Rational c;
  for (const auto& t : a.terms()) {
    c = t.coef;
    Monomial m = t.mono;
    for (std::size_t i = 0; i < n; ++i) {
      if (!point[i] || !m.e[i]) continue;
      c *= pc.get(i, m.e[i]);
      m.deg -= m.e[i];
      m.e[i] = 0;
    }
    b.add(m, c);
  }
  return b.finish();
}

double eval_double(const Poly& a, const std::vector<double>& point) {
  double sum = 0;
  for (const auto& t : a.terms()) {
    double term = t.coef.get_d();
    for (std::size_t i = 0; i < point.size(); ++i)
      for (unsigned k = 0; k < t.mono.e[i]; ++k) term *= point[i];
    sum += term;
  }
  return sum;
}

}  // namespace weylpain
