#include <sstream>

#include "weylpain/data_dir.hpp"
#include "weylpain/transforms.hpp"

namespace weylpain {

// ---- MobiusTime ----

Rational MobiusTime::apply(const Rational& t) const {
  Rational den = c * t + d;
  if (den == 0) throw Error(ErrorCode::Pole, "time map has a pole at t = " + format_rational(t));
  Rational r = (a * t + b) / den;
  r.canonicalize();
  return r;
}

double MobiusTime::apply(double t) const {
  return (a.get_d() * t + b.get_d()) / (c.get_d() * t + d.get_d());
}

RationalFunction MobiusTime::as_function(const VarTablePtr& table) const {
  Poly tt = Poly::var(table, VarTable::t);
  return RationalFunction(a * tt + Poly::constant(table, b), c * tt + Poly::constant(table, d));
}

RationalFunction MobiusTime::derivative(const VarTablePtr& table) const {
  // (ad - bc)/(ct + d)^2
  Poly den = c * Poly::var(table, VarTable::t) + Poly::constant(table, d);
  return RationalFunction(Poly::constant(table, a * d - b * c), den * den);
}

MobiusTime MobiusTime::inverse() const {
  if (a * d - b * c == 0) throw Error(ErrorCode::Structural, "degenerate time map");
  return MobiusTime{d, -b, -c, a};
}

MobiusTime MobiusTime::then(const MobiusTime& f, const MobiusTime& s) {
  // matrix product s * f
  MobiusTime r{s.a * f.a + s.b * f.c, s.a * f.b + s.b * f.d, s.c * f.a + s.d * f.c, s.c * f.b + s.d * f.d};
  // keep a canonical scale: d = 1 when possible, else c = 1
  Rational k = r.d != 0 ? r.d : r.c;
  if (k != 0 && k != 1) {
    r.a /= k;
    r.b /= k;
    r.c /= k;
    r.d /= k;
  }
  return r;
}

// ---- ParamMap ----

ParamMap ParamMap::identity(int n) {
  ParamMap m;
  m.A.assign(n, std::vector<Rational>(n, Rational(0)));
  m.offset.assign(n, Rational(0));
  for (int i = 0; i < n; ++i) m.A[i][i] = 1;
  return m;
}

bool ParamMap::is_identity() const { return *this == identity(size()); }

std::vector<Rational> ParamMap::apply(const std::vector<Rational>& alpha) const {
  std::vector<Rational> out(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    Rational s = offset[i];
    for (std::size_t j = 0; j < A[i].size(); ++j)
      if (A[i][j] != 0) s += A[i][j] * alpha.at(j);
    out[i] = s;
  }
  return out;
}

std::vector<double> ParamMap::apply(const std::vector<double>& alpha) const {
  std::vector<double> out(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    double s = offset[i].get_d();
    for (std::size_t j = 0; j < A[i].size(); ++j) s += A[i][j].get_d() * alpha.at(j);
    out[i] = s;
  }
  return out;
}

Bindings ParamMap::as_bindings(const VarTablePtr& table) const {
  Bindings b;
  for (int i = 0; i < size(); ++i) {
    Poly e = Poly::constant(table, offset[i]);
    for (int j = 0; j < size(); ++j)
      if (A[i][j] != 0) e += A[i][j] * Poly::var(table, table->alpha(j));
    if (e != Poly::var(table, table->alpha(i))) b.emplace(table->alpha(i), RationalFunction(e));
  }
  return b;
}

ParamMap ParamMap::then(const ParamMap& f, const ParamMap& s) {
  int n = f.size();
  if (s.size() != n) throw Error(ErrorCode::Structural, "parameter maps of different sizes");
  ParamMap r = identity(n);
  for (int i = 0; i < n; ++i) {
    Rational off = s.offset[i];
    for (int j = 0; j < n; ++j) {
      Rational v = 0;
      for (int k = 0; k < n; ++k) v += s.A[i][k] * f.A[k][j];
      r.A[i][j] = v;
      off += s.A[i][j] * f.offset[j];
    }
    r.offset[i] = off;
  }
  return r;
}

bool ParamMap::preserves(const ParameterRelation& rel) const {
  // c.(A alpha + o) = K on the hyperplane c.alpha = K: c^T A = lambda c^T and
  // lambda K + c.o = K.
  int n = size();
  std::vector<Rational> row(n);
  for (int j = 0; j < n; ++j) {
    Rational s = 0;
    for (int i = 0; i < n; ++i) s += rel.coeff[i] * A[i][j];
    row[j] = s;
  }
  Rational off = 0;
  for (int i = 0; i < n; ++i) off += rel.coeff[i] * offset[i];
  int e = rel.eliminated();
  Rational lambda = row[e] / rel.coeff[e];
  for (int j = 0; j < n; ++j)
    if (row[j] != lambda * rel.coeff[j]) return false;
  return lambda * rel.constant + off == rel.constant;
}

static ParamMap invert(const ParamMap& m) {
  int n = m.size();
  // Gauss-Jordan on [A | I]
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(2 * n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = m.A[i][j];
    w[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (w[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error(ErrorCode::Structural, "parameter map is singular");
    std::swap(w[piv], w[c]);
    Rational inv = 1 / w[c][c];
    for (auto& x : w[c]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || w[r][c] == 0) continue;
      Rational f = w[r][c];
      for (int k = 0; k < 2 * n; ++k) w[r][k] -= f * w[c][k];
    }
  }
  ParamMap r = ParamMap::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.A[i][j] = w[i][n + j];
  for (int i = 0; i < n; ++i) {
    Rational s = 0;
    for (int j = 0; j < n; ++j) s -= r.A[i][j] * m.offset[j];
    r.offset[i] = s;
  }
  return r;
}

// ---- BirationalMap ----

BirationalMap BirationalMap::identity(const VarTablePtr& table, int alpha_count) {
  BirationalMap m{"id",
                  "identity",
                  "",
                  table,
                  RationalFunction::var(table, VarTable::q),
                  RationalFunction::var(table, VarTable::p),
                  MobiusTime{},
                  ParamMap::identity(alpha_count),
                  nullptr,
                  {}};
  m.inverse = std::make_shared<const BirationalMap>(m);
  return m;
}

static std::vector<Rational> parse_row(const std::string& line, int n, Rational& constant) {
  auto bar = line.find('|');
  std::vector<Rational> row;
  for (const auto& w : split_ws(line.substr(0, bar))) row.push_back(parse_rational(w));
  if (static_cast<int>(row.size()) != n)
    throw Error(ErrorCode::Io, "parameter row has " + std::to_string(row.size()) + " entries, expected " +
                                   std::to_string(n));
  constant = 0;
  if (bar != std::string::npos) {
    auto rhs = split_ws(line.substr(bar + 1));
    if (rhs.size() != 1) throw Error(ErrorCode::Io, "parameter row needs one offset after '|'");
    constant = parse_rational(rhs[0]);
  }
  return row;
}

BirationalMap parse_map(const std::string& name, const std::string& text, const VarTablePtr& table,
                        int alpha_count) {
  std::map<std::string, std::string> kv;
  BirationalMap m = BirationalMap::identity(table, alpha_count);
  m.name = name;
  m.kind = "";
  bool self_inverse = false;
  std::vector<std::string> stage_names;
  auto lines = content_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    auto sp = line.find_first_of(" \t");
    std::string key = line.substr(0, sp), val = sp == std::string::npos ? "" : trim(line.substr(sp));
    if (key == "param") {
      for (int r = 0; r < alpha_count; ++r) {
        if (++i >= lines.size()) throw Error(ErrorCode::Io, name + ": truncated param block");
        m.param.A[r] = parse_row(lines[i], alpha_count, m.param.offset[r]);
      }
    } else if (key == "kind") {
      m.kind = val;
    } else if (key == "target") {
      m.target_system = val;
    } else if (key == "time") {
      auto w = split_ws(val);
      if (w.size() != 4) throw Error(ErrorCode::Io, name + ": time needs four coefficients");
      m.time = MobiusTime{parse_rational(w[0]), parse_rational(w[1]), parse_rational(w[2]), parse_rational(w[3])};
      if (m.time.a * m.time.d - m.time.b * m.time.c == 0)
        throw Error(ErrorCode::Structural, name + ": degenerate time map");
    } else if (key == "inverse") {
      if (val != "self") throw Error(ErrorCode::Io, name + ": 'inverse' accepts only 'self'");
      self_inverse = true;
    } else if (key == "stages") {
      stage_names = split_ws(val);
      kv[key] = val;
    } else if (key == "Q.num" || key == "Q.den" || key == "P.num" || key == "P.den" || key == "inverse.Q.num" ||
               key == "inverse.Q.den" || key == "inverse.P.num" || key == "inverse.P.den") {
      kv[key] = val;
    } else {
      throw Error(ErrorCode::Io, name + ": unknown key '" + key + "'");
    }
  }
  if (m.kind.empty()) throw Error(ErrorCode::Io, name + ": missing kind");
  auto get = [&](const std::string& k, const char* dflt) { return kv.count(k) ? kv[k] : std::string(dflt); };
  auto rf = [&](const std::string& prefix, const char* dnum) {
    Poly den = parse_poly(get(prefix + ".den", "1"), table);
    if (den.is_zero()) throw Error(ErrorCode::Structural, name + ": zero denominator in " + prefix);
    return RationalFunction(parse_poly(get(prefix + ".num", dnum), table), den);
  };
  m.Q = rf("Q", "q");
  m.P = rf("P", "p");
  if (self_inverse || kv.count("inverse.Q.num") || kv.count("inverse.P.num")) {
    auto inv = std::make_shared<BirationalMap>(m);
    inv->name = name + "^-1";
    inv->inverse = nullptr;
    if (!self_inverse) {
      inv->Q = rf("inverse.Q", "q");
      inv->P = rf("inverse.P", "p");
      inv->time = m.time.inverse();
      inv->param = invert(m.param);
    }
    m.inverse = inv;
  }
  if (!stage_names.empty()) {
    // resolved by the catalog; remember the names via placeholder stages
    for (const auto& s : stage_names) {
      auto ph = std::make_shared<BirationalMap>(BirationalMap::identity(table, alpha_count));
      ph->name = s;
      ph->kind = "placeholder";
      m.stages.push_back(ph);
    }
  }
  return m;
}

PointImage apply_point(const BirationalMap& m, const Rational& q, const Rational& p, const Rational& t,
                       const std::vector<Rational>& alpha) {
  const auto& vt = m.table;
  Point pt(vt->size());
  pt[VarTable::q] = q;
  pt[VarTable::p] = p;
  pt[VarTable::t] = t;
  for (int i = 0; i < m.param.size(); ++i) pt[vt->alpha(i)] = alpha.at(i);
  for (std::size_t i = 3 + m.param.size(); i < vt->size(); ++i) pt[i] = Rational(0);
  PointImage r;
  r.Q = eval_at(m.Q, pt);
  r.P = eval_at(m.P, pt);
  r.T = m.time.apply(t);
  r.alpha = m.param.apply(alpha);
  return r;
}

static RationalFunction reduce_rf(const RationalFunction& a, const ParameterRelation* rel) {
  if (!rel) return a;
  if (a.is_polynomial()) return RationalFunction(reduce_mod_relation(a.num(), *rel) * (1 / a.den().constant_term()));
  return RationalFunction(reduce_mod_relation(a.num(), *rel), reduce_mod_relation(a.den(), *rel));
}

static BirationalMap compose_plain(const BirationalMap& f, const BirationalMap& s, const ParameterRelation* rel) {
  if (f.param.size() != s.param.size())
    throw Error(ErrorCode::Structural, "compose: parameter counts differ (" + f.name + ", " + s.name + ")");
  Bindings b = f.param.as_bindings(f.table);
  b.emplace(VarTable::q, f.Q);
  b.emplace(VarTable::p, f.P);
  if (!f.time.is_identity()) b.emplace(VarTable::t, f.time.as_function(f.table));
  BirationalMap r = BirationalMap::identity(f.table, f.param.size());
  r.name = f.name + "." + s.name;
  r.kind = "composite";
  r.target_system = s.target_system.empty() ? f.target_system : s.target_system;
  r.Q = reduce_rf(substitute(s.Q, b), rel);
  r.P = reduce_rf(substitute(s.P, b), rel);
  r.time = MobiusTime::then(f.time, s.time);
  r.param = ParamMap::then(f.param, s.param);
  return r;
}

BirationalMap compose(const BirationalMap& first, const BirationalMap& second, const ParameterRelation* rel) {
  BirationalMap r = compose_plain(first, second, rel);
  if (first.inverse && second.inverse) {
    auto inv = std::make_shared<BirationalMap>(compose_plain(*second.inverse, *first.inverse, rel));
    inv->name = r.name + "^-1";
    r.inverse = inv;
  }
  return r;
}

std::vector<std::pair<std::string, Poly>> identity_residuals(const BirationalMap& m, const ParameterRelation& rel) {
  const auto& vt = m.table;
  std::vector<std::pair<std::string, Poly>> out;
  auto comp = [&](const char* n, const RationalFunction& c, std::size_t var) {
    Poly r = reduce_mod_relation(c.num() - Poly::var(vt, var) * c.den(), rel);
    if (!r.is_zero()) out.emplace_back(n, r);
  };
  comp("Q", m.Q, VarTable::q);
  comp("P", m.P, VarTable::p);
  if (!m.time.is_identity()) {
    // (a t + b) - t (c t + d)
    Poly tt = Poly::var(vt, VarTable::t);
    Poly r = m.time.a * tt + Poly::constant(vt, m.time.b) - tt * (m.time.c * tt + Poly::constant(vt, m.time.d));
    out.emplace_back("T", r);
  }
  for (int i = 0; i < m.param.size(); ++i) {
    Poly e = Poly::constant(vt, m.param.offset[i]);
    for (int j = 0; j < m.param.size(); ++j)
      if (m.param.A[i][j] != 0) e += m.param.A[i][j] * Poly::var(vt, vt->alpha(j));
    Poly r = reduce_mod_relation(e - Poly::var(vt, vt->alpha(i)), rel);
    if (!r.is_zero()) out.emplace_back("alpha" + std::to_string(i), r);
  }
  return out;
}

BirationalMap specialize(const BirationalMap& m, const std::vector<Rational>& alpha) {
  Point pt(m.table->size());
  for (int i = 0; i < m.param.size(); ++i) pt[m.table->alpha(i)] = alpha.at(i);
  auto sp = [&](const RationalFunction& a) {
    Poly den = partial_eval(a.den(), pt);
    if (den.is_zero()) throw Error(ErrorCode::Pole, m.name + ": denominator vanishes at the parameters");
    return RationalFunction(partial_eval(a.num(), pt), den);
  };
  BirationalMap r = m;
  r.Q = sp(m.Q);
  r.P = sp(m.P);
  if (m.inverse) {
    // the inverse lives on the image parameters
    auto inv = std::make_shared<BirationalMap>(specialize(*m.inverse, m.param.apply(alpha)));
    r.inverse = inv;
  }
  r.stages.clear();
  std::vector<Rational> cur = alpha;
  for (const auto& s : m.stages) {
    r.stages.push_back(std::make_shared<BirationalMap>(specialize(*s, cur)));
    cur = s->param.apply(cur);
  }
  return r;
}

}  // namespace weylpain
