#include <sstream>

#include "weylpain/data_dir.hpp"
#include "weylpain/sampling.hpp"
#include "weylpain/transforms.hpp"

namespace weylpain {

namespace {

RationalFunction reduce_rf(const RationalFunction& a, const ParameterRelation& rel) {
  return RationalFunction(reduce_mod_relation(a.num(), rel), reduce_mod_relation(a.den(), rel));
}

Bindings image_bindings(const BirationalMap& m) {
  Bindings b = m.param.as_bindings(m.table);
  b.emplace(VarTable::q, m.Q);
  b.emplace(VarTable::p, m.P);
  if (!m.time.is_identity()) b.emplace(VarTable::t, m.time.as_function(m.table));
  return b;
}

VectorField pullback_vf(const VectorField& vf, const BirationalMap& m, const ParameterRelation& rel) {
  if (!m.inverse) throw Error(ErrorCode::Unsupported, "map " + m.name + " has no inverse");
  RationalFunction dX = chain_rule(m.Q, vf), dY = chain_rule(m.P, vf);
  if (!m.time.is_identity()) {
    RationalFunction tp = m.time.derivative(m.table);
    dX = dX / tp;
    dY = dY / tp;
  }
  Bindings b = image_bindings(*m.inverse);
  return VectorField{reduce_rf(substitute(dX, b), rel), reduce_rf(substitute(dY, b), rel)};
}

std::vector<std::shared_ptr<const BirationalMap>> stages_of(const BirationalMap& m) {
  if (!m.stages.empty()) return m.stages;
  return {std::make_shared<BirationalMap>(m)};
}

Point full_point(const VarTablePtr& vt, const Rational& q, const Rational& p, const Rational& t,
                 const std::vector<Rational>& alpha) {
  Point pt(vt->size(), Rational(0));
  pt[VarTable::q] = q;
  pt[VarTable::p] = p;
  pt[VarTable::t] = t;
  for (std::size_t i = 0; i < alpha.size(); ++i) pt[vt->alpha(static_cast<int>(i))] = alpha[i];
  return pt;
}

std::string describe_point(const Rational& q, const Rational& p, const Rational& t) {
  return "q=" + format_rational(q) + " p=" + format_rational(p) + " t=" + format_rational(t);
}

std::string alpha_text(const std::vector<Rational>& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + format_rational(a[i]);
  return s + ")";
}

}  // namespace

RationalFunction chain_rule(const RationalFunction& c, const VectorField& vf) {
  RationalFunction r = derivative(c, VarTable::q) * vf.f + derivative(c, VarTable::p) * vf.g;
  RationalFunction ct = derivative(c, VarTable::t);
  return ct.is_zero() ? r : r + ct;
}

PulledField pullback_field(const HamiltonianSystem& sys, const BirationalMap& map) {
  VectorField vf = vector_field(sys);
  for (const auto& s : stages_of(map)) vf = pullback_vf(vf, *s, sys.relation);
  return PulledField{vf.f, vf.g};
}

std::vector<std::pair<std::string, Poly>> holomorphy_residuals(const HamiltonianSystem& sys,
                                                               const BirationalMap& chart) {
  VectorField vf = vector_field(sys);
  RationalFunction dt(sys.time_denominator());
  for (const auto& s : stages_of(chart)) {
    vf = pullback_vf(vf, *s, sys.relation);
    if (!s->time.is_identity()) dt = substitute(dt, Bindings{{VarTable::t, s->inverse->time.as_function(sys.table)}});
  }
  std::vector<std::pair<std::string, Poly>> out;
  auto one = [&](const char* name, const RationalFunction& c) {
    RationalFunction e = reduce_rf(c * dt, sys.relation);
    if (e.is_polynomial()) return;
    DivisionResult d = divide_with_remainder(e.num(), e.den());
    if (!d.remainder.is_zero()) out.emplace_back(name, d.remainder);
  };
  one("dX/dT", vf.f);
  one("dY/dT", vf.g);
  return out;
}

CheckReport check_polynomial_in_chart(const HamiltonianSystem& sys, const BirationalMap& chart,
                                      const CheckOptions& opt) {
  Stopwatch sw;
  CheckReport rep;
  rep.check = "holomorphy";
  rep.system = sys.name;
  rep.target = chart.name;
  rep.mode = opt.mode;
  if (opt.mode == Mode::Symbolic) {
    for (auto& [c, r] : holomorphy_residuals(sys, chart)) rep.fail(c, r);
  } else {
    rep.samples = opt.samples;
    rep.seed = opt.seed;
    Sampler smp(opt.seed, opt.range);
    for (int k = 0; k < opt.samples && rep.pass(); ++k) {
      auto alpha = smp.alpha_on(sys.relation);
      HamiltonianSystem s = specialize(sys, alpha);
      BirationalMap m = specialize(chart, alpha);
      for (auto& [c, r] : holomorphy_residuals(s, m))
        rep.fail(c, "sample " + std::to_string(k) + " alpha=" + alpha_text(alpha) + ": " + format(r));
    }
  }
  rep.elapsed_ms = sw.ms();
  return rep;
}

std::vector<std::pair<std::string, Poly>> symmetry_residuals(const HamiltonianSystem& sys, const BirationalMap& gen,
                                                             const HamiltonianSystem& target) {
  const auto& vt = sys.table;
  VectorField vf = vector_field(sys);
  RationalFunction lq = chain_rule(gen.Q, vf), lp = chain_rule(gen.P, vf);
  RationalFunction th(retable(target.hamiltonian.num(), vt), retable(target.hamiltonian.den(), vt));
  Bindings b = image_bindings(gen);
  RationalFunction rq = substitute(derivative(th, VarTable::p), b);
  RationalFunction rp = -substitute(derivative(th, VarTable::q), b);
  if (!gen.time.is_identity()) {
    RationalFunction tp = gen.time.derivative(vt);
    rq = tp * rq;
    rp = tp * rp;
  }
  std::vector<std::pair<std::string, Poly>> out;
  auto diff = [&](const char* name, const RationalFunction& l, const RationalFunction& r) {
    Poly d = sys.reduce(l.num() * r.den() - r.num() * l.den());
    if (!d.is_zero()) out.emplace_back(name, d);
  };
  diff("dQ/dt", lq, rq);
  diff("dP/dt", lp, rp);
  return out;
}

CheckReport check_symmetry(const HamiltonianSystem& sys, const BirationalMap& gen, const HamiltonianSystem& target,
                           const CheckOptions& opt) {
  Stopwatch sw;
  CheckReport rep;
  rep.check = "symmetry";
  rep.system = sys.name;
  rep.target = gen.name;
  rep.mode = opt.mode;
  if (!gen.param.preserves(target.relation))
    rep.fail("alpha", "parameter map does not carry the relation onto the target relation");
  if (opt.mode == Mode::Symbolic) {
    for (auto& [c, r] : symmetry_residuals(sys, gen, target)) rep.fail(c, r);
  } else {
    rep.samples = opt.samples;
    rep.seed = opt.seed;
    const auto& vt = sys.table;
    const auto& h = sys.hamiltonian;
    RationalFunction hp = derivative(h, VarTable::p), hq = derivative(h, VarTable::q);
    RationalFunction th(retable(target.hamiltonian.num(), vt), retable(target.hamiltonian.den(), vt));
    RationalFunction thp = derivative(th, VarTable::p), thq = derivative(th, VarTable::q);
    RationalFunction comps[2] = {gen.Q, gen.P};
    std::vector<std::vector<RationalFunction>> partial(2);
    for (int i = 0; i < 2; ++i)
      for (std::size_t v = 0; v < 3; ++v) partial[i].push_back(derivative(comps[i], v));
    RationalFunction tp = gen.time.derivative(vt);
    Sampler smp(opt.seed, opt.range);
    int done = 0, attempts = 0;
    while (done < opt.samples && rep.pass()) {
      if (++attempts > 10 * opt.samples + 10) {
        rep.fail("sampling", "too many sample points hit poles");
        break;
      }
      Rational q = smp.integer(), p = smp.integer(), t = smp.integer();
      auto alpha = smp.alpha_on(sys.relation);
      Rational lhs[2], rhs[2];
      try {
        Point pt = full_point(vt, q, p, t, alpha);
        Rational f = eval_at(hp, pt), g = -eval_at(hq, pt);
        for (int i = 0; i < 2; ++i)
          lhs[i] = eval_at(partial[i][0], pt) * f + eval_at(partial[i][1], pt) * g + eval_at(partial[i][2], pt);
        PointImage img = apply_point(gen, q, p, t, alpha);
        Point ipt = full_point(vt, img.Q, img.P, img.T, img.alpha);
        Rational s = eval_at(tp, pt);
        rhs[0] = s * eval_at(thp, ipt);
        rhs[1] = -s * eval_at(thq, ipt);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Pole) continue;
        throw;
      }
      for (int i = 0; i < 2; ++i)
        if (lhs[i] != rhs[i])
          rep.fail(i ? "dP/dt" : "dQ/dt", "sample " + std::to_string(done) + " at " + describe_point(q, p, t) +
                                               " alpha=" + alpha_text(alpha) + ": lhs - rhs = " +
                                               format_rational(Rational(lhs[i] - rhs[i])));
      ++done;
    }
  }
  rep.elapsed_ms = sw.ms();
  return rep;
}

CheckReport check_symmetry(const HamiltonianSystem& sys, const BirationalMap& gen, const CheckOptions& opt) {
  if (gen.target_system.empty() || gen.target_system == sys.name) return check_symmetry(sys, gen, sys, opt);
  return check_symmetry(sys, gen, load_accepted(gen.target_system), opt);
}

CheckReport check_symplectic(const BirationalMap& m, const ParameterRelation& rel, const std::string& system) {
  Stopwatch sw;
  CheckReport rep;
  rep.check = "symplectic";
  rep.system = system;
  rep.target = m.name;
  RationalFunction j = derivative(m.Q, VarTable::q) * derivative(m.P, VarTable::p) -
                       derivative(m.Q, VarTable::p) * derivative(m.P, VarTable::q);
  Poly r = reduce_mod_relation(j.num() - j.den(), rel);
  if (!r.is_zero()) rep.fail("det", r);
  rep.elapsed_ms = sw.ms();
  return rep;
}

CheckReport check_equivalence_pvi(const HamiltonianSystem& g, const HamiltonianSystem& hvi, const BirationalMap& phi,
                                  const CheckOptions& opt) {
  CheckReport rep = check_symmetry(g, phi, hvi, opt);
  rep.check = "equivalence";
  return rep;
}

CheckReport check_equivalence_pvi(const CheckOptions& opt) {
  HamiltonianSystem g = load_accepted("pvi_g");
  Catalog cat = load_catalog("pvi_g", data_dir(), g.table);
  return check_equivalence_pvi(g, load_accepted("pvi_hvi"), cat.get("phi"), opt);
}

}  // namespace weylpain
