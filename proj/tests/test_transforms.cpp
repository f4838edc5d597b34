#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "weylpain/sampling.hpp"
#include "weylpain/systems.hpp"
#include "weylpain/transforms.hpp"

using namespace weylpain;

namespace {

const Catalog& e6cat() {
  static Catalog c = load_catalog("e6");
  return c;
}
const Catalog& pvicat() {
  static Catalog c = load_catalog("pvi_g");
  return c;
}

bool is_identity(const BirationalMap& m, const ParameterRelation& rel) { return identity_residuals(m, rel).empty(); }

}  // namespace

TEST_CASE("apply_point examples") {
  auto sys = load_accepted("e6");
  Sampler smp(2);
  auto alpha = smp.small_alpha_on(sys.relation);
  alpha[0] = Rational(1, 2);
  alpha[6] = 0;
  Rational s = 0;
  for (int i = 0; i < 7; ++i) s += sys.relation.coeff[i] * alpha[i];
  alpha[6] = -s;  // coefficient of a6 is 1
  auto img = apply_point(e6cat().get("s0"), 2, 1, 0, alpha);
  CHECK(img.Q == Rational(5, 2));
  CHECK(img.P == 1);
  CHECK(img.alpha[0] == Rational(-1, 2));
  CHECK(img.alpha[2] == alpha[2] + Rational(1, 2));
  CHECK(relation_holds(sys.relation, img.alpha));

  auto pi = apply_point(e6cat().get("pi1"), 3, 2, 5, alpha);
  CHECK(pi.Q == -2);
  CHECK(pi.P == -2);
  CHECK(pi.T == -4);

  try {
    apply_point(e6cat().get("r0"), 0, 1, 0, alpha);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Pole);
  }
}

TEST_CASE("pullback through the identity") {
  auto sys = load_accepted("e6");
  auto pf = pullback_field(sys, BirationalMap::identity(sys.table, sys.alpha_count));
  auto vf = vector_field(sys);
  CHECK(pf.dX.num() * vf.f.den() == vf.f.num() * pf.dX.den());
  CHECK(pf.dY.num() * vf.g.den() == vf.g.num() * pf.dY.den());
}

TEST_CASE("pulled-back field agrees with the numeric chain rule") {
  auto sys = load_accepted("e6");
  const auto& r1 = e6cat().get("r1");
  auto pf = pullback_field(sys, r1);
  auto vf = vector_field(sys);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2, 2);
  Sampler smp(8);
  for (int k = 0; k < 10; ++k) {
    auto alpha = smp.small_alpha_on(sys.relation);
    std::vector<double> x(sys.table->size(), 0);
    x[VarTable::q] = u(rng);
    x[VarTable::p] = u(rng);
    for (int i = 0; i < 7; ++i) x[sys.table->alpha(i)] = alpha[i].get_d();
    double f = eval_double(vf.f, x), g = eval_double(vf.g, x);
    double dX = eval_double(derivative(r1.Q, VarTable::q), x) * f + eval_double(derivative(r1.Q, VarTable::p), x) * g;
    double dY = eval_double(derivative(r1.P, VarTable::q), x) * f + eval_double(derivative(r1.P, VarTable::p), x) * g;
    auto y = x;
    y[VarTable::q] = eval_double(r1.Q, x);
    y[VarTable::p] = eval_double(r1.P, x);
    double a = eval_double(pf.dX, y), b = eval_double(pf.dY, y);
    CHECK(std::abs(a - dX) <= 1e-10 * std::max(1.0, std::abs(dX)));
    CHECK(std::abs(b - dY) <= 1e-10 * std::max(1.0, std::abs(dY)));
  }
}

TEST_CASE("holomorphy examples") {
  auto e6 = load_accepted("e6");
  CHECK(check_polynomial_in_chart(e6, e6cat().get("r0")).pass());
  CHECK(check_polynomial_in_chart(load_accepted("pvi_g"), pvicat().get("rr3")).pass());
  // q p^3 has a double pole on the line r2 resolves
  auto m = add_monomial(e6, 1, 3, 1);
  auto r = check_polynomial_in_chart(m, e6cat().get("r2"));
  REQUIRE_FALSE(r.pass());
  CHECK_FALSE(r.residuals[0].poly->is_zero());
}

TEST_CASE("every E6 and PVI chart and symmetry passes") {
  auto e6 = load_accepted("e6");
  for (const auto& c : e6cat().names("chart")) CHECK_MESSAGE(check_polynomial_in_chart(e6, e6cat().get(c)).pass(), c);
  for (const auto* kind : {"generator", "automorphism"})
    for (const auto& g : e6cat().names(kind)) CHECK_MESSAGE(check_symmetry(e6, e6cat().get(g)).pass(), g);
  auto pvi = load_accepted("pvi_g");
  for (const auto& c : pvicat().names("chart")) CHECK_MESSAGE(check_polynomial_in_chart(pvi, pvicat().get(c)).pass(), c);
  for (const auto& g : pvicat().names("generator")) CHECK_MESSAGE(check_symmetry(pvi, pvicat().get(g)).pass(), g);
  CHECK(e6cat().names("chart").size() == 7);
  CHECK(e6cat().names("generator").size() == 7);
  CHECK(e6cat().names("automorphism").size() == 3);
}

TEST_CASE("symmetry examples") {
  auto e6 = load_accepted("e6");
  CHECK(check_symmetry(e6, e6cat().get("s2")).pass());
  CHECK(check_symmetry(e6, e6cat().get("pi2")).pass());
  CHECK(check_symmetry(load_accepted("pvi_g"), pvicat().get("w0")).pass());
  // w0 carries the Mobius time t/(t-1)
  const auto& w0 = pvicat().get("w0");
  CHECK_FALSE(w0.time.is_identity());
  CHECK(w0.time.apply(Rational(3)) == Rational(3, 2));
}

TEST_CASE("symplectic examples") {
  auto rel = load_accepted("e6").relation;
  CHECK(check_symplectic(e6cat().get("r0"), rel).pass());
  CHECK(check_symplectic(e6cat().get("pi1"), rel).pass());
  CHECK(check_symplectic(pvicat().get("phi"), load_accepted("pvi_g").relation).pass());
  // (q, 2p) doubles the form
  auto t = load_accepted("e6").table;
  BirationalMap m = BirationalMap::identity(t, 7);
  m.P = RationalFunction(parse_poly("2*p", t));
  CHECK_FALSE(check_symplectic(m, rel).pass());
}

TEST_CASE("every catalog map is symplectic and preserves its relation") {
  for (const auto& name : known_systems()) {
    if (name == "pvi_hvi") continue;
    auto sys = load_accepted(name);
    auto cat = load_catalog(name);
    for (const auto& m : cat.all_names()) {
      CHECK_MESSAGE(check_symplectic(cat.get(m), sys.relation).pass(), name << " " << m);
      CHECK_MESSAGE(cat.get(m).param.preserves(sys.relation), name << " " << m);
    }
    for (const auto& g : cat.names("generator")) {
      const auto& pm = cat.get(g).param;
      if (name.rfind("e", 0) == 0) CHECK_MESSAGE(ParamMap::then(pm, pm).is_identity(), g);
    }
  }
}

TEST_CASE("compose") {
  auto rel = load_accepted("e6").relation;
  const auto& s1 = e6cat().get("s1");
  CHECK(ParamMap::then(s1.param, s1.param).is_identity());
  CHECK(is_identity(compose(s1, s1, &rel), rel));
  auto id = BirationalMap::identity(s1.table, 7);
  auto m = compose(id, e6cat().get("s2"), &rel);
  const auto& s2 = e6cat().get("s2");
  CHECK(m.Q.num() * s2.Q.den() == s2.Q.num() * m.Q.den());
  CHECK(m.P.num() * s2.P.den() == s2.P.num() * m.P.den());
  CHECK(m.param == s2.param);
  const auto& r0 = e6cat().get("r0");
  REQUIRE(r0.inverse);
  CHECK(is_identity(compose(r0, *r0.inverse, &rel), rel));
  CHECK(is_identity(compose(*r0.inverse, r0, &rel), rel));
  CHECK_FALSE(is_identity(r0, rel));
  auto other = BirationalMap::identity(VarTable::standard(8), 8);
  CHECK_THROWS_AS(compose(r0, other), Error);
}

TEST_CASE("every stored inverse inverts") {
  for (const auto& name : {"e6", "pvi_g"}) {
    auto cat = load_catalog(name);
    auto rel = cat.relation();
    for (const auto& n : cat.all_names()) {
      const auto& m = cat.get(n);
      if (!m.inverse || !m.target_system.empty()) continue;
      CHECK_MESSAGE(is_identity(compose(m, *m.inverse, &rel), rel), n);
    }
  }
}

TEST_CASE("PVI equivalence") {
  CHECK(check_equivalence_pvi().pass());
  auto g = load_accepted("pvi_g");
  auto h = load_accepted("pvi_hvi");
  auto mutated = make_system("pvi_hvi", "mutated", h.hamiltonian + RationalFunction::var(h.table, VarTable::q),
                             h.relation);
  CHECK_FALSE(check_equivalence_pvi(g, mutated, pvicat().get("phi")).pass());
}

TEST_CASE("PVI equivalence numeric spot check") {
  auto g = load_accepted("pvi_g");
  auto h = load_accepted("pvi_hvi");
  const auto& phi = pvicat().get("phi");
  auto vg = vector_field(g), vh = vector_field(h);
  Sampler smp(12);
  auto alpha = smp.small_alpha_on(g.relation);
  std::vector<double> x(g.table->size(), 0);
  x[VarTable::q] = 0.3;
  x[VarTable::p] = -0.7;
  x[VarTable::t] = 2.5;
  for (int i = 0; i < 5; ++i) x[g.table->alpha(i)] = alpha[i].get_d();
  double f = eval_double(vg.f, x), gg = eval_double(vg.g, x);
  double dQ = eval_double(derivative(phi.Q, VarTable::q), x) * f + eval_double(derivative(phi.Q, VarTable::p), x) * gg;
  double dP = eval_double(derivative(phi.P, VarTable::q), x) * f + eval_double(derivative(phi.P, VarTable::p), x) * gg;
  auto y = x;
  y[VarTable::q] = eval_double(phi.Q, x);
  y[VarTable::p] = eval_double(phi.P, x);
  CHECK(std::abs(eval_double(vh.f, y) - dQ) <= 1e-10 * std::max(1.0, std::abs(dQ)));
  CHECK(std::abs(eval_double(vh.g, y) - dP) <= 1e-10 * std::max(1.0, std::abs(dP)));
}

TEST_CASE("probabilistic mode never contradicts symbolic mode") {
  auto e6 = load_accepted("e6");
  CheckOptions prob;
  prob.mode = Mode::Probabilistic;
  prob.samples = 20;
  prob.seed = 17;
  auto m = add_monomial(e6, 1, 3, 1);
  for (const auto* sys : {&e6, &m}) {
    for (const auto& c : e6cat().names("chart")) {
      auto a = check_polynomial_in_chart(*sys, e6cat().get(c));
      auto b = check_polynomial_in_chart(*sys, e6cat().get(c), prob);
      CHECK_MESSAGE(a.pass() == b.pass(), c);
      CHECK(b.samples == 20);
      CHECK(b.seed == 17);
    }
    for (const auto& g : e6cat().names("generator")) {
      CHECK_MESSAGE(check_symmetry(*sys, e6cat().get(g)).pass() == check_symmetry(*sys, e6cat().get(g), prob).pass(),
                    g);
    }
  }
}

TEST_CASE("generator mutations break the symmetry") {
  auto e6 = load_accepted("e6");
  auto t = e6.table;
  auto s2 = e6cat().get("s2");
  s2.P = s2.P - RationalFunction(parse_poly("a2", t), parse_poly("q", t));  // alpha_2 -> 2 alpha_2
  CHECK_FALSE(check_symmetry(e6, s2).pass());
  auto s0 = e6cat().get("s0");
  s0.param.A[0][0] = 1;  // alpha_0 no longer negated
  CHECK_FALSE(check_symmetry(e6, s0).pass());
}

TEST_CASE("map file errors") {
  auto t = VarTable::standard(7);
  CHECK_THROWS_AS(parse_map("x", "kind chart\nQ.num q +\n", t, 7), Error);
  CHECK_THROWS_AS(e6cat().get("nosuch"), Error);
}
