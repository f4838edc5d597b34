#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "weylpain/data_dir.hpp"
#include "weylpain/sampling.hpp"
#include "weylpain/systems.hpp"
#include "weylpain/transforms.hpp"

using namespace weylpain;

TEST_CASE("relations") {
  auto rel = parse_relation("3 1 2 1 2 2 1 | 0");
  CHECK(rel.coeff.size() == 7);
  CHECK(rel.eliminated() == 6);
  CHECK(load_accepted("e6").relation.coeff == rel.coeff);
  auto e7 = load_accepted("e7").relation;
  CHECK(e7.coeff == std::vector<Rational>{4, 3, 2, 1, 3, 2, 1, 2});
  auto e8 = load_accepted("e8").relation;
  CHECK(e8.coeff == std::vector<Rational>{6, 5, 4, 3, 2, 1, 4, 2, 3});
  auto pvi = load_accepted("pvi_g").relation;
  CHECK(pvi.coeff == std::vector<Rational>{1, 1, 2, 1, 1});
  CHECK(pvi.constant == 1);
  CHECK(relation_holds(pvi, {0, 0, 0, 0, 1}));
  CHECK_FALSE(relation_holds(pvi, {0, 0, 0, 0, 0}));
}

TEST_CASE("declared degrees") {
  CHECK(qp_degree(load_system("e6", "verbatim").hamiltonian.num()) == 7);
  CHECK(qp_degree(load_system("e7", "verbatim").hamiltonian.num()) == 10);
  CHECK(qp_degree(load_system("e8", "verbatim").hamiltonian.num()) == 15);
  CHECK(qp_degree(load_accepted("pvi_g").hamiltonian.num()) == 7);
  for (const auto& name : {"e6", "e7", "e8"}) CHECK(load_accepted(name).hamiltonian.den() == Poly::constant(load_accepted(name).table, 1));
}

TEST_CASE("degree mismatch carries the actual degree") {
  auto e6 = load_accepted("e6");
  try {
    make_system("e6", "x", e6.hamiltonian, e6.relation, 5);
    FAIL("no error");
  } catch (const DegreeMismatch& e) {
    CHECK(e.actual() == 7);
  }
  CHECK_THROWS_AS(load_system("e6", "nosuch"), Error);
  CHECK_THROWS_AS(load_system("nosuch", "verbatim"), Error);
}

TEST_CASE("vector field of q*p") {
  auto t = VarTable::standard(7);
  auto sys = make_system("e6", "qp", RationalFunction(parse_poly("q*p", t)), load_accepted("e6").relation);
  auto vf = vector_field(sys);
  CHECK(vf.f.num() == parse_poly("q", t));
  CHECK(vf.g.num() == parse_poly("-p", t));
}

TEST_CASE("H_VI field denominators divide t(t-1)") {
  auto sys = load_accepted("pvi_hvi");
  auto vf = vector_field(sys);
  Poly tt = parse_poly("t^2 - t", sys.table);
  CHECK(divide_exact(tt, vf.f.den()));
  CHECK(divide_exact(tt, vf.g.den()));
}

TEST_CASE("field signs are Hamilton's") {
  for (const auto& name : {"e6", "e7", "pvi_g"}) {
    auto sys = load_accepted(name);
    auto vf = vector_field(sys);
    auto g = sys.reduce(-derivative(sys.hamiltonian, VarTable::q));
    CHECK(vf.g.num() * g.den() == g.num() * vf.g.den());
  }
}

TEST_CASE("E6 field matches finite differences of I") {
  auto sys = load_accepted("e6");
  auto vf = vector_field(sys);
  Sampler smp(3);
  auto alpha = smp.small_alpha_on(sys.relation);
  std::vector<double> pt(sys.table->size(), 0);
  pt[VarTable::q] = 2;
  pt[VarTable::p] = 1;
  for (int i = 0; i < sys.alpha_count; ++i) pt[sys.table->alpha(i)] = alpha[i].get_d();
  const double h = 1e-6;
  auto H = [&](double q, double p) {
    auto x = pt;
    x[VarTable::q] = q;
    x[VarTable::p] = p;
    return eval_double(sys.hamiltonian, x);
  };
  double dHdp = (H(2, 1 + h) - H(2, 1 - h)) / (2 * h);
  double dHdq = (H(2 + h, 1) - H(2 - h, 1)) / (2 * h);
  double f = eval_double(vf.f, pt), g = eval_double(vf.g, pt);
  CHECK(std::abs(f - dHdp) <= 1e-6 * std::max(1.0, std::abs(f)));
  CHECK(std::abs(g + dHdq) <= 1e-6 * std::max(1.0, std::abs(g)));
}

TEST_CASE("first integrals") {
  CHECK(check_first_integral(load_accepted("e6")).pass());
  CHECK(check_first_integral(load_accepted("e7")).pass());
  auto t = VarTable::standard(7);
  auto sys = make_system("e6", "qpt", RationalFunction(parse_poly("q*p*t", t)), load_accepted("e6").relation);
  auto r = check_first_integral(sys);
  REQUIRE_FALSE(r.pass());
  REQUIRE(r.residuals.size() == 1);
  CHECK(*r.residuals[0].poly == parse_poly("q*p", t));
}

TEST_CASE("transcription variants") {
  auto vs = list_variants("e6", data_dir());
  CHECK(std::find(vs.begin(), vs.end(), "verbatim") != vs.end());
  CHECK(std::find(vs.begin(), vs.end(), "plus-inserted") != vs.end());
  // both readings are well-formed degree-7 Hamiltonians
  CHECK(qp_degree(load_system("e6", "plus-inserted").hamiltonian.num()) == 7);
  CHECK(system_info("e6", data_dir()).accepted == "repaired");
  CHECK(system_info("pvi_g", data_dir()).denominator != "1");
}

TEST_CASE("solve_affine") {
  // u0 + u1 = 2, u0 - u1 = 0
  auto s = solve_affine({{1, 1, 2}, {1, -1, 0}}, 2);
  CHECK(s.kind == AnsatzSolution::Kind::Unique);
  CHECK(s.particular == std::vector<Rational>{1, 1});
  auto f = solve_affine({{1, 1, 2}}, 2);
  CHECK(f.kind == AnsatzSolution::Kind::Family);
  CHECK(f.family_dimension() == 1);
  auto i = solve_affine({{1, 1, 2}, {2, 2, 3}}, 2);
  CHECK(i.kind == AnsatzSolution::Kind::Infeasible);
  auto z = solve_affine({}, 0);
  CHECK(z.kind == AnsatzSolution::Kind::Unique);
  CHECK(z.particular.empty());
}

TEST_CASE("repair: per-summand unknowns select the repaired reading") {
  auto a = load_ansatz("e6", "q-block-terms", data_dir());
  auto s = repair_hamiltonian(a, {"holomorphy:*"}, data_dir());
  REQUIRE(s.kind == AnsatzSolution::Kind::Unique);
  CHECK(s.particular == std::vector<Rational>(7, 1));
}

TEST_CASE("repair: the plus-inserted reading cannot be rescaled into a solution") {
  auto a = load_ansatz("e6", "block-scale", data_dir());
  CHECK(repair_hamiltonian(a, {"holomorphy:*"}, data_dir()).kind == AnsatzSolution::Kind::Infeasible);
}

TEST_CASE("repair: E7 drops the stray factor") {
  auto a = load_ansatz("e7", "stray-factor", data_dir());
  auto s = repair_hamiltonian(a, {"holomorphy:*"}, data_dir());
  REQUIRE(s.kind == AnsatzSolution::Kind::Unique);
  CHECK(s.particular == std::vector<Rational>{0, 1});
}

TEST_CASE("repair: zero unknowns with passing constraints") {
  auto s = repair_hamiltonian(load_accepted("e6"), {"holomorphy:*", "symmetry:*", "first-integral"}, data_dir());
  CHECK(s.kind == AnsatzSolution::Kind::Unique);
  CHECK(s.particular.empty());
}

TEST_CASE("repair: H = c*q") {
  auto t = VarTable::standard(7, 1);
  auto sys = make_system("e6", "cq", RationalFunction(parse_poly("u0*q", t)), load_accepted("e6").relation);
  // s1 fixes q and p, so every c is a solution
  CHECK(repair_hamiltonian(sys, {"symmetry:s1"}, data_dir()).family_dimension() == 1);
  auto all = repair_hamiltonian(sys, {"symmetry:*"}, data_dir());
  REQUIRE(all.kind == AnsatzSolution::Kind::Unique);
  CHECK(all.particular == std::vector<Rational>{0});
}

TEST_CASE("repair rejects nonlinear unknowns") {
  auto t = VarTable::standard(7, 1);
  auto sys = make_system("e6", "sq", RationalFunction(parse_poly("u0^2*q", t)), load_accepted("e6").relation);
  try {
    repair_hamiltonian(sys, {"symmetry:s1"}, data_dir());
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedAnsatz);
  }
}

TEST_CASE("single-monomial mutations are detected") {
  auto sys = load_accepted("e6");
  auto cat = load_catalog("e6");
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<unsigned> d(0, 7);
  for (int k = 0; k < 10; ++k) {
    unsigned a, b;
    do {
      a = d(rng);
      b = d(rng);
    } while (a + b > 7 || a + b == 0);
    auto m = add_monomial(sys, a, b, 1);
    bool caught = !check_first_integral(m).pass();
    for (const auto& c : cat.names("chart")) caught = caught || !check_polynomial_in_chart(m, cat.get(c)).pass();
    for (const auto& g : cat.names("generator")) caught = caught || !check_symmetry(m, cat.get(g)).pass();
    CHECK_MESSAGE(caught, "q^" << a << " p^" << b);
  }
}
