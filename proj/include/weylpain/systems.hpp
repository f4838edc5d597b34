#ifndef WEYLPAIN_SYSTEMS_HPP
#define WEYLPAIN_SYSTEMS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "weylpain/exactpoly.hpp"
#include "weylpain/report.hpp"

namespace weylpain {

// sum coeff[i]*alpha_i = constant; E6 stores (3,1,2,1,2,2,1 | 0).
using ParameterRelation = LinearRelation;

ParameterRelation parse_relation(const std::string& text);
bool relation_holds(const ParameterRelation& rel, const std::vector<Rational>& alpha);

struct HamiltonianSystem {
  std::string name;
  std::string variant;
  VarTablePtr table;
  RationalFunction hamiltonian;  // denominator involves only t
  ParameterRelation relation;
  int alpha_count = 0;
  int declared_degree = -1;  // -1: no degree assertion

  Poly reduce(const Poly& a) const { return reduce_mod_relation(a, relation); }
  RationalFunction reduce(const RationalFunction& a) const;
  const Poly& time_denominator() const { return hamiltonian.den(); }
};

struct VectorField {
  RationalFunction f;  // dq/dt
  RationalFunction g;  // dp/dt
};

struct SystemInfo {
  int alpha_count = 0;
  int degree = -1;
  std::string accepted;  // variant that the check suites run on
  std::string denominator = "1";
};

std::vector<std::string> known_systems();
SystemInfo system_info(const std::string& name, const std::filesystem::path& dir);
std::vector<std::string> list_variants(const std::string& name, const std::filesystem::path& dir);

HamiltonianSystem load_system(const std::string& name, const std::string& variant,
                              const std::filesystem::path& dir);
HamiltonianSystem load_system(const std::string& name, const std::string& variant);
HamiltonianSystem load_accepted(const std::string& name);

// Builds a system from an explicit Hamiltonian; throws DegreeMismatch when
// declared_degree >= 0 disagrees with the (q,p)-degree of the numerator.
HamiltonianSystem make_system(std::string name, std::string variant, RationalFunction h,
                              ParameterRelation rel, int declared_degree = -1);

int qp_degree(const Poly& a);

VectorField vector_field(const HamiltonianSystem& sys);

CheckReport check_first_integral(const HamiltonianSystem& sys);

// The same system with every alpha replaced by the given values.
HamiltonianSystem specialize(const HamiltonianSystem& sys, const std::vector<Rational>& alpha);

// Returns the Hamiltonian H + monomial, re-validated.
HamiltonianSystem add_monomial(const HamiltonianSystem& sys, unsigned qa, unsigned pb, const Rational& eps);

// ---- repair ----

// An ansatz is a Hamiltonian over a table with unknowns u0..u{k-1}.
HamiltonianSystem load_ansatz(const std::string& name, const std::string& ansatz,
                              const std::filesystem::path& dir);
std::vector<std::string> list_ansatze(const std::string& name, const std::filesystem::path& dir);

struct AnsatzSolution {
  enum class Kind { Unique, Family, Infeasible } kind = Kind::Infeasible;
  std::vector<Rational> particular;            // one solution when feasible
  std::vector<std::vector<Rational>> nullspace;  // family directions
  std::size_t equations = 0;
  int family_dimension() const { return static_cast<int>(nullspace.size()); }
  std::string describe() const;
};

// Constraint identifiers: "holomorphy:<chart>", "symmetry:<generator>",
// "first-integral". Maps come from the catalog of the ansatz's system.
AnsatzSolution repair_hamiltonian(const HamiltonianSystem& ansatz, const std::vector<std::string>& constraints,
                                  const std::filesystem::path& dir);

// Linear algebra over Q on rows [c_1..c_k | rhs].
AnsatzSolution solve_affine(std::vector<std::vector<Rational>> rows, std::size_t unknowns);

// Turns residual polynomials (affine in the unknowns) into equation rows.
void append_equations(const Poly& residual, int unknown_count, std::vector<std::vector<Rational>>& rows);

}  // namespace weylpain

#endif
