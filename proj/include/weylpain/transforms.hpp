#ifndef WEYLPAIN_TRANSFORMS_HPP
#define WEYLPAIN_TRANSFORMS_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "weylpain/exactpoly.hpp"
#include "weylpain/report.hpp"
#include "weylpain/systems.hpp"

namespace weylpain {

// T = (a t + b)/(c t + d), ad - bc != 0.
struct MobiusTime {
  Rational a = 1, b = 0, c = 0, d = 1;

  bool is_identity() const { return b == 0 && c == 0 && a == d; }
  Rational apply(const Rational& t) const;  // throws Pole
  double apply(double t) const;
  RationalFunction as_function(const VarTablePtr& table) const;
  RationalFunction derivative(const VarTablePtr& table) const;  // dT/dt
  MobiusTime inverse() const;
  // then(first, second): t -> second(first(t))
  static MobiusTime then(const MobiusTime& first, const MobiusTime& second);
};

// alpha' = A alpha + offset.
struct ParamMap {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> offset;

  static ParamMap identity(int n);
  int size() const { return static_cast<int>(A.size()); }
  bool is_identity() const;
  std::vector<Rational> apply(const std::vector<Rational>& alpha) const;
  std::vector<double> apply(const std::vector<double>& alpha) const;
  // New alpha_i as polynomials in the old alphas.
  Bindings as_bindings(const VarTablePtr& table) const;
  static ParamMap then(const ParamMap& first, const ParamMap& second);
  bool preserves(const ParameterRelation& rel) const;
  bool operator==(const ParamMap& o) const { return A == o.A && offset == o.offset; }
};

struct BirationalMap {
  std::string name;
  std::string kind;  // chart, generator, automorphism, equivalence, stage
  std::string target_system;  // empty: the owning system
  VarTablePtr table;
  RationalFunction Q;
  RationalFunction P;
  MobiusTime time;
  ParamMap param;
  std::shared_ptr<const BirationalMap> inverse;
  // Maps applied in order whose composite is this map; empty for single maps.
  std::vector<std::shared_ptr<const BirationalMap>> stages;

  static BirationalMap identity(const VarTablePtr& table, int alpha_count);
};

// Parses the .map text format.
BirationalMap parse_map(const std::string& name, const std::string& text, const VarTablePtr& table, int alpha_count);

struct PointImage {
  Rational Q, P, T;
  std::vector<Rational> alpha;
};
PointImage apply_point(const BirationalMap& m, const Rational& q, const Rational& p, const Rational& t,
                       const std::vector<Rational>& alpha);

// compose(first, second) applies first, then second. Reduces modulo rel
// when given.
BirationalMap compose(const BirationalMap& first, const BirationalMap& second,
                      const ParameterRelation* rel = nullptr);

// Is m the identity on (q,p,t,alpha) modulo rel? Returns residual components.
std::vector<std::pair<std::string, Poly>> identity_residuals(const BirationalMap& m, const ParameterRelation& rel);

class Catalog {
 public:
  Catalog(std::string system, VarTablePtr table, ParameterRelation rel) :
      system_(std::move(system)), table_(std::move(table)), rel_(std::move(rel)) {}

  const std::string& system() const { return system_; }
  const VarTablePtr& table() const { return table_; }
  const ParameterRelation& relation() const { return rel_; }
  bool has(const std::string& name) const { return maps_.count(name) != 0; }
  const BirationalMap& get(const std::string& name) const;
  std::vector<std::string> names(const std::string& kind) const;  // natural order
  std::vector<std::string> all_names() const;
  void add(BirationalMap m);

 private:
  std::string system_;
  VarTablePtr table_;
  ParameterRelation rel_;
  std::map<std::string, BirationalMap> maps_;
};

// Loads transforms/<system>/*.map over the given table (defaults to the
// system's standard table).
Catalog load_catalog(const std::string& system, const std::filesystem::path& dir, VarTablePtr table = nullptr);
Catalog load_catalog(const std::string& system);

bool natural_less(const std::string& a, const std::string& b);

// Chain rule dC/dt = C_q f + C_p g + C_t for one map component.
RationalFunction chain_rule(const RationalFunction& c, const VectorField& vf);

struct PulledField {
  RationalFunction dX;  // in chart coordinates, stored in the q, p slots
  RationalFunction dY;
};
PulledField pullback_field(const HamiltonianSystem& sys, const BirationalMap& map);

struct CheckOptions {
  Mode mode = Mode::Symbolic;
  int samples = 20;
  std::uint64_t seed = 1;
  std::int64_t range = 1000000;
};

CheckReport check_polynomial_in_chart(const HamiltonianSystem& sys, const BirationalMap& chart,
                                      const CheckOptions& opt = {});
CheckReport check_symmetry(const HamiltonianSystem& sys, const BirationalMap& gen, const HamiltonianSystem& target,
                           const CheckOptions& opt = {});
CheckReport check_symmetry(const HamiltonianSystem& sys, const BirationalMap& gen, const CheckOptions& opt = {});
CheckReport check_symplectic(const BirationalMap& map, const ParameterRelation& rel, const std::string& system = "");
CheckReport check_equivalence_pvi(const HamiltonianSystem& g, const HamiltonianSystem& hvi, const BirationalMap& phi,
                                  const CheckOptions& opt = {});
CheckReport check_equivalence_pvi(const CheckOptions& opt = {});

// Residual polynomials of the two symmetry identities, symbolic mode.
std::vector<std::pair<std::string, Poly>> symmetry_residuals(const HamiltonianSystem& sys, const BirationalMap& gen,
                                                             const HamiltonianSystem& target);
// Remainders of the chart pullback numerators, symbolic mode.
std::vector<std::pair<std::string, Poly>> holomorphy_residuals(const HamiltonianSystem& sys,
                                                               const BirationalMap& chart);

BirationalMap specialize(const BirationalMap& m, const std::vector<Rational>& alpha);

}  // namespace weylpain

#endif
