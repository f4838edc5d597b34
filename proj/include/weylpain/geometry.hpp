#ifndef WEYLPAIN_GEOMETRY_HPP
#define WEYLPAIN_GEOMETRY_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "weylpain/report.hpp"
#include "weylpain/systems.hpp"
#include "weylpain/transforms.hpp"

namespace weylpain {

// Coefficients over the basis (D; E_1, ..., E_k); D.D = 2, E_i.E_i = -1.
using DivisorClass = std::vector<long>;

long intersect(const DivisorClass& a, const DivisorClass& b);

class SurfaceState {
 public:
  // Sigma_2 with the single curve D of square 2 and K = -2D.
  static SurfaceState sigma2(const std::string& curve_name = "D");

  int exceptional_count() const { return static_cast<int>(K_.size()) - 1; }
  bool has(const std::string& name) const { return index_.count(name) != 0; }
  const DivisorClass& cls(const std::string& name) const;
  const DivisorClass& canonical() const { return K_; }
  const std::vector<std::string>& curves() const { return order_; }
  const std::vector<DivisorClass>& contracted() const { return contracted_; }

  long dot(const std::string& a, const std::string& b) const { return intersect(cls(a), cls(b)); }
  long self_intersection(const std::string& a) const { return dot(a, a); }
  long K2() const { return intersect(K_, K_); }

  // New exceptional curve is registered under `name` (default E<k>).
  SurfaceState blow_up(const std::vector<std::string>& through, std::string name = "") const;
  // x -> x + (x.C) C; throws NotContractible unless C.C = -1.
  SurfaceState blow_down(const std::string& curve) const;

  // Parses "-D0 - D1 - 2*Dinf" style sums over current curve names.
  DivisorClass class_of(const std::string& sum) const;

 private:
  void extend();
  std::vector<std::string> order_;
  std::map<std::string, DivisorClass> index_;
  DivisorClass K_;
  std::vector<DivisorClass> contracted_;
};

CheckReport canonical_check(const SurfaceState& s, const std::string& expected, const std::string& system = "");

struct Expectation {
  int line = 0;
  std::string text;
  bool pass = false;
  std::string actual;
};

struct SequenceRun {
  SurfaceState state = SurfaceState::sigma2();
  std::vector<Expectation> expectations;
  int blowups = 0;
  int blowdowns = 0;
  bool pass() const;
};

// Directives: blowup <c1,c2,...|-> [as <name>]; blowdown <c>;
// expect <c> sq <n>; expect <a> dot <b> <n>; expectK <sum>; expectK2 <n>.
SequenceRun run_sequence(const std::string& script);
SequenceRun run_sequence_file(const std::string& system, const std::filesystem::path& dir);
std::vector<CheckReport> lattice_reports(const std::string& system, const SequenceRun& run);

// ---- accessible singular points ----

struct AccessiblePoint {
  int level = 0;
  std::string chart;     // z2, z3, u0, u1, uinf
  std::string expr;      // location on the boundary as text in the alphas
  std::string holo;      // holomorphy chart whose composition this point defines, may be empty
};

struct AccessibleSpec {
  std::vector<AccessiblePoint> points;
  std::vector<std::string> partial;  // charts whose other boundary zeros are not asserted
};

AccessibleSpec load_accessible(const std::string& system, const std::filesystem::path& dir);

// Boundary charts shared by all E-type systems.
BirationalMap boundary_chart(const std::string& name, const VarTablePtr& table, int alpha_count);

// Restricted numerators on the boundary Y = 0 after clearing the boundary power.
std::vector<Poly> boundary_numerators(const HamiltonianSystem& sys, const BirationalMap& chart);

CheckReport verify_accessible_points(const HamiltonianSystem& sys, int level, const AccessibleSpec& spec,
                                     std::uint64_t seed = 1, int samples = 5);
CheckReport verify_chart_composition(const HamiltonianSystem& sys, const Catalog& cat, const AccessiblePoint& pt,
                                     const std::string& chart_override = "");

}  // namespace weylpain

#endif
