#ifndef WEYLPAIN_FLOW_HPP
#define WEYLPAIN_FLOW_HPP

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "weylpain/report.hpp"
#include "weylpain/systems.hpp"
#include "weylpain/transforms.hpp"

namespace weylpain {

enum class Method { RK4, RK45 };

struct IntegratorConfig {
  Method method = Method::RK45;
  double step = 1e-3;  // fixed step for RK4, first trial step for RK45
  double tolerance = 1e-10;
  // per-component error scale: tolerance * (absolute_floor + |y_i|)
  double absolute_floor = 1;
  double chart_switch_threshold = 1e6;
  // Besides the hard threshold, move to another chart whenever its
  // coordinates are smaller by this factor; 0 disables eager moves.
  double eager_switch_ratio = 2;
  long max_steps = 2000000;
  // Nonempty: samples are taken exactly at these times (in integration
  // order) instead of at every accepted step.
  std::vector<double> output_times;

  void validate() const;  // throws Precondition
};

// Polynomial or rational function in (x, y, t) with double coefficients.
class CompiledFunction {
 public:
  CompiledFunction() = default;
  explicit CompiledFunction(const RationalFunction& f);
  // NaN at a pole.
  double operator()(double x, double y, double t) const;

 private:
  struct Term {
    double c;
    int a, b, d;
  };
  static double eval(const std::vector<Term>& terms, double x, double y, double t);
  std::vector<Term> num_, den_;
  bool polynomial_ = true;
};

// The flow of one system at fixed parameters, in the original chart (index
// 0, "qp") and in every holomorphy chart of the catalog.
class FlowModel {
 public:
  FlowModel(const HamiltonianSystem& sys, const Catalog* cat, std::vector<Rational> alpha);

  int chart_count() const { return static_cast<int>(charts_.size()); }
  const std::string& chart_name(int c) const { return charts_.at(c).name; }
  int chart_index(const std::string& name) const;  // throws Precondition
  const std::vector<Rational>& alpha() const { return alpha_; }
  const std::string& system() const { return system_; }
  // Specialized chart map; null for the original chart.
  const BirationalMap* chart_map(int c) const { return charts_.at(c).map.get(); }

  // false when the field is not finite there
  bool field(int c, double t, double x, double y, double out[2]) const;
  double invariant(int c, double t, double x, double y) const;
  // Coordinates of the same point in another chart; false at a pole.
  bool transition(int from, int to, double t, double x, double y, double& X, double& Y) const;

 private:
  struct Chart {
    std::string name;
    std::shared_ptr<const BirationalMap> map;  // specialized; null for chart 0
    CompiledFunction dx, dy, inv;
  };
  struct Transition {
    bool ready = false;
    CompiledFunction X, Y;
  };
  const Transition& transition_of(int from, int to) const;

  std::string system_;
  std::vector<Rational> alpha_;
  VarTablePtr table_;
  std::vector<Chart> charts_;
  mutable std::mutex mu_;
  mutable std::vector<std::vector<std::unique_ptr<Transition>>> transitions_;
};

struct FlowSample {
  double t;
  std::string chart;
  double x, y;
  double I;
};

struct ChartSwitch {
  double t;
  std::string from, to;
  double x_before, y_before;
  double x_after, y_after;
};

enum class FlowStatus { Completed, Escape, MaxSteps, StepUnderflow };
const char* flow_status_name(FlowStatus s);

struct Trajectory {
  std::string system;
  std::vector<Rational> alpha;
  std::vector<FlowSample> samples;
  std::vector<ChartSwitch> switches;
  FlowStatus status = FlowStatus::Completed;
  std::string message;
  long steps = 0;
  long rejected = 0;

  bool completed() const { return status == FlowStatus::Completed; }
  // Throws Escape or MaxSteps unless completed.
  void require_completed() const;
};

// Preconditions: alpha on the relation, finite field at the initial point.
// Integration failures are reported through Trajectory::status.
Trajectory integrate(const FlowModel& model, double q0, double p0, double t0, double t1,
                     const IntegratorConfig& cfg = {});
Trajectory integrate(const HamiltonianSystem& sys, const Catalog* cat, double q0, double p0,
                     const std::vector<Rational>& alpha, double t0, double t1, const IntegratorConfig& cfg = {});

struct ConservationReport {
  double max_drift = 0;  // max |I - I0| / max(1, |I0|)
  double I0 = 0;
  double worst_t = 0;
};
ConservationReport conservation_report(const Trajectory& traj);  // throws Precondition when empty

// Integrates from (q0, p0) and from its image under gen, compares at
// matched times; PASS iff max relative deviation <= 100 * tolerance.
// Integration failures propagate as Error.
CheckReport backlund_numeric_check(const HamiltonianSystem& sys, const Catalog& cat, const BirationalMap& gen,
                                   const Rational& q0, const Rational& p0, const std::vector<Rational>& alpha,
                                   double t0, double t1, const IntegratorConfig& cfg = {}, int matches = 50);

// Generic parameters for numeric runs: small rationals with denominators up
// to 11, projected exactly onto the relation.
std::vector<Rational> numeric_alpha(const ParameterRelation& rel, std::uint64_t seed);

// One line of data/flow/<system>.txt:
//   conserve q=2 p=1 alpha=0,0,... t=0:1 tol=1e-10 bound=1e-8
//   backlund gen=s2 q=2 p=1 alpha=seed:1 t=0:0.5 tol=1e-10
struct FlowFixture {
  std::string kind;  // conserve | backlund
  std::string gen;
  Rational q, p;
  std::string alpha_text;
  std::vector<Rational> alpha;
  double t0 = 0, t1 = 1;
  double tolerance = 1e-10;
  double bound = 1e-8;  // conserve only
  std::string label() const;
};
std::vector<FlowFixture> load_flow_fixtures(const std::string& system, const std::filesystem::path& dir);
CheckReport run_flow_fixture(const HamiltonianSystem& sys, const Catalog& cat, const FlowFixture& fx);

std::string trajectory_csv(const Trajectory& traj);
std::string trajectory_json(const Trajectory& traj);

}  // namespace weylpain

#endif
