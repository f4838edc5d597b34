#include "weylpain/flow.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "weylpain/data_dir.hpp"
#include "weylpain/sampling.hpp"

namespace weylpain {

void IntegratorConfig::validate() const {
  if (!(tolerance > 0)) throw Error(ErrorCode::Precondition, "tolerance must be positive");
  if (!(chart_switch_threshold > 1)) throw Error(ErrorCode::Precondition, "chart switch threshold must exceed 1");
  if (!(step > 0)) throw Error(ErrorCode::Precondition, "step must be positive");
  if (max_steps <= 0) throw Error(ErrorCode::Precondition, "max_steps must be positive");
}

// ---- compiled evaluation ----

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

RationalFunction simplify(const RationalFunction& f) {
  if (f.is_polynomial()) return f;
  if (auto q = divide_exact(f.num(), f.den())) return RationalFunction(*q);
  return f;
}

}  // namespace

CompiledFunction::CompiledFunction(const RationalFunction& f) {
  auto compile = [](const Poly& p, std::vector<Term>& out) {
    for (const auto& term : p.terms()) {
      for (std::size_t v = VarTable::t + 1; v < p.table()->size(); ++v)
        if (term.mono.e[v])
          throw Error(ErrorCode::Precondition, "cannot compile '" + p.table()->name(v) + "' for numeric evaluation");
      out.push_back(Term{term.coef.get_d(), term.mono.e[VarTable::q], term.mono.e[VarTable::p],
                         term.mono.e[VarTable::t]});
    }
  };
  compile(f.num(), num_);
  polynomial_ = f.is_polynomial();
  if (!polynomial_) compile(f.den(), den_);
  else
    for (auto& t : num_) t.c /= f.den().constant_term().get_d();
}

double CompiledFunction::eval(const std::vector<Term>& terms, double x, double y, double t) {
  // powers up to 63 from tables, anything beyond through std::pow
  constexpr int kTab = 64;
  double px[kTab], py[kTab], pt[kTab];
  px[0] = py[0] = pt[0] = 1;
  int mx = 0, my = 0, mt = 0;
  for (const auto& k : terms) {
    mx = std::max(mx, k.a);
    my = std::max(my, k.b);
    mt = std::max(mt, k.d);
  }
  mx = std::min(mx, kTab - 1);
  my = std::min(my, kTab - 1);
  mt = std::min(mt, kTab - 1);
  for (int i = 1; i <= mx; ++i) px[i] = px[i - 1] * x;
  for (int i = 1; i <= my; ++i) py[i] = py[i - 1] * y;
  for (int i = 1; i <= mt; ++i) pt[i] = pt[i - 1] * t;
  auto pw = [&](const double* tab, double v, int e) { return e < kTab ? tab[e] : std::pow(v, e); };
  double s = 0;
  for (const auto& k : terms) s += k.c * pw(px, x, k.a) * pw(py, y, k.b) * pw(pt, t, k.d);
  return s;
}

double CompiledFunction::operator()(double x, double y, double t) const {
  double n = eval(num_, x, y, t);
  if (polynomial_) return n;
  double d = eval(den_, x, y, t);
  if (d == 0) return kNaN;
  return n / d;
}

// ---- model ----

FlowModel::FlowModel(const HamiltonianSystem& sys, const Catalog* cat, std::vector<Rational> alpha) :
    system_(sys.name), alpha_(std::move(alpha)), table_(sys.table) {
  if (static_cast<int>(alpha_.size()) != sys.alpha_count)
    throw Error(ErrorCode::Precondition, "expected " + std::to_string(sys.alpha_count) + " parameters");
  if (!relation_holds(sys.relation, alpha_))
    throw Error(ErrorCode::Precondition, "parameters do not satisfy the relation");
  HamiltonianSystem s = specialize(sys, alpha_);
  VectorField vf = vector_field(s);
  Chart base;
  base.name = "qp";
  base.dx = CompiledFunction(simplify(vf.f));
  base.dy = CompiledFunction(simplify(vf.g));
  base.inv = CompiledFunction(s.hamiltonian);
  charts_.push_back(std::move(base));
  if (cat) {
    for (const auto& name : cat->names("chart")) {
      const BirationalMap& m = cat->get(name);
      if (!m.time.is_identity()) continue;
      Chart c;
      c.name = name;
      c.map = std::make_shared<BirationalMap>(specialize(m, alpha_));
      PulledField pf = pullback_field(s, *c.map);
      c.dx = CompiledFunction(simplify(pf.dX));
      c.dy = CompiledFunction(simplify(pf.dY));
      const BirationalMap& inv = *c.map->inverse;
      c.inv = CompiledFunction(simplify(substitute(s.hamiltonian, Bindings{{VarTable::q, inv.Q}, {VarTable::p, inv.P}})));
      charts_.push_back(std::move(c));
    }
  }
  transitions_.resize(charts_.size());
  for (auto& row : transitions_) row.resize(charts_.size());
}

int FlowModel::chart_index(const std::string& name) const {
  for (int i = 0; i < chart_count(); ++i)
    if (charts_[i].name == name) return i;
  throw Error(ErrorCode::Precondition, "no chart '" + name + "'");
}

bool FlowModel::field(int c, double t, double x, double y, double out[2]) const {
  const Chart& ch = charts_.at(c);
  out[0] = ch.dx(x, y, t);
  out[1] = ch.dy(x, y, t);
  return std::isfinite(out[0]) && std::isfinite(out[1]);
}

double FlowModel::invariant(int c, double t, double x, double y) const { return charts_.at(c).inv(x, y, t); }

const FlowModel::Transition& FlowModel::transition_of(int from, int to) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = transitions_.at(from).at(to);
  if (slot) return *slot;
  auto tr = std::make_unique<Transition>();
  BirationalMap m = BirationalMap::identity(table_, static_cast<int>(alpha_.size()));
  if (from == 0) {
    m = *charts_[to].map;
  } else if (to == 0) {
    m = *charts_[from].map->inverse;
  } else {
    m = compose(*charts_[from].map->inverse, *charts_[to].map);
  }
  tr->X = CompiledFunction(simplify(m.Q));
  tr->Y = CompiledFunction(simplify(m.P));
  tr->ready = true;
  slot = std::move(tr);
  return *slot;
}

bool FlowModel::transition(int from, int to, double t, double x, double y, double& X, double& Y) const {
  if (from == to) {
    X = x;
    Y = y;
    return true;
  }
  const Transition& tr = transition_of(from, to);
  X = tr.X(x, y, t);
  Y = tr.Y(x, y, t);
  return std::isfinite(X) && std::isfinite(Y);
}

// ---- integration ----

const char* flow_status_name(FlowStatus s) {
  switch (s) {
    case FlowStatus::Completed: return "completed";
    case FlowStatus::Escape: return "escape";
    case FlowStatus::MaxSteps: return "max-steps";
    case FlowStatus::StepUnderflow: return "step-underflow";
  }
  return "?";
}

void Trajectory::require_completed() const {
  if (completed()) return;
  throw Error(status == FlowStatus::MaxSteps ? ErrorCode::MaxSteps : ErrorCode::Escape, message);
}

namespace {

struct State {
  double x, y;
};

// Dormand-Prince 5(4)
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

class Stepper {
 public:
  Stepper(const FlowModel& m, int chart, double floor = 1) : m_(m), c_(chart), floor_(floor) {}

  bool f(double t, double x, double y, double k[2]) const { return m_.field(c_, t, x, y, k); }

  // Returns false when a stage is not finite.
  bool rk4(double t, const State& s, double h, State& out) const {
    double k1[2], k2[2], k3[2], k4[2];
    if (!f(t, s.x, s.y, k1)) return false;
    if (!f(t + h / 2, s.x + h / 2 * k1[0], s.y + h / 2 * k1[1], k2)) return false;
    if (!f(t + h / 2, s.x + h / 2 * k2[0], s.y + h / 2 * k2[1], k3)) return false;
    if (!f(t + h, s.x + h * k3[0], s.y + h * k3[1], k4)) return false;
    out.x = s.x + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    out.y = s.y + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    return std::isfinite(out.x) && std::isfinite(out.y);
  }

  // Error norm scaled so that <= 1 means acceptable.
  bool dopri(double t, const State& s, double h, double tol, State& out, double& err) const {
    double k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], k7[2];
    double y0[2] = {s.x, s.y}, tmp[2];
    auto stage = [&](double tt, double out_k[2], std::initializer_list<std::pair<double, const double*>> terms) {
      for (int i = 0; i < 2; ++i) {
        tmp[i] = y0[i];
        for (const auto& [a, kk] : terms) tmp[i] += h * a * kk[i];
      }
      return f(tt, tmp[0], tmp[1], out_k);
    };
    if (!f(t, s.x, s.y, k1)) return false;
    if (!stage(t + c2 * h, k2, {{a21, k1}})) return false;
    if (!stage(t + c3 * h, k3, {{a31, k1}, {a32, k2}})) return false;
    if (!stage(t + c4 * h, k4, {{a41, k1}, {a42, k2}, {a43, k3}})) return false;
    if (!stage(t + c5 * h, k5, {{a51, k1}, {a52, k2}, {a53, k3}, {a54, k4}})) return false;
    if (!stage(t + h, k6, {{a61, k1}, {a62, k2}, {a63, k3}, {a64, k4}, {a65, k5}})) return false;
    double y1[2];
    for (int i = 0; i < 2; ++i) y1[i] = y0[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    if (!f(t + h, y1[0], y1[1], k7)) return false;
    double sum = 0;
    for (int i = 0; i < 2; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sc = tol * (floor_ + std::max(std::abs(y0[i]), std::abs(y1[i])));
      sum += (e / sc) * (e / sc);
    }
    err = std::sqrt(sum / 2);
    out = State{y1[0], y1[1]};
    return std::isfinite(err) && std::isfinite(y1[0]) && std::isfinite(y1[1]);
  }

 private:
  const FlowModel& m_;
  int c_;
  double floor_;
};

std::string at_text(double t) {
  std::ostringstream s;
  s << std::setprecision(10) << t;
  return s.str();
}

}  // namespace

Trajectory integrate(const FlowModel& model, double q0, double p0, double t0, double t1, const IntegratorConfig& cfg) {
  cfg.validate();
  Trajectory tr;
  tr.system = model.system();
  tr.alpha = model.alpha();
  double probe[2];
  if (!std::isfinite(q0) || !std::isfinite(p0) || !model.field(0, t0, q0, p0, probe))
    throw Error(ErrorCode::Precondition, "the vector field is not finite at the initial point (t = " + at_text(t0) + ")");
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < cfg.output_times.size(); ++i) {
    double o = cfg.output_times[i];
    if ((o - t0) * dir < 0 || (o - t1) * dir > 0) throw Error(ErrorCode::Precondition, "output time outside the span");
    if (i && (o - cfg.output_times[i - 1]) * dir <= 0)
      throw Error(ErrorCode::Precondition, "output times must advance in the integration direction");
  }
  const bool every_step = cfg.output_times.empty();
  std::size_t next_out = 0;

  int chart = 0;
  State s{q0, p0};
  double t = t0;
  auto record = [&] {
    tr.samples.push_back(FlowSample{t, model.chart_name(chart), s.x, s.y, model.invariant(chart, t, s.x, s.y)});
  };
  auto big = [&](const State& v) { return std::max(std::abs(v.x), std::abs(v.y)); };
  // Moves to the chart with the smallest coordinates; false if none is below the threshold.
  auto switch_chart = [&](double ratio = 1) {
    int best = -1;
    State best_s{0, 0};
    double best_m = std::numeric_limits<double>::infinity();
    for (int c = 0; c < model.chart_count(); ++c) {
      State v;
      if (!model.transition(chart, c, t, s.x, s.y, v.x, v.y)) continue;
      if (big(v) < best_m) {
        best_m = big(v);
        best = c;
        best_s = v;
      }
    }
    if (best < 0 || !(best_m < cfg.chart_switch_threshold)) return false;
    if (best != chart && best_m * ratio < big(s)) {
      tr.switches.push_back(ChartSwitch{t, model.chart_name(chart), model.chart_name(best), s.x, s.y, best_s.x, best_s.y});
      chart = best;
      s = best_s;
    }
    return true;
  };

  if (big(s) > cfg.chart_switch_threshold && !switch_chart()) {
    tr.status = FlowStatus::Escape;
    tr.message = "no chart brings the initial point below the threshold";
    return tr;
  }
  if (every_step || (next_out < cfg.output_times.size() && cfg.output_times[next_out] == t0)) {
    record();
    if (!every_step) ++next_out;
  }

  double h = cfg.step;
  auto fail = [&](FlowStatus st, const std::string& why) {
    tr.status = st;
    tr.message = why + " at t = " + at_text(t) + " in chart " + model.chart_name(chart);
  };
  while ((t1 - t) * dir > 0) {
    if (tr.steps >= cfg.max_steps) {
      fail(FlowStatus::MaxSteps, "step limit " + std::to_string(cfg.max_steps) + " reached");
      return tr;
    }
    double stop = t1;
    if (!every_step && next_out < cfg.output_times.size()) stop = cfg.output_times[next_out];
    double remaining = std::abs(stop - t);
    bool lands = h >= remaining;
    double hs = (lands ? remaining : h) * dir;
    Stepper st(model, chart, cfg.absolute_floor);
    State nxt;
    if (cfg.method == Method::RK4) {
      if (!st.rk4(t, s, hs, nxt)) {
        fail(FlowStatus::Escape, "field not finite within the step");
        return tr;
      }
    } else {
      double err = 0;
      bool ok = st.dopri(t, s, hs, cfg.tolerance, nxt, err);
      if (!ok || err > 1) {
        ++tr.rejected;
        double fac = ok ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
        h = std::abs(hs) * std::min(fac, 1.0);
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
          fail(FlowStatus::StepUnderflow, "step size underflow");
          return tr;
        }
        continue;
      }
      double fac = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      // keep the step proposal when the landing step was artificially short
      h = lands ? std::max(h, std::abs(hs) * fac) : std::abs(hs) * fac;
    }
    ++tr.steps;
    t = lands ? stop : t + hs;
    s = nxt;
    if (big(s) > cfg.chart_switch_threshold) {
      if (!switch_chart()) {
        fail(FlowStatus::Escape, "no chart brings the coordinates below " + at_text(cfg.chart_switch_threshold));
        return tr;
      }
    } else if (cfg.eager_switch_ratio > 0 && big(s) > cfg.eager_switch_ratio) {
      switch_chart(cfg.eager_switch_ratio);
    }
    if (every_step) {
      record();
    } else if (lands && t == stop && next_out < cfg.output_times.size()) {
      record();
      ++next_out;
    }
  }
  return tr;
}

Trajectory integrate(const HamiltonianSystem& sys, const Catalog* cat, double q0, double p0,
                     const std::vector<Rational>& alpha, double t0, double t1, const IntegratorConfig& cfg) {
  FlowModel model(sys, cat, alpha);
  return integrate(model, q0, p0, t0, t1, cfg);
}

ConservationReport conservation_report(const Trajectory& traj) {
  if (traj.samples.empty()) throw Error(ErrorCode::Precondition, "empty trajectory");
  ConservationReport r;
  r.I0 = traj.samples.front().I;
  r.worst_t = traj.samples.front().t;
  double scale = std::max(1.0, std::abs(r.I0));
  for (const auto& s : traj.samples) {
    double d = std::abs(s.I - r.I0) / scale;
    if (!(d <= r.max_drift)) {
      r.max_drift = d;
      r.worst_t = s.t;
    }
  }
  return r;
}

// ---- Backlund consistency ----

CheckReport backlund_numeric_check(const HamiltonianSystem& sys, const Catalog& cat, const BirationalMap& gen,
                                   const Rational& q0, const Rational& p0, const std::vector<Rational>& alpha,
                                   double t0, double t1, const IntegratorConfig& cfg, int matches) {
  Stopwatch sw;
  CheckReport rep;
  rep.check = "backlund-numeric";
  rep.system = sys.name;
  rep.target = gen.name;
  if (matches < 1) throw Error(ErrorCode::Precondition, "need at least one matched time");
  if (!gen.target_system.empty() && gen.target_system != sys.name)
    throw Error(ErrorCode::Unsupported, "numeric check needs a generator of " + sys.name + " onto itself");

  FlowModel m1(sys, &cat, alpha);
  PointImage img = apply_point(gen, q0, p0, Rational(t0), alpha);
  FlowModel m2(sys, &cat, img.alpha);
  BirationalMap g = specialize(gen, alpha);

  std::vector<double> times1, times2;
  for (int k = 0; k <= matches; ++k) {
    double tk = k == matches ? t1 : t0 + (t1 - t0) * k / matches;
    times1.push_back(tk);
    times2.push_back(gen.time.apply(tk));
  }
  IntegratorConfig c1 = cfg, c2 = cfg;
  c1.output_times = times1;
  c2.output_times = times2;
  Trajectory a = integrate(m1, q0.get_d(), p0.get_d(), t0, t1, c1);
  a.require_completed();
  Trajectory b = integrate(m2, img.Q.get_d(), img.P.get_d(), times2.front(), times2.back(), c2);
  b.require_completed();
  if (a.samples.size() != times1.size() || b.samples.size() != times2.size())
    throw Error(ErrorCode::Structural, "matched samples missing");

  // Compare in the charts the two samples live in, through the exact
  // composite chart_a^-1 . gen . chart_b; original coordinates are badly
  // conditioned next to a pole.
  std::map<std::pair<int, int>, std::pair<CompiledFunction, CompiledFunction>> via;
  auto composite = [&](int ca, int cb) -> const std::pair<CompiledFunction, CompiledFunction>& {
    auto it = via.find({ca, cb});
    if (it != via.end()) return it->second;
    BirationalMap m = g;
    if (ca != 0) m = compose(*m1.chart_map(ca)->inverse, m);
    if (cb != 0) m = compose(m, *m2.chart_map(cb));
    auto fns = std::make_pair(CompiledFunction(simplify(m.Q)), CompiledFunction(simplify(m.P)));
    return via.emplace(std::make_pair(ca, cb), std::move(fns)).first->second;
  };
  double worst = 0, worst_t = t0;
  int compared = 0;
  for (std::size_t k = 0; k < times1.size(); ++k) {
    const FlowSample& sa = a.samples[k];
    const FlowSample& sb = b.samples[k];
    const auto& [GQ, GP] = composite(m1.chart_index(sa.chart), m2.chart_index(sb.chart));
    double iq = GQ(sa.x, sa.y, sa.t), ip = GP(sa.x, sa.y, sa.t);
    if (!std::isfinite(iq) || !std::isfinite(ip)) continue;
    ++compared;
    double d = std::max(std::abs(iq - sb.x) / std::max(1.0, std::abs(sb.x)),
                        std::abs(ip - sb.y) / std::max(1.0, std::abs(sb.y)));
    if (!(d <= worst)) {
      worst = d;
      worst_t = times1[k];
    }
  }
  if (compared == 0) rep.fail("samples", "no matched time could be compared");
  std::ostringstream note;
  note << std::setprecision(3) << "max deviation " << worst << " at t = " << worst_t << " over " << compared
       << " matched times, bound " << 100 * cfg.tolerance;
  rep.note = note.str();
  if (!(worst <= 100 * cfg.tolerance)) rep.fail("deviation", note.str());
  rep.elapsed_ms = sw.ms();
  return rep;
}

// ---- output ----

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << std::setprecision(17) << "t,chart,x,y,I\n";
  for (const auto& s : traj.samples) out << s.t << ',' << s.chart << ',' << s.x << ',' << s.y << ',' << s.I << '\n';
  return out.str();
}

std::string trajectory_json(const Trajectory& traj) {
  nlohmann::json j;
  j["system"] = traj.system;
  std::vector<std::string> alpha;
  for (const auto& a : traj.alpha) alpha.push_back(format_rational(a));
  j["alpha"] = alpha;
  j["status"] = flow_status_name(traj.status);
  j["message"] = traj.message;
  j["steps"] = traj.steps;
  j["rejected"] = traj.rejected;
  auto& samples = j["samples"] = nlohmann::json::array();
  for (const auto& s : traj.samples) samples.push_back({{"t", s.t}, {"chart", s.chart}, {"x", s.x}, {"y", s.y}, {"I", s.I}});
  auto& sw = j["switches"] = nlohmann::json::array();
  for (const auto& e : traj.switches)
    sw.push_back({{"t", e.t},
                  {"from", e.from},
                  {"to", e.to},
                  {"before", {e.x_before, e.y_before}},
                  {"after", {e.x_after, e.y_after}}});
  return j.dump(1);
}

}  // namespace weylpain

// ---- fixtures ----

namespace weylpain {

std::vector<Rational> numeric_alpha(const ParameterRelation& rel, std::uint64_t seed) {
  Sampler smp(seed);
  return smp.small_alpha_on(rel, 12, 11);
}

std::string FlowFixture::label() const {
  std::ostringstream s;
  s << kind;
  if (!gen.empty()) s << " " << gen;
  s << " (" << format_rational(q) << ", " << format_rational(p) << ") alpha=" << alpha_text << " t=[" << t0 << ", "
    << t1 << "] tol=" << tolerance;
  return s.str();
}

std::vector<FlowFixture> load_flow_fixtures(const std::string& system, const std::filesystem::path& dir) {
  std::filesystem::path file = dir / "flow" / (system + ".txt");
  std::vector<FlowFixture> out;
  if (!std::filesystem::exists(file)) return out;
  ParameterRelation rel = parse_relation(read_file(dir / "systems" / system / "relation.txt"));
  for (const auto& line : content_lines(read_file(file))) {
    auto w = split_ws(line);
    FlowFixture fx;
    fx.kind = w[0];
    if (fx.kind != "conserve" && fx.kind != "backlund")
      throw Error(ErrorCode::Io, "unknown flow fixture '" + fx.kind + "'");
    for (std::size_t i = 1; i < w.size(); ++i) {
      auto eq = w[i].find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::Io, "expected key=value, got '" + w[i] + "'");
      std::string k = w[i].substr(0, eq), v = w[i].substr(eq + 1);
      if (k == "gen") {
        fx.gen = v;
      } else if (k == "q") {
        fx.q = parse_rational(v);
      } else if (k == "p") {
        fx.p = parse_rational(v);
      } else if (k == "alpha") {
        fx.alpha_text = v;
        if (v.rfind("seed:", 0) == 0) {
          fx.alpha = numeric_alpha(rel, std::stoull(v.substr(5)));
        } else {
          std::string item;
          std::istringstream in(v);
          while (std::getline(in, item, ',')) fx.alpha.push_back(parse_rational(item));
        }
      } else if (k == "t") {
        auto c = v.find(':');
        if (c == std::string::npos) throw Error(ErrorCode::Io, "t=<from>:<to>");
        fx.t0 = std::stod(v.substr(0, c));
        fx.t1 = std::stod(v.substr(c + 1));
      } else if (k == "tol") {
        fx.tolerance = std::stod(v);
      } else if (k == "bound") {
        fx.bound = std::stod(v);
      } else {
        throw Error(ErrorCode::Io, "unknown flow fixture key '" + k + "'");
      }
    }
    if (fx.kind == "backlund" && fx.gen.empty()) throw Error(ErrorCode::Io, "backlund fixture without gen=");
    out.push_back(std::move(fx));
  }
  return out;
}

CheckReport run_flow_fixture(const HamiltonianSystem& sys, const Catalog& cat, const FlowFixture& fx) {
  IntegratorConfig cfg;
  cfg.tolerance = fx.tolerance;
  CheckReport rep;
  if (fx.kind == "backlund") {
    rep = backlund_numeric_check(sys, cat, cat.get(fx.gen), fx.q, fx.p, fx.alpha, fx.t0, fx.t1, cfg);
  } else {
    Stopwatch sw;
    rep.check = "conservation";
    rep.system = sys.name;
    Trajectory tr = integrate(sys, &cat, fx.q.get_d(), fx.p.get_d(), fx.alpha, fx.t0, fx.t1, cfg);
    ConservationReport c = conservation_report(tr);
    std::ostringstream note;
    note << std::setprecision(3) << "drift " << c.max_drift << " (I0 = " << std::setprecision(10) << c.I0
         << ") over " << tr.samples.size() << " samples, " << tr.switches.size() << " chart switches";
    rep.note = note.str();
    if (!tr.completed()) rep.fail(flow_status_name(tr.status), tr.message + "; " + note.str());
    if (!(c.max_drift <= fx.bound)) {
      std::ostringstream why;
      why << std::setprecision(3) << "drift " << c.max_drift << " at t = " << c.worst_t << " exceeds " << fx.bound;
      rep.fail("drift", why.str());
    }
    rep.elapsed_ms = sw.ms();
  }
  rep.check = "integrate";
  rep.target = fx.label();
  return rep;
}

}  // namespace weylpain
