#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

#include "weylpain/data_dir.hpp"
#include "weylpain/flow.hpp"
#include "weylpain/geometry.hpp"
#include "weylpain/systems.hpp"
#include "weylpain/transforms.hpp"
#include "weylpain/weyl.hpp"

using namespace weylpain;

namespace {

const std::vector<std::string> kChecks = {"holomorphy", "symmetry", "symplectic", "coxeter",   "first-integral", "lattice",
                                          "accessible", "charts",   "equivalence", "integrate"};

struct RunConfig {
  std::string system;
  std::string check = "all";
  std::string mode;
  int samples = -1;
  std::string variant;
  std::uint64_t seed = 1;
  std::string json;
  unsigned jobs = 0;
};

bool is_e_type(const std::string& s) { return s == "e6" || s == "e7" || s == "e8"; }

bool applicable(const std::string& system, const std::string& check, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  bool has_maps = fs::exists(dir / "transforms" / system);
  if (check == "holomorphy" || check == "symmetry" || check == "symplectic") return has_maps;
  // the PVI generators are not simple reflections
  if (check == "coxeter") return has_maps && is_e_type(system);
  if (check == "first-integral") return system_info(system, dir).denominator == "1";
  if (check == "lattice" || check == "accessible" || check == "charts") return is_e_type(system);
  if (check == "equivalence") return system == "pvi_g";
  if (check == "integrate") return fs::exists(dir / "flow" / (system + ".txt"));
  return false;
}

// Everything a task needs, loaded once per system before work starts.
struct Context {
  explicit Context(HamiltonianSystem s) : sys(std::move(s)) {}
  std::string system;
  std::filesystem::path dir;
  HamiltonianSystem sys;
  std::shared_ptr<Catalog> cat;
  CheckOptions opt;
};

using Task = std::function<std::vector<CheckReport>()>;

CheckReport errored(const std::string& check, const std::string& system, const std::string& target,
                    const std::exception& e) {
  CheckReport r;
  r.check = check;
  r.system = system;
  r.target = target;
  r.fail("error", e.what());
  return r;
}

// One task per independent unit of work.
void plan(const Context& cx, const std::string& check, std::vector<Task>& tasks) {
  const auto& sys = cx.sys;
  auto one = [&tasks](std::function<CheckReport()> f) { tasks.push_back([f] { return std::vector<CheckReport>{f()}; }); };
  if (check == "holomorphy") {
    for (const auto& c : cx.cat->names("chart"))
      one([&cx, c] { return check_polynomial_in_chart(cx.sys, cx.cat->get(c), cx.opt); });
  } else if (check == "symmetry") {
    for (const auto* kind : {"generator", "automorphism"})
      for (const auto& g : cx.cat->names(kind)) one([&cx, g] { return check_symmetry(cx.sys, cx.cat->get(g), cx.opt); });
  } else if (check == "symplectic") {
    for (const auto& m : cx.cat->all_names())
      one([&cx, m] { return check_symplectic(cx.cat->get(m), cx.cat->relation(), cx.system); });
  } else if (check == "coxeter") {
    auto gens = cx.cat->names("generator");
    std::vector<ParamMap> actions;
    for (const auto& g : gens) actions.push_back(cx.cat->get(g).param);
    tasks.push_back([&cx, gens, actions] {
      std::vector<CheckReport> out;
      CheckReport d;
      d.check = "coxeter";
      d.system = cx.system;
      d.target = "diagram";
      DynkinDiagram inferred;
      try {
        inferred = infer_diagram(actions);
        d.note = inferred.edge_text();
        if (is_e_type(cx.system) && !(inferred == DynkinDiagram::builtin(cx.system)))
          d.fail("edges", "inferred " + inferred.edge_text() + ", expected " +
                              DynkinDiagram::builtin(cx.system).edge_text());
      } catch (const Error& e) {
        d.fail("diagram", e.what());
        out.push_back(d);
        return out;
      }
      out.push_back(d);
      for (auto& r : check_coxeter(actions, inferred, cx.system)) out.push_back(std::move(r));
      for (const auto& a : cx.cat->names("automorphism"))
        out.push_back(check_automorphism(cx.cat->get(a), actions, inferred, cx.system));
      CoxeterOptions co;
      co.level = Level::Birational;
      co.mode = cx.opt.mode;
      co.samples = cx.opt.samples;
      co.seed = cx.opt.seed;
      for (auto& r : check_coxeter(*cx.cat, gens, inferred, co)) out.push_back(std::move(r));
      return out;
    });
  } else if (check == "first-integral") {
    one([&sys] { return check_first_integral(sys); });
  } else if (check == "lattice") {
    tasks.push_back([&cx] {
      auto run = run_sequence_file(cx.system, cx.dir);
      auto out = lattice_reports(cx.system, run);
      return out;
    });
  } else if (check == "accessible") {
    for (int level : {0, 1})
      one([&cx, level] {
        return verify_accessible_points(cx.sys, level, load_accessible(cx.system, cx.dir), cx.opt.seed);
      });
  } else if (check == "charts") {
    auto spec = load_accessible(cx.system, cx.dir);
    for (const auto& pt : spec.points)
      if (!pt.holo.empty()) one([&cx, pt] { return verify_chart_composition(cx.sys, *cx.cat, pt); });
  } else if (check == "equivalence") {
    one([&cx] { return check_equivalence_pvi(cx.opt); });
  } else if (check == "integrate") {
    for (const auto& fx : load_flow_fixtures(cx.system, cx.dir))
      one([&cx, fx] { return run_flow_fixture(cx.sys, *cx.cat, fx); });
  }
}

std::vector<CheckReport> run_pool(std::vector<Task>& tasks, unsigned jobs) {
  std::vector<std::vector<CheckReport>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        results[i] = tasks[i]();
      } catch (const std::exception& e) {
        results[i] = {errored("task", "", std::to_string(i), e)};
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::vector<CheckReport> all;
  for (auto& r : results)
    for (auto& x : r) all.push_back(std::move(x));
  return all;
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j = {{"check", r.check},
                      {"system", r.system},
                      {"target", r.target},
                      {"status", r.status()},
                      {"mode", mode_name(r.mode)},
                      {"samples", r.samples},
                      {"residual_excerpt", r.residual_excerpt()},
                      {"elapsed_ms", r.elapsed_ms}};
  if (r.mode == Mode::Probabilistic || r.seed) j["seed"] = r.seed;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

int run(const RunConfig& rc) {
  std::filesystem::path dir = data_dir();
  if (!std::filesystem::exists(dir / "systems"))
    throw Error(ErrorCode::Io, "fixture directory " + dir.string() + " has no systems/");
  std::vector<std::string> systems;
  if (rc.system == "all") {
    systems = known_systems();
  } else {
    auto known = known_systems();
    if (std::find(known.begin(), known.end(), rc.system) == known.end())
      throw Error(ErrorCode::Precondition, "unknown system '" + rc.system + "'");
    systems = {rc.system};
  }
  std::vector<std::string> checks;
  if (rc.check == "all") {
    checks = kChecks;
  } else {
    if (std::find(kChecks.begin(), kChecks.end(), rc.check) == kChecks.end())
      throw Error(ErrorCode::Precondition, "unknown check '" + rc.check + "'");
    checks = {rc.check};
    for (const auto& s : systems)
      if (rc.system != "all" && !applicable(s, rc.check, dir))
        throw Error(ErrorCode::Precondition, "check '" + rc.check + "' does not apply to " + s);
  }
  if (!rc.mode.empty() && rc.mode != "symbolic" && rc.mode != "probabilistic")
    throw Error(ErrorCode::Precondition, "mode must be symbolic or probabilistic");
  if (!rc.variant.empty()) {
    if (systems.size() != 1) throw Error(ErrorCode::Precondition, "--variant needs a single --system");
    auto vs = list_variants(systems[0], dir);
    if (std::find(vs.begin(), vs.end(), rc.variant) == vs.end())
      throw Error(ErrorCode::Precondition, "unknown variant '" + rc.variant + "' of " + systems[0]);
  }

  std::vector<std::unique_ptr<Context>> contexts;
  std::vector<Task> tasks;
  for (const auto& s : systems) {
    auto info = system_info(s, dir);
    auto cx = std::make_unique<Context>(load_system(s, rc.variant.empty() ? info.accepted : rc.variant, dir));
    cx->system = s;
    cx->dir = dir;
    if (std::filesystem::exists(dir / "transforms" / s))
      cx->cat = std::make_shared<Catalog>(load_catalog(s, dir, cx->sys.table));
    // E8 defaults to probabilistic identity testing
    bool heavy = s == "e8";
    cx->opt.mode = rc.mode.empty() ? (heavy ? Mode::Probabilistic : Mode::Symbolic)
                                   : (rc.mode == "symbolic" ? Mode::Symbolic : Mode::Probabilistic);
    cx->opt.samples = rc.samples > 0 ? rc.samples : (heavy ? 40 : 20);
    cx->opt.seed = rc.seed;
    for (const auto& c : checks)
      if (applicable(s, c, dir)) plan(*cx, c, tasks);
    contexts.push_back(std::move(cx));
  }

  auto reports = run_pool(tasks, rc.jobs ? rc.jobs : std::max(1u, std::thread::hardware_concurrency()));
  std::stable_sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) {
    if (a.system != b.system) return a.system < b.system;
    if (a.check != b.check) return a.check < b.check;
    return natural_less(a.target, b.target);
  });

  bool all_pass = true;
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass();
    std::cout << r.status() << "  " << r.system << "  " << r.check << "  " << r.target;
    if (r.mode == Mode::Probabilistic) std::cout << "  [" << r.samples << " samples, seed " << r.seed << "]";
    std::cout << "  (" << static_cast<long>(r.elapsed_ms) << " ms)\n";
    if (!r.pass()) std::cout << "      " << r.residual_excerpt() << "\n";
  }
  std::cout << reports.size() << " checks, " << std::count_if(reports.begin(), reports.end(), [](const CheckReport& r) {
    return !r.pass();
  }) << " failed\n";

  if (!rc.json.empty()) {
    nlohmann::json j;
    j["schema"] = 1;
    j["reports"] = nlohmann::json::array();
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    std::ofstream out(rc.json);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + rc.json);
    out << j.dump(2) << "\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Painleve-type Hamiltonian systems with affine Weyl group symmetry"};
  RunConfig rc;
  app.add_option("--system", rc.system, "e6, e7, e8, pvi_g, pvi_hvi or all")->required();
  app.add_option("--check", rc.check, "holomorphy, symmetry, symplectic, coxeter, first-integral, lattice, "
                                      "accessible, charts, equivalence, integrate or all");
  app.add_option("--mode", rc.mode, "symbolic or probabilistic (default: probabilistic for e8)");
  app.add_option("--samples", rc.samples, "sample count in probabilistic mode");
  app.add_option("--variant", rc.variant, "transcription variant of the Hamiltonian");
  app.add_option("--seed", rc.seed, "random seed for probabilistic checks");
  app.add_option("--json", rc.json, "write the JSON report here");
  app.add_option("--jobs", rc.jobs, "worker threads (default: number of processors)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return run(rc);
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 2;
  }
}
