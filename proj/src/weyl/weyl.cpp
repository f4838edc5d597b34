#include "weylpain/weyl.hpp"

#include <sstream>

#include "weylpain/sampling.hpp"

namespace weylpain {

DynkinDiagram DynkinDiagram::builtin(const std::string& system) {
  DynkinDiagram d;
  auto path = [&](std::vector<int> v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) d.connect(v[i], v[i + 1]);
  };
  if (system == "e6") {
    d.nodes = 7;
    path({1, 2, 0, 4, 3});
    path({0, 5, 6});
  } else if (system == "e7") {
    d.nodes = 8;
    path({3, 2, 1, 0, 4, 5, 6});
    d.connect(7, 0);
  } else if (system == "e8") {
    d.nodes = 9;
    path({5, 4, 3, 2, 1, 0, 6, 7});
    d.connect(8, 0);
  } else {
    throw Error(ErrorCode::Precondition, "no built-in diagram for '" + system + "'");
  }
  return d;
}

std::string DynkinDiagram::to_dot(const std::string& name) const {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (int i = 0; i < nodes; ++i) out << "  " << i << " [label=\"" << i << "\"];\n";
  for (const auto& [a, b] : edges) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string DynkinDiagram::edge_text() const {
  std::string s;
  for (const auto& [a, b] : edges) s += (s.empty() ? "" : ", ") + std::to_string(a) + "-" + std::to_string(b);
  return s;
}

const char* level_name(Level l) { return l == Level::Param ? "param" : "birational"; }

DynkinDiagram infer_diagram(const std::vector<ParamMap>& actions) {
  int n = static_cast<int>(actions.size());
  DynkinDiagram d;
  d.nodes = n;
  // adj[i][j]: does s_i add alpha_i to alpha_j
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    const ParamMap& a = actions[i];
    if (a.size() != n) throw Error(ErrorCode::Structural, "action " + std::to_string(i) + " has the wrong size");
    if (!ParamMap::then(a, a).is_identity())
      throw Error(ErrorCode::NonInvolution, "s" + std::to_string(i) + " is not an involution on parameters");
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> row(n, Rational(0));
      row[j] = 1;
      if (i == j) {
        row[j] = -1;
        if (a.A[j] != row || a.offset[j] != 0)
          throw Error(ErrorCode::Structural, "s" + std::to_string(i) + " does not negate alpha" + std::to_string(i));
        continue;
      }
      if (a.offset[j] != 0)
        throw Error(ErrorCode::Inconsistent, "s" + std::to_string(i) + " shifts alpha" + std::to_string(j));
      if (a.A[j] == row) continue;
      row[i] = 1;
      if (a.A[j] != row)
        throw Error(ErrorCode::Inconsistent,
                    "s" + std::to_string(i) + " acts on alpha" + std::to_string(j) + " neither trivially nor by +alpha" +
                        std::to_string(i));
      adj[i][j] = true;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (adj[i][j] != adj[j][i])
        throw Error(ErrorCode::Inconsistent, "adjacency of " + std::to_string(i) + " and " + std::to_string(j) +
                                                 " differs between s" + std::to_string(i) + " and s" +
                                                 std::to_string(j));
      if (adj[i][j]) d.connect(i, j);
    }
  return d;
}

namespace {

std::string word_name(const std::vector<std::string>& names, int i, int j, int m) {
  if (j < 0) return "(" + names[i] + ")^2";
  return "(" + names[i] + " " + names[j] + ")^" + std::to_string(m);
}

std::vector<int> word_indices(int i, int j, int m) {
  if (j < 0) return {i, i};
  std::vector<int> w;
  for (int k = 0; k < m; ++k) {
    w.push_back(i);
    w.push_back(j);
  }
  return w;
}

}  // namespace

std::vector<CheckReport> check_coxeter(const std::vector<ParamMap>& actions, const DynkinDiagram& diagram,
                                       const std::string& system) {
  int n = static_cast<int>(actions.size());
  if (n != diagram.nodes) throw Error(ErrorCode::Precondition, "generator count differs from the diagram size");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  std::vector<CheckReport> out;
  auto run = [&](int i, int j) {
    Stopwatch sw;
    int m = j < 0 ? 1 : (diagram.adjacent(i, j) ? 3 : 2);
    ParamMap acc = ParamMap::identity(n);
    for (int g : word_indices(i, j, m)) acc = ParamMap::then(acc, actions[g]);
    CheckReport r;
    r.check = "coxeter";
    r.system = system;
    r.target = word_name(names, i, j, m) + " [param]";
    if (!acc.is_identity()) r.fail("alpha", "parameter matrix of the word differs from the identity");
    r.elapsed_ms = sw.ms();
    out.push_back(std::move(r));
  };
  for (int i = 0; i < n; ++i) run(i, -1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) run(i, j);
  return out;
}

CheckReport check_word_identity(const std::vector<const BirationalMap*>& word, const ParameterRelation& rel,
                                Level level, Mode mode, int samples, std::uint64_t seed) {
  Stopwatch sw;
  CheckReport r;
  r.check = "coxeter";
  r.mode = mode;
  const BirationalMap& first = *word.front();
  if (level == Level::Param) {
    ParamMap acc = ParamMap::identity(first.param.size());
    for (const auto* m : word) acc = ParamMap::then(acc, m->param);
    if (!acc.is_identity()) r.fail("alpha", "parameter matrix of the word differs from the identity");
  } else if (mode == Mode::Symbolic) {
    BirationalMap acc = BirationalMap::identity(first.table, first.param.size());
    for (const auto* m : word) acc = compose(acc, *m, &rel);
    for (auto& [c, p] : identity_residuals(acc, rel)) r.fail(c, p);
  } else {
    r.samples = samples;
    r.seed = seed;
    Sampler smp(seed);
    int done = 0, attempts = 0;
    while (done < samples && r.pass()) {
      if (++attempts > 10 * samples + 10) {
        r.fail("sampling", "too many sample points hit poles");
        break;
      }
      Rational q = smp.integer(), p = smp.integer(), t = smp.integer();
      auto alpha = smp.alpha_on(rel);
      PointImage cur{q, p, t, alpha};
      try {
        for (const auto* m : word) cur = apply_point(*m, cur.Q, cur.P, cur.T, cur.alpha);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Pole) continue;
        throw;
      }
      if (cur.Q != q || cur.P != p || cur.T != t || cur.alpha != alpha)
        r.fail("point", "sample " + std::to_string(done) + " at q=" + format_rational(q) + " p=" + format_rational(p) +
                            " is not fixed");
      ++done;
    }
  }
  r.elapsed_ms = sw.ms();
  return r;
}

std::vector<CheckReport> check_coxeter(const Catalog& cat, const std::vector<std::string>& gens,
                                       const DynkinDiagram& diagram, const CoxeterOptions& opt) {
  int n = static_cast<int>(gens.size());
  if (n != diagram.nodes) throw Error(ErrorCode::Precondition, "generator count differs from the diagram size");
  std::vector<const BirationalMap*> maps;
  for (const auto& g : gens) maps.push_back(&cat.get(g));
  std::vector<CheckReport> out;
  auto run = [&](int i, int j) {
    int m = j < 0 ? 1 : (diagram.adjacent(i, j) ? 3 : 2);
    std::vector<const BirationalMap*> word;
    for (int g : word_indices(i, j, m)) word.push_back(maps[g]);
    CheckReport r = check_word_identity(word, cat.relation(), opt.level, opt.mode, opt.samples, opt.seed);
    r.system = cat.system();
    r.target = word_name(gens, i, j, m) + " [" + level_name(opt.level) + "]";
    out.push_back(std::move(r));
  };
  for (int i = 0; i < n; ++i) run(i, -1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!opt.adjacent_only || diagram.adjacent(i, j)) run(i, j);
  return out;
}

std::vector<int> extract_permutation(const ParamMap& m) {
  int n = m.size();
  std::vector<int> sigma(n, -1);
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    if (m.offset[i] != 0) throw Error(ErrorCode::NotAPermutation, "parameter map has an offset");
    for (int j = 0; j < n; ++j) {
      if (m.A[i][j] == 0) continue;
      if (m.A[i][j] != 1 || sigma[i] >= 0) throw Error(ErrorCode::NotAPermutation, "row " + std::to_string(i) + " is not a unit vector");
      sigma[i] = j;
    }
    if (sigma[i] < 0 || hit[sigma[i]]) throw Error(ErrorCode::NotAPermutation, "parameter map is not a permutation");
    hit[sigma[i]] = true;
  }
  return sigma;
}

CheckReport check_automorphism(const BirationalMap& pi, const std::vector<ParamMap>& gens, const DynkinDiagram& diagram,
                               const std::string& system) {
  Stopwatch sw;
  CheckReport r;
  r.check = "automorphism";
  r.system = system;
  r.target = pi.name;
  std::vector<int> sigma = extract_permutation(pi.param);
  if (static_cast<int>(sigma.size()) != diagram.nodes)
    throw Error(ErrorCode::Precondition, "automorphism size differs from the diagram");
  std::string perm;
  for (std::size_t i = 0; i < sigma.size(); ++i) perm += (i ? " " : "") + std::to_string(sigma[i]);
  r.note = "sigma = [" + perm + "]";
  for (const auto& [a, b] : diagram.edges)
    if (!diagram.adjacent(sigma[a], sigma[b]))
      r.fail("edges", "edge " + std::to_string(a) + "-" + std::to_string(b) + " is not mapped to an edge");
  ParamMap inv = pi.param;
  // permutation matrices invert by transposition
  for (int i = 0; i < inv.size(); ++i)
    for (int j = 0; j < inv.size(); ++j) inv.A[i][j] = pi.param.A[j][i];
  for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
    ParamMap c = ParamMap::then(ParamMap::then(pi.param, gens[i]), inv);
    if (!(c == gens[sigma[i]]))
      r.fail("conjugation", pi.name + " s" + std::to_string(i) + " " + pi.name + "^-1 != s" + std::to_string(sigma[i]));
  }
  r.elapsed_ms = sw.ms();
  return r;
}

}  // namespace weylpain
