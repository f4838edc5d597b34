#ifndef WEYLPAIN_WEYL_HPP
#define WEYLPAIN_WEYL_HPP

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "weylpain/report.hpp"
#include "weylpain/transforms.hpp"

namespace weylpain {

// Simply-laced; edges stored as (min, max).
struct DynkinDiagram {
  int nodes = 0;
  std::set<std::pair<int, int>> edges;

  bool adjacent(int i, int j) const { return edges.count({std::min(i, j), std::max(i, j)}) != 0; }
  void connect(int i, int j) { edges.insert({std::min(i, j), std::max(i, j)}); }
  bool operator==(const DynkinDiagram& o) const { return nodes == o.nodes && edges == o.edges; }

  // e6, e7, e8
  static DynkinDiagram builtin(const std::string& system);
  std::string to_dot(const std::string& name) const;
  std::string edge_text() const;  // "0-2, 0-4, ..."
};

// Edge {i,j} iff s_i(alpha_j) = alpha_j + alpha_i. Throws NonInvolution,
// Inconsistent, or Structural when s_i(alpha_i) != -alpha_i.
DynkinDiagram infer_diagram(const std::vector<ParamMap>& actions);

enum class Level { Param, Birational };
const char* level_name(Level l);

struct CoxeterOptions {
  Level level = Level::Param;
  Mode mode = Mode::Symbolic;  // birational level only
  bool adjacent_only = false;
  int samples = 20;
  std::uint64_t seed = 1;
};

// One report per relation word: s_i^2 and (s_i s_j)^m.
std::vector<CheckReport> check_coxeter(const Catalog& cat, const std::vector<std::string>& gens,
                                       const DynkinDiagram& diagram, const CoxeterOptions& opt = {});
std::vector<CheckReport> check_coxeter(const std::vector<ParamMap>& actions, const DynkinDiagram& diagram,
                                       const std::string& system = "");

// Is the word (maps applied left to right) the identity? Residual-carrying report.
CheckReport check_word_identity(const std::vector<const BirationalMap*>& word, const ParameterRelation& rel,
                                Level level, Mode mode = Mode::Symbolic, int samples = 20, std::uint64_t seed = 1);

// sigma with alpha'_i = alpha_sigma(i); throws NotAPermutation.
std::vector<int> extract_permutation(const ParamMap& m);

CheckReport check_automorphism(const BirationalMap& pi, const std::vector<ParamMap>& gens, const DynkinDiagram& diagram,
                               const std::string& system = "");

}  // namespace weylpain

#endif
