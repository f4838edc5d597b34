#include "weylpain/systems.hpp"

#include <algorithm>
#include <sstream>

#include "weylpain/data_dir.hpp"

namespace weylpain {

namespace fs = std::filesystem;

ParameterRelation parse_relation(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.size() != 1) throw Error(ErrorCode::Io, "relation file must hold exactly one line");
  auto bar = lines[0].find('|');
  if (bar == std::string::npos) throw Error(ErrorCode::Io, "relation line lacks '|'");
  ParameterRelation rel;
  for (const auto& w : split_ws(lines[0].substr(0, bar))) rel.coeff.push_back(parse_rational(w));
  auto rhs = split_ws(lines[0].substr(bar + 1));
  if (rhs.size() != 1) throw Error(ErrorCode::Io, "relation needs one constant");
  rel.constant = parse_rational(rhs[0]);
  rel.eliminated();  // rejects the all-zero relation
  return rel;
}

bool relation_holds(const ParameterRelation& rel, const std::vector<Rational>& alpha) {
  Rational s = 0;
  for (std::size_t i = 0; i < rel.coeff.size() && i < alpha.size(); ++i) s += rel.coeff[i] * alpha[i];
  return s == rel.constant;
}

RationalFunction HamiltonianSystem::reduce(const RationalFunction& a) const {
  if (a.is_polynomial()) return RationalFunction(reduce(a.num()));
  return RationalFunction(reduce(a.num()), reduce(a.den()));
}

std::vector<std::string> known_systems() { return {"e6", "e7", "e8", "pvi_g", "pvi_hvi"}; }

static void require_known(const std::string& name) {
  auto ks = known_systems();
  if (std::find(ks.begin(), ks.end(), name) == ks.end())
    throw Error(ErrorCode::Precondition, "unknown system '" + name + "'");
}

SystemInfo system_info(const std::string& name, const fs::path& dir) {
  require_known(name);
  SystemInfo info;
  for (const auto& line : content_lines(read_file(dir / "systems" / name / "system.txt"))) {
    auto sp = line.find_first_of(" \t");
    std::string key = line.substr(0, sp), val = sp == std::string::npos ? "" : trim(line.substr(sp));
    if (key == "alphas")
      info.alpha_count = std::stoi(val);
    else if (key == "degree")
      info.degree = val == "none" ? -1 : std::stoi(val);
    else if (key == "accepted")
      info.accepted = val;
    else if (key == "denominator")
      info.denominator = val;
    else
      throw Error(ErrorCode::Io, "unknown key '" + key + "' in system.txt of " + name);
  }
  if (info.alpha_count <= 0) throw Error(ErrorCode::Io, "system.txt of " + name + " lacks alphas");
  return info;
}

static std::vector<std::string> files_with_ext(const fs::path& d, const std::string& ext) {
  std::vector<std::string> out;
  if (!fs::is_directory(d)) return out;
  for (const auto& e : fs::directory_iterator(d))
    if (e.path().extension() == ext) out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> list_variants(const std::string& name, const fs::path& dir) {
  require_known(name);
  return files_with_ext(dir / "systems" / name, ".poly");
}

std::vector<std::string> list_ansatze(const std::string& name, const fs::path& dir) {
  require_known(name);
  return files_with_ext(dir / "systems" / name, ".ansatz");
}

int qp_degree(const Poly& a) { return a.degree_in(std::vector<std::size_t>{VarTable::q, VarTable::p}); }

HamiltonianSystem make_system(std::string name, std::string variant, RationalFunction h, ParameterRelation rel,
                              int declared_degree) {
  VarTablePtr vt = h.table();
  for (const auto& t : h.den().terms())
    for (std::size_t i = 0; i < vt->size(); ++i)
      if (i != VarTable::t && t.mono.e[i])
        throw Error(ErrorCode::Structural, "Hamiltonian denominator may only involve t");
  if (static_cast<int>(rel.coeff.size()) != vt->alpha_count())
    throw Error(ErrorCode::Structural, "relation length differs from the parameter count");
  if (declared_degree >= 0) {
    int d = qp_degree(h.num());
    if (d != declared_degree) throw DegreeMismatch(declared_degree, d);
  }
  HamiltonianSystem s{std::move(name), std::move(variant), vt, std::move(h), std::move(rel), vt->alpha_count(),
                      declared_degree};
  return s;
}

static HamiltonianSystem load_impl(const std::string& name, const std::string& variant, const fs::path& dir,
                                   const std::string& ext) {
  SystemInfo info = system_info(name, dir);
  ParameterRelation rel = parse_relation(read_file(dir / "systems" / name / "relation.txt"));
  std::string text = read_file(dir / "systems" / name / (variant + ext));
  int unknowns = 0;
  if (ext == ".ansatz") {
    // first directive line declares the unknown count
    std::istringstream in(text);
    std::string line, rest;
    bool found = false;
    while (std::getline(in, line)) {
      std::string body = trim(line.substr(0, line.find('#')));
      if (!found && body.rfind("unknowns", 0) == 0) {
        unknowns = std::stoi(trim(body.substr(8)));
        found = true;
        continue;
      }
      rest += line + "\n";
    }
    if (!found) throw Error(ErrorCode::Io, "ansatz file lacks an 'unknowns' line");
    text = rest;
  }
  auto vt = VarTable::standard(info.alpha_count, unknowns);
  Poly num = parse_poly(text, vt);
  Poly den = parse_poly(info.denominator, vt);
  return make_system(name, variant, RationalFunction(num, den), rel, ext == ".poly" ? info.degree : -1);
}

HamiltonianSystem load_system(const std::string& name, const std::string& variant, const fs::path& dir) {
  return load_impl(name, variant, dir, ".poly");
}

HamiltonianSystem load_system(const std::string& name, const std::string& variant) {
  return load_system(name, variant, data_dir());
}

HamiltonianSystem load_accepted(const std::string& name) {
  auto dir = data_dir();
  return load_system(name, system_info(name, dir).accepted, dir);
}

HamiltonianSystem load_ansatz(const std::string& name, const std::string& ansatz, const fs::path& dir) {
  return load_impl(name, ansatz, dir, ".ansatz");
}

VectorField vector_field(const HamiltonianSystem& sys) {
  const auto& h = sys.hamiltonian;
  return VectorField{sys.reduce(derivative(h, VarTable::p)), sys.reduce(-derivative(h, VarTable::q))};
}

CheckReport check_first_integral(const HamiltonianSystem& sys) {
  Stopwatch sw;
  CheckReport rep;
  rep.check = "first-integral";
  rep.system = sys.name;
  rep.target = "H";
  VectorField vf = vector_field(sys);
  const auto& h = sys.hamiltonian;
  RationalFunction dh = derivative(h, VarTable::q) * vf.f + derivative(h, VarTable::p) * vf.g +
                        derivative(h, VarTable::t);
  Poly r = sys.reduce(dh.num());
  if (!r.is_zero()) rep.fail("dH/dt", r);
  rep.elapsed_ms = sw.ms();
  return rep;
}

HamiltonianSystem specialize(const HamiltonianSystem& sys, const std::vector<Rational>& alpha) {
  Point pt(sys.table->size());
  for (int i = 0; i < sys.alpha_count && i < static_cast<int>(alpha.size()); ++i) pt[sys.table->alpha(i)] = alpha[i];
  HamiltonianSystem s = sys;
  Poly den = partial_eval(sys.hamiltonian.den(), pt);
  if (den.is_zero()) throw Error(ErrorCode::Pole, "Hamiltonian denominator vanishes at the parameters");
  s.hamiltonian = RationalFunction(partial_eval(sys.hamiltonian.num(), pt), den);
  return s;
}

HamiltonianSystem add_monomial(const HamiltonianSystem& sys, unsigned qa, unsigned pb, const Rational& eps) {
  Monomial m;
  m.set(VarTable::q, qa);
  m.set(VarTable::p, pb);
  Poly add = Poly::monomial(sys.table, m, eps) * sys.hamiltonian.den();
  HamiltonianSystem s = sys;
  s.variant = sys.variant + "+mutation";
  s.hamiltonian = RationalFunction(sys.hamiltonian.num() + add, sys.hamiltonian.den());
  return s;
}

}  // namespace weylpain
