#include <sstream>

#include "weylpain/data_dir.hpp"
#include "weylpain/systems.hpp"
#include "weylpain/transforms.hpp"

namespace weylpain {

namespace {

// Incremental row echelon form; every stored row has a leading 1 in a
// distinct pivot column, and rows are kept fully reduced against each other.
class Echelon {
 public:
  explicit Echelon(std::size_t k) : k_(k) {}

  // Returns false when the row reduces to 0 = nonzero.
  bool add(std::vector<Rational> row) {
    for (const auto& [col, r] : rows_) {
      if (row[col] == 0) continue;
      Rational f = row[col];
      for (std::size_t j = 0; j <= k_; ++j) row[j] -= f * r[j];
    }
    std::size_t piv = k_;
    for (std::size_t j = 0; j < k_; ++j)
      if (row[j] != 0) {
        piv = j;
        break;
      }
    if (piv == k_) return row[k_] == 0;
    Rational inv = 1 / row[piv];
    for (auto& x : row) x *= inv;
    for (auto& [col, r] : rows_) {
      if (r[piv] == 0) continue;
      Rational f = r[piv];
      for (std::size_t j = 0; j <= k_; ++j) r[j] -= f * row[j];
    }
    rows_.emplace(piv, std::move(row));
    return true;
  }

  AnsatzSolution solution() const {
    AnsatzSolution s;
    s.kind = rows_.size() == k_ ? AnsatzSolution::Kind::Unique : AnsatzSolution::Kind::Family;
    s.particular.assign(k_, Rational(0));
    for (const auto& [col, r] : rows_) s.particular[col] = r[k_];
    for (std::size_t free = 0; free < k_; ++free) {
      if (rows_.count(free)) continue;
      std::vector<Rational> v(k_, Rational(0));
      v[free] = 1;
      for (const auto& [col, r] : rows_) v[col] = -r[free];
      s.nullspace.push_back(std::move(v));
    }
    return s;
  }

 private:
  std::size_t k_;
  std::map<std::size_t, std::vector<Rational>> rows_;
};

std::string vec_text(const std::vector<Rational>& v, const char* prefix) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + std::string(prefix) + std::to_string(i) + "=" + format_rational(v[i]);
  return s;
}

}  // namespace

std::string AnsatzSolution::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Infeasible:
      out << "infeasible (" << equations << " equations)";
      break;
    case Kind::Unique:
      out << "unique: " << (particular.empty() ? std::string("no unknowns") : vec_text(particular, "u"));
      break;
    case Kind::Family:
      out << "family of dimension " << nullspace.size() << ": " << vec_text(particular, "u");
      for (const auto& v : nullspace) out << " + t*[" << vec_text(v, "u") << "]";
      break;
  }
  return out.str();
}

AnsatzSolution solve_affine(std::vector<std::vector<Rational>> rows, std::size_t unknowns) {
  Echelon e(unknowns);
  AnsatzSolution bad;
  bad.equations = rows.size();
  for (auto& r : rows) {
    if (r.size() != unknowns + 1) throw Error(ErrorCode::Structural, "equation row has the wrong width");
    if (!e.add(std::move(r))) return bad;
  }
  AnsatzSolution s = e.solution();
  s.equations = bad.equations;
  return s;
}

void append_equations(const Poly& residual, int unknown_count, std::vector<std::vector<Rational>>& rows) {
  const auto& vt = residual.table();
  std::vector<std::size_t> known;
  for (std::size_t i = 0; i < vt->size(); ++i)
    if (i < vt->unknown(0)) known.push_back(i);
  for (const auto& [mono, coeff] : collect(residual, known)) {
    std::vector<Rational> row(unknown_count + 1, Rational(0));
    for (const auto& t : coeff.terms()) {
      if (t.mono.deg > 1) throw Error(ErrorCode::UnsupportedAnsatz, "unknowns occur nonlinearly in a residual");
      if (t.mono.deg == 0) {
        row[unknown_count] = -t.coef;
        continue;
      }
      for (int k = 0; k < unknown_count; ++k)
        if (t.mono.e[vt->unknown(k)]) row[k] = t.coef;
    }
    rows.push_back(std::move(row));
  }
}

AnsatzSolution repair_hamiltonian(const HamiltonianSystem& ansatz, const std::vector<std::string>& constraints,
                                  const std::filesystem::path& dir) {
  const auto& vt = ansatz.table;
  int k = vt->unknown_count();
  std::vector<std::size_t> unk;
  for (int i = 0; i < k; ++i) unk.push_back(vt->unknown(i));
  if (k > 0 && ansatz.hamiltonian.num().degree_in(unk) > 1)
    throw Error(ErrorCode::UnsupportedAnsatz, "ansatz Hamiltonian is nonlinear in its unknowns");
  Catalog cat = load_catalog(ansatz.name, dir, vt);
  std::vector<std::vector<Rational>> rows;
  auto expand = [&](const std::string& kind, const std::string& name) {
    if (name != "*") return std::vector<std::string>{name};
    std::vector<std::string> out;
    if (kind == "chart") return cat.names("chart");
    for (const char* kd : {"generator", "automorphism"})
      for (auto& n : cat.names(kd)) out.push_back(n);
    return out;
  };
  for (const auto& c : constraints) {
    auto colon = c.find(':');
    std::string kind = c.substr(0, colon), name = colon == std::string::npos ? "" : c.substr(colon + 1);
    if (kind == "first-integral") {
      for (const auto& r : check_first_integral(ansatz).residuals) append_equations(*r.poly, k, rows);
    } else if (kind == "holomorphy") {
      for (const auto& n : expand("chart", name))
        for (const auto& [comp, r] : holomorphy_residuals(ansatz, cat.get(n))) append_equations(r, k, rows);
    } else if (kind == "symmetry") {
      for (const auto& n : expand("generator", name)) {
        const auto& g = cat.get(n);
        if (!g.target_system.empty() && g.target_system != ansatz.name)
          throw Error(ErrorCode::Precondition, "constraint " + n + " maps to another system");
        for (const auto& [comp, r] : symmetry_residuals(ansatz, g, ansatz)) append_equations(r, k, rows);
      }
    } else {
      throw Error(ErrorCode::Precondition, "unknown constraint '" + c + "'");
    }
  }
  return solve_affine(std::move(rows), static_cast<std::size_t>(k));
}

}  // namespace weylpain
